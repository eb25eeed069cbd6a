#include <doctest.h>

#include "perron/generators.hpp"
#include "perron/schemes.hpp"
#include "support.hpp"

using namespace perron;
using namespace testing;

TEST_CASE("standard schemes satisfy the coefficient conditions") {
    for (const char* name : {"cesaro", "abel", "power"}) {
        const SchemeValidation v = validate_scheme(scheme_by_name(name));
        INFO(name << ": " << v.note);
        CHECK(v.sums_to_one);
        CHECK(v.nonnegative);
        CHECK(v.decays);
        for (double e : v.sum_errors) CHECK(e <= 1e-12);
    }
    const SchemeValidation c = validate_scheme(constant_scheme());
    CHECK(c.sums_to_one);
    CHECK_FALSE(c.decays);
    CHECK_FALSE(c.valid());
    CHECK_THROWS(scheme_by_name("nosuch"));
}

TEST_CASE("power helpers agree with repeated multiplication") {
    const Matrix t = random_family(RandomKind::nonneg_dense, 4, 9).op.matrix() * 0.3;
    Matrix p = Matrix::Identity(4, 4), sum = Matrix::Zero(4, 4);
    for (unsigned k = 0; k < 37; ++k) {
        CHECK((matrix_power(t, k) - p).norm() <= 1e-12 * std::max(1.0, p.norm()));
        sum += p;
        CHECK((geometric_power_sum(t, k + 1) - sum).norm() <= 1e-12 * sum.norm());
        p = p * t;
    }
}

TEST_CASE("Abel scheme reproduces (r - 1) R(r, T)") {
    const WeightingSchemeSpec s = abel_scheme(20);
    const WsResult w = ws_bound(op(jordan(2)), s, s.index_set.size());
    REQUIRE(w.evaluations.size() == s.index_set.size());
    for (std::size_t i = 0; i < s.index_set.size(); ++i) {
        const double r = s.index_set[i];
        // (r - 1) R(r, J) = [[1, 1/(r-1)], [0, 1]]
        Matrix expect(2, 2);
        expect << 1.0, 1.0 / (r - 1.0), 0.0, 1.0;
        CHECK((w.evaluations[i].value - expect).norm() <= 1e-9 * expect.norm());
        CHECK(w.evaluations[i].tail_bound <= 1e-9);
    }
    CHECK(w.verdict.verdict == BoundednessStatus::unbounded_detected);
}

TEST_CASE("Cesaro means of a Jordan block") {
    const WeightingSchemeSpec s = cesaro_scheme(30);
    const WsResult w = ws_bound(op(jordan(2)), s, s.index_set.size());
    for (std::size_t i = 0; i < s.index_set.size(); ++i) {
        const double j = s.index_set[i];
        CHECK(w.verdict.norms[i] == doctest::Approx(1.0 + j / 2.0).epsilon(1e-12));
    }
    CHECK(w.verdict.verdict == BoundednessStatus::unbounded_detected);
    CHECK(w.verdict.trend == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("permutations are bounded under every scheme") {
    for (const char* name : {"cesaro", "abel", "power"}) {
        const WeightingSchemeSpec s = scheme_by_name(name);
        const WsResult w = ws_bound(op(cycle(3)), s, s.index_set.size());
        INFO(name);
        CHECK(w.verdict.verdict == BoundednessStatus::bounded_plausible);
        CHECK(w.verdict.sup_estimate == doctest::Approx(1.0));
    }
}

TEST_CASE("ws_bound requires unit spectral radius") {
    CHECK_THROWS_AS(ws_bound(op(2.0 * cycle(2)), cesaro_scheme(), 8), PreconditionError);
}

TEST_CASE("decaying coordinates form an invariant ideal") {
    // State 1 is transient: T^k e_1 = (2^-k, 0).
    const PositiveOperator t = op(rows({{0.5, 0.5}, {0.0, 1.0}}));
    const WsIdeal w = ws_invariant_ideal(t, cesaro_scheme(24));
    CHECK(w.converged);
    CHECK(w.ideal == CoordinateIdeal({0}, 2));
    CHECK(w.invariant);
    CHECK(w.eigenvectors_ok);
    CHECK(w.decaying_in_ideal);
    CHECK_THROWS_AS(ws_invariant_ideal(op(jordan(2)), cesaro_scheme(24)), PreconditionError);
}
