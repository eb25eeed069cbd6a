#include <doctest.h>

#include <random>
#include <set>

#include "perron/generators.hpp"
#include "support.hpp"

using namespace perron;
using namespace testing;

TEST_CASE("operator norms agree with extreme points of the unit ball") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(4));
        RealMatrix a(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) a(i, j) = 2.0 * rng.uniform() - 1.0;
        // inf-norm: maximised at a sign vector.
        double best_inf = 0.0;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            RealVector x(n);
            for (Eigen::Index k = 0; k < n; ++k) x(k) = (mask >> k) & 1 ? 1.0 : -1.0;
            best_inf = std::max(best_inf, (a * x).lpNorm<Eigen::Infinity>());
        }
        // 1-norm: maximised at a unit vector.
        double best_one = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) best_one = std::max(best_one, (a * RealVector::Unit(n, k)).lpNorm<1>());
        CHECK(operator_norm(a, Norm::inf) == doctest::Approx(best_inf).epsilon(1e-14));
        CHECK(operator_norm(a, Norm::one) == doctest::Approx(best_one).epsilon(1e-14));
        CHECK(operator_norm(a, Norm::two) == doctest::Approx(std::sqrt((a.transpose() * a).eigenvalues().real().maxCoeff())));
    }
}

TEST_CASE("certification rejects tiny negatives and names the entry") {
    RealMatrix m = jordan(2);
    m(1, 0) = -1e-15;
    try {
        PositiveOperator::from_real(m);
        FAIL("accepted a negative entry");
    } catch (const NegativityError& e) {
        CHECK(e.row() == 1);
        CHECK(e.col() == 0);
        CHECK(std::string(e.what()).find("(2,1)") != std::string::npos);
    }
    Matrix c = Matrix::Identity(2, 2);
    c(0, 1) = Scalar(0.0, 1e-300);
    CHECK_FALSE(PositiveOperator(c).nonneg_certified());
    CHECK_THROWS_AS(PositiveOperator(Matrix::Zero(2, 3)), PreconditionError);
}

TEST_CASE("lattice parts") {
    RealVector v(4);
    v << 1.5, -2.0, 0.0, 3.0;
    const auto p = lattice_parts(v.cast<Scalar>());
    CHECK((p.pos - p.neg - v).norm() == 0.0);
    CHECK((p.pos.cwiseMin(p.neg)).maxCoeff() == 0.0);
    CHECK(modulus(v).isApprox(p.pos + p.neg));
    Vector w = v.cast<Scalar>();
    w(0) = Scalar(1.0, 1.0);
    CHECK_THROWS_AS(lattice_parts(w), PreconditionError);
}

TEST_CASE("invariant ideals match brute-force subset enumeration") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Rng rng(seed);
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(6));
        RealMatrix a = RealMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (rng.uniform() < 0.3) a(i, j) = rng.uniform() + 0.1;
        std::set<std::vector<std::size_t>> oracle;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            bool invariant = true;
            for (Eigen::Index i = 0; i < n && invariant; ++i)
                for (Eigen::Index j = 0; j < n && invariant; ++j)
                    if (!((mask >> i) & 1) && ((mask >> j) & 1) && a(i, j) != 0.0) invariant = false;
            if (!invariant) continue;
            std::vector<std::size_t> s;
            for (Eigen::Index k = 0; k < n; ++k)
                if ((mask >> k) & 1) s.push_back(static_cast<std::size_t>(k));
            oracle.insert(s);
        }
        const auto found = invariant_ideals(op(a));
        CHECK(found.complete);
        std::set<std::vector<std::size_t>> got;
        for (const auto& f : found.ideals) got.insert(f.indices());
        CHECK(got == oracle);
        for (const auto& f : found.ideals) CHECK(is_invariant(op(a).matrix(), f));
    }
}

TEST_CASE("invariance violation names an offending entry") {
    const RealMatrix a = rows({{1, 1}, {1, 0}});
    const CoordinateIdeal f({0}, 2);
    const auto v = invariance_violation(op(a).matrix(), f);
    REQUIRE(v);
    CHECK(v->first == 1);
    CHECK(v->second == 0);
    CHECK_THROWS_AS(induce(op(a), f), PreconditionError);
    CHECK(CoordinateIdeal({0, 2}, 3).to_string() == "{1,3}");
}

TEST_CASE("restriction and quotient reassemble the operator") {
    const Generated g = random_family(RandomKind::reducible_block, 6, 11);
    REQUIRE(g.spec.expected.planted_ideal);
    const CoordinateIdeal f = *g.spec.expected.planted_ideal;
    const InducedPair pair = induce(g.op, f);
    Matrix coupling(static_cast<Eigen::Index>(pair.ideal_indices.size()),
                    static_cast<Eigen::Index>(pair.quotient_indices.size()));
    for (std::size_t i = 0; i < pair.ideal_indices.size(); ++i)
        for (std::size_t j = 0; j < pair.quotient_indices.size(); ++j)
            coupling(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                g.op.matrix()(static_cast<Eigen::Index>(pair.ideal_indices[i]),
                              static_cast<Eigen::Index>(pair.quotient_indices[j]));
    CHECK((reassemble(pair, coupling) - g.op.matrix()).norm() == 0.0);
    CHECK(pair.restriction.dim() + pair.quotient.dim() == 6);
}

TEST_CASE("closure of principal ideals agrees with the support oracle") {
    Rng rng(3);
    int agreements = 0;
    for (int trial = 0; trial < 100; ++trial) {
        RealVector x(5), y(5);
        for (int i = 0; i < 5; ++i) {
            x(i) = rng.uniform() < 0.4 ? 0.0 : rng.uniform();
            y(i) = rng.uniform() < 0.4 ? 0.0 : rng.uniform();
        }
        const auto d = in_closure_principal_ideal(x, y);
        bool oracle = true;
        for (int i = 0; i < 5; ++i)
            if (x(i) > 0.0 && y(i) == 0.0) oracle = false;
        CHECK(d.support_oracle == oracle);
        agreements += d.agree;
    }
    CHECK(agreements == 100);
    RealVector y(3);
    y << 1.0, 2.0, 1e-8;
    CHECK(is_quasi_interior(y).quasi_interior);
    CHECK(is_quasi_interior(y).agree);
    y(2) = 0.0;
    CHECK_FALSE(is_quasi_interior(y).quasi_interior);
    CHECK(is_quasi_interior(y).agree);
}
