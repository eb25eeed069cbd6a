#include <doctest.h>

#include <algorithm>

#include "perron/generators.hpp"
#include "perron/spectrum.hpp"
#include "support.hpp"

using namespace perron;
using namespace testing;

namespace {

bool contains(const std::vector<Scalar>& values, Scalar z, double tol) {
    return std::any_of(values.begin(), values.end(), [&](Scalar v) { return std::abs(v - z) <= tol; });
}

}  // namespace

TEST_CASE("cycle permutations have the p-th roots of unity as simple eigenvalues") {
    for (int p = 1; p <= 8; ++p) {
        const SpectrumReport s = spectrum(op(cycle(p)));
        CHECK(s.spectral_radius == doctest::Approx(1.0));
        REQUIRE(s.records.size() == static_cast<std::size_t>(p));
        for (int k = 0; k < p; ++k) CHECK(contains(s.values(), root_of_unity(k, p), 1e-10));
        for (const auto& r : s.records) {
            CHECK(r.alg_mult == 1);
            CHECK(r.geom_mult == 1);
            CHECK(r.index == 1);
            CHECK(r.is_peripheral);
        }
    }
}

TEST_CASE("Jordan blocks: one eigenvalue, index equals size") {
    for (int m = 1; m <= 6; ++m) {
        const SpectrumReport s = spectrum(op(jordan(m)));
        REQUIRE(s.records.size() == 1);
        CHECK(s.records[0].value == Scalar(1.0));
        CHECK(s.records[0].alg_mult == m);
        CHECK(s.records[0].geom_mult == 1);
        CHECK(s.records[0].index == m);
    }
    // Identity: semisimple, full geometric multiplicity.
    const SpectrumReport id = spectrum(op(RealMatrix::Identity(4, 4)));
    REQUIRE(id.records.size() == 1);
    CHECK(id.records[0].geom_mult == 4);
    CHECK(id.records[0].index == 1);
}

TEST_CASE("multiplicities add up and eigenvalues sum to the trace") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Generated g = random_family(RandomKind::nonneg_dense, 2 + static_cast<Eigen::Index>(seed % 7), seed);
        const SpectrumReport s = spectrum(g.op);
        int total = 0;
        Scalar trace = 0.0;
        for (const auto& r : s.records) {
            total += r.alg_mult;
            trace += static_cast<double>(r.alg_mult) * r.value;
            CHECK(r.geom_mult <= r.alg_mult);
            CHECK(r.index <= r.alg_mult - r.geom_mult + 1);
        }
        CHECK(total == g.op.dim());
        CHECK(std::abs(trace - g.op.matrix().trace()) <= 1e-10 * std::max(1.0, g.op.norm()) * g.op.dim());
        // Perron: r(T) itself is an eigenvalue of a nonnegative matrix.
        CHECK(s.find(Scalar(s.spectral_radius), 1e-8 * std::max(1.0, s.spectral_radius)) != nullptr);
    }
}

TEST_CASE("peripheral spectrum of a direct sum") {
    const RealMatrix t = direct_sum(jordan(2), cycle(2));
    const auto per = peripheral_spectrum(op(t));
    REQUIRE(per.size() == 2);
    CHECK(contains(per, 1.0, 1e-12));
    CHECK(contains(per, -1.0, 1e-12));
    const SpectrumReport s = spectrum(op(t));
    CHECK(s.find(1.0, 1e-9)->index == 2);
    CHECK(s.find(1.0, 1e-9)->alg_mult == 3);
    CHECK(s.find(-1.0, 1e-9)->index == 1);
    CHECK(s.max_peripheral_index() == 2);
}

TEST_CASE("eigenspace dimensions") {
    CHECK(eigenspace(Matrix::Identity(3, 3), 1.0).cols() == 3);
    const Matrix e = eigenspace(op(jordan(3)).matrix(), 1.0);
    CHECK(e.cols() == 1);
    CHECK(std::abs(e(0, 0)) == doctest::Approx(1.0));
    const RealMatrix c = real_eigenspace(cycle(4), -1.0);
    REQUIRE(c.cols() == 1);
    CHECK((cycle(4) * c + c).norm() <= 1e-12);
}

TEST_CASE("resolvent matches the closed form for a Jordan block") {
    const PositiveOperator t = op(jordan(2));
    for (Scalar mu : {Scalar(1.25), Scalar(1.0 + 1e-6), Scalar(-1.0, 0.5), Scalar(0.0, 3.0)}) {
        const ResolventResult r = resolvent(t, mu);
        const Scalar a = 1.0 / (mu - 1.0);
        Matrix expect(2, 2);
        expect << a, a * a, 0.0, a;
        CHECK((r.value - expect).norm() <= 1e-12 * expect.norm());
        CHECK(r.within_bound);
    }
    CHECK_THROWS_AS(resolvent(t, 1.0), PreconditionError);
}

TEST_CASE("resolvent of a permutation: (mu + P) / (mu^2 - 1) for p = 2") {
    const PositiveOperator t = op(cycle(2));
    for (double r : {1.5, 1.0 + 1e-4, 1.0 + 1e-7}) {
        const Scalar mu(-r);
        const Matrix expect = (mu * Matrix::Identity(2, 2) + t.matrix()) / (mu * mu - 1.0);
        const ResolventResult res = resolvent(t, mu);
        CHECK((res.value - expect).norm() <= 1e-9 * expect.norm());
        CHECK(operator_norm(res.value, Norm::inf) == doctest::Approx(1.0 / (r - 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("cyclic sets") {
    std::vector<Scalar> quarter;
    for (int k = 0; k < 4; ++k) quarter.push_back(root_of_unity(k, 4));
    CHECK(is_cyclic_set(quarter, 1.0).cyclic);

    const std::vector<Scalar> partial = {1.0, Scalar(0.0, 1.0)};
    const CyclicityResult c = is_cyclic_set(partial, 1.0);
    CHECK_FALSE(c.cyclic);
    REQUIRE_FALSE(c.missing.empty());
    CHECK(std::abs(c.missing[0].target - Scalar(-1.0)) <= 1e-9);

    // e^{i}: irrational angle, powers never close up.
    const std::vector<Scalar> irrational = {1.0, std::polar(1.0, 1.0)};
    CHECK_FALSE(is_cyclic_set(irrational, 1.0).cyclic);

    // Scaled copies are judged on the circle of radius r.
    std::vector<Scalar> scaled;
    for (int k = 0; k < 3; ++k) scaled.push_back(2.0 * root_of_unity(k, 3));
    CHECK(is_cyclic_set(scaled, 2.0).cyclic);
    CHECK(is_cyclic_set({}, 1.0).cyclic);
}

TEST_CASE("rational angle detection") {
    const auto pq = rational_angle(2.0 * std::numbers::pi * 3.0 / 7.0, 16, 1e-9);
    REQUIRE(pq);
    CHECK(pq->first == 3);
    CHECK(pq->second == 7);
    CHECK_FALSE(rational_angle(1.0, 16, 1e-9));
}
