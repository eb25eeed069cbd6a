#include <doctest.h>

#include "perron/generators.hpp"
#include "perron/growth.hpp"
#include "support.hpp"

using namespace perron;
using namespace testing;

namespace {

RealMatrix intermediate_example() {
    RealMatrix t = direct_sum(jordan(3), cycle(2));
    t(0, 3) = 1.0;
    t(0, 4) = 1.0;
    return t;
}

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

}  // namespace

TEST_CASE("log-log slope and ratio spread") {
    std::vector<double> x, y;
    for (int k = 1; k <= 10; ++k) {
        x.push_back(k);
        y.push_back(3.0 * std::pow(k, 2.5));
    }
    CHECK(log_log_slope(x, y) == doctest::Approx(2.5));
    CHECK(trend_slope(x, y, 3) == doctest::Approx(2.5));
    CHECK(ratio_spread({2, 4, 8}, {1, 2, 4}) == doctest::Approx(1.0));
    CHECK(ratio_spread({1, 10}, {1, 1}) == doctest::Approx(10.0));
}

TEST_CASE("trend classification thresholds") {
    CHECK(classify_trend(100.0, 0.6) == BoundednessStatus::unbounded_detected);
    CHECK(classify_trend(1.0, 0.05) == BoundednessStatus::bounded_plausible);
    CHECK(classify_trend(1.0, 0.3) == BoundednessStatus::inconclusive);
}

TEST_CASE("growth profile of a Jordan block matches 1/(r-1) + 1/(r-1)^2") {
    const GrowthProfile p = growth_profile(op(jordan(2)), 1.0);
    REQUIRE(p.points.size() == 25);
    for (const auto& pt : p.points) {
        const double a = 1.0 / (pt.r - 1.0);
        CHECK(pt.retained);
        CHECK(pt.norm == doctest::Approx(a + a * a).epsilon(1e-9));
    }
    REQUIRE(p.fitted_exponent);
    CHECK(*p.fitted_exponent == doctest::Approx(2.0).epsilon(0.05));
    CHECK(p.fit_points().size() == 22);
}

TEST_CASE("growth profile of a 2-cycle along -1 is exactly 1/(r-1)") {
    const GrowthProfile p = growth_profile(op(cycle(2)), -1.0);
    for (const auto& pt : p.points) CHECK(pt.norm == doctest::Approx(1.0 / (pt.r - 1.0)).epsilon(1e-9));
    REQUIRE(p.fitted_exponent);
    CHECK(*p.fitted_exponent == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("growth profile preconditions") {
    CHECK_THROWS_AS(growth_profile(op(2.0 * cycle(2)), 1.0), PreconditionError);
    CHECK_THROWS_AS(growth_profile(op(cycle(2)), 0.5), PreconditionError);
}

TEST_CASE("estimate between 1/(r-1), the lambda ray and the positive ray") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const PositiveOperator t = rescaled_to_unit_radius(random_family(RandomKind::nonneg_dense, 5, seed).op);
        for (const auto& rec : spectrum(t).peripheral()) {
            const Scalar lambda = rec.value / std::abs(rec.value);
            GrowthGrid g;
            g.n_max = 20;
            const EstimateCheck e = check_estimate_2_1(t, lambda, growth_profile(t, lambda, std::nullopt, g));
            CHECK(e.holds);
            CHECK(e.violations == 0);
        }
    }
}

TEST_CASE("eigenvector growth classes") {
    SUBCASE("minimal: the 2-cycle part of J_2(1) + 2-cycle") {
        const auto c = classify_eigenvector_growth(op(direct_sum(jordan(2), cycle(2))), -1.0, vec({0, 0, 1, -1}));
        CHECK(c.label == GrowthClass::minimal);
        CHECK(c.minimal);
        CHECK_FALSE(c.maximal);
    }
    SUBCASE("maximal") {
        const RealMatrix t = rows({{1, 1, 0}, {0, 0, 1}, {0, 1, 0}});
        const Vector z = vec({0.5, -1, 1});
        REQUIRE((t.cast<Scalar>() * z + z).norm() == 0.0);
        const auto c = classify_eigenvector_growth(op(t), -1.0, z);
        CHECK(c.label == GrowthClass::maximal);
    }
    SUBCASE("intermediate") {
        const auto c = classify_eigenvector_growth(op(intermediate_example()), -1.0, vec({0, 0, 0, -1, 1}));
        CHECK(c.label == GrowthClass::intermediate);
        REQUIRE(c.profile.directed_exponent);
        REQUIRE(c.profile.fitted_exponent);
        CHECK(*c.profile.directed_exponent == doctest::Approx(2.0).epsilon(0.05));
        CHECK(*c.profile.fitted_exponent == doctest::Approx(3.0).epsilon(0.05));
    }
    SUBCASE("scalar: both, reported as maximal with a note") {
        const auto c = classify_eigenvector_growth(op(rows({{1}})), 1.0, vec({1}));
        CHECK(c.minimal);
        CHECK(c.maximal);
        CHECK(c.label == GrowthClass::maximal);
        CHECK_FALSE(c.note.empty());
    }
}

TEST_CASE("Abel bound of stochastic matrices is at most 1") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto g = random_family(RandomKind::irreducible_stochastic, 6, seed);
        const BoundednessVerdict b = abel_bound(g.op);
        CHECK(b.sup_estimate <= 1.0 + 1e-9);
        CHECK(b.verdict == BoundednessStatus::bounded_plausible);
    }
}

TEST_CASE("power and Cesaro growth of a Jordan block") {
    // ||J^k||_inf = 1 + k and the Cesaro mean of J^0..J^{j-1} has norm 1 + (j-1)/2.
    const PowerCesaroResult r = power_and_cesaro(op(jordan(2)));
    for (std::size_t i = 0; i < r.power.norms.size(); ++i)
        CHECK(r.power.norms[i] == doctest::Approx(1.0 + r.power.index_magnitudes[i]));
    CHECK(r.power.trend == doctest::Approx(1.0).epsilon(0.1));
    CHECK(r.cesaro.trend == doctest::Approx(1.0).epsilon(0.1));
    CHECK(r.cesaro.verdict == BoundednessStatus::unbounded_detected);
    const BoundednessVerdict a = abel_bound(op(jordan(2)));
    CHECK(a.trend == doctest::Approx(1.0).epsilon(0.1));
    CHECK(a.verdict == BoundednessStatus::unbounded_detected);
}
