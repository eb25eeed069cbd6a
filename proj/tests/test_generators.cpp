#include <doctest.h>

#include "perron/generators.hpp"
#include "perron/perron_structure.hpp"
#include "perron/spectrum.hpp"
#include "support.hpp"

using namespace perron;
using namespace testing;

TEST_CASE("random families are reproducible") {
    for (RandomKind k : {RandomKind::nonneg_dense, RandomKind::irreducible_stochastic, RandomKind::reducible_block}) {
        const Generated a = random_family(k, 6, 42), b = random_family(k, 6, 42), c = random_family(k, 6, 43);
        CHECK(a.op.matrix() == b.op.matrix());
        CHECK(a.op.matrix() != c.op.matrix());
        CHECK(random_kind_from_string(to_string(k)) == k);
    }
}

TEST_CASE("stochastic instances are irreducible and row-stochastic") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Generated g = random_family(RandomKind::irreducible_stochastic, 2 + static_cast<Eigen::Index>(seed % 8), seed);
        const RealMatrix m = g.op.real();
        CHECK((m.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-15);
        CHECK(irreducibility(g.op).is_irreducible);
        CHECK(spectrum(g.op).spectral_radius == doctest::Approx(1.0));
    }
}

TEST_CASE("cyclic families carry their ground truth") {
    for (int p = 1; p <= 6; ++p) {
        const Generated g = cyclic_family(p, 2, static_cast<std::uint64_t>(p));
        REQUIRE(g.spec.expected.period);
        CHECK(*g.spec.expected.period == p);
        CHECK(g.spec.expected.peripheral.size() == static_cast<std::size_t>(p));
        CHECK(g.op.dim() == 2 * p);
        CHECK(irreducibility(g.op).period == p);
    }
    const Generated perm = cyclic_family(4, RealMatrix::Ones(1, 1));
    CHECK(perm.op.real() == cycle(4));
}

TEST_CASE("jordan family") {
    const Generated g = jordan_growth_family(2);
    CHECK(g.op.real() == jordan(2));
    CHECK(*g.spec.expected.index_at_one == 2);
    const Generated d = jordan_growth_family(3, {2, 3});
    CHECK(d.op.dim() == 8);
    CHECK(*d.spec.expected.growth_exponent == doctest::Approx(3.0));
}

TEST_CASE("planted ideals are invariant") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Generated g = random_family(RandomKind::reducible_block, 7, seed, {{"ideal_size", 3}});
        REQUIRE(g.spec.expected.planted_ideal);
        CHECK(g.spec.expected.planted_ideal->size() == 3);
        CHECK(is_invariant(g.op.matrix(), *g.spec.expected.planted_ideal));
    }
}

TEST_CASE("rescaling to unit radius") {
    const Generated g = random_family(RandomKind::nonneg_dense, 5, 8);
    CHECK(spectrum(rescaled_to_unit_radius(g.op)).spectral_radius == doctest::Approx(1.0).epsilon(1e-12));
}
