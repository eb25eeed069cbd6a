#include <doctest.h>

#include "perron/generators.hpp"
#include "perron/perron_structure.hpp"
#include "support.hpp"

using namespace perron;
using namespace testing;

TEST_CASE("irreducibility and period against boolean oracles") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Rng rng(seed);
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.below(7));
        RealMatrix a = RealMatrix::Zero(n, n);
        const double density = 0.15 + 0.3 * rng.uniform();
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (rng.uniform() < density) a(i, j) = 1.0;
        const auto reach = reachability(a);
        bool strongly = true;
        for (const auto& row : reach)
            for (bool b : row) strongly = strongly && b;
        // a 1x1 zero matrix has no edge and counts as reducible
        if (n == 1) strongly = a(0, 0) > 0.0;
        const auto rep = irreducibility(op(a));
        CHECK(rep.is_irreducible == strongly);
        if (rep.is_irreducible && walk_period(a) > 0) CHECK(rep.period == walk_period(a));
        std::size_t total = 0;
        for (const auto& c : rep.sccs) total += c.size();
        CHECK(total == static_cast<std::size_t>(n));
    }
}

TEST_CASE("period of cyclic families") {
    for (int p = 1; p <= 6; ++p) {
        CHECK(irreducibility(op(cycle(p))).period == p);
        CHECK(irreducibility(cyclic_family(p, 3, 5).op).period == p);
    }
    CHECK_FALSE(irreducibility(op(jordan(2))).is_irreducible);
    CHECK(irreducibility(op(jordan(2))).period == 0);
}

TEST_CASE("Frobenius normal form is block upper triangular with irreducible blocks") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Generated g = random_family(RandomKind::nonneg_dense, 7, seed, {{"density", 0.25}});
        const FrobeniusForm f = frobenius_normal_form(g.op);
        Eigen::PermutationMatrix<Eigen::Dynamic> perm(7);
        for (Eigen::Index k = 0; k < 7; ++k) perm.indices()(k) = static_cast<int>(f.permutation[static_cast<std::size_t>(k)]);
        const Matrix expect = perm.transpose() * g.op.matrix() * perm;
        CHECK((expect - f.permuted).norm() == 0.0);
        std::size_t offset = 0;
        for (std::size_t b = 0; b < f.block_sizes.size(); ++b) {
            const auto size = static_cast<Eigen::Index>(f.block_sizes[b]);
            const auto o = static_cast<Eigen::Index>(offset);
            // Nothing below the diagonal block.
            if (o + size < 7) CHECK(f.permuted.block(o + size, o, 7 - o - size, size).norm() == 0.0);
            const Matrix block = f.permuted.block(o, o, size, size);
            if (size > 1) CHECK(irreducibility(PositiveOperator(block)).is_irreducible);
            offset += f.block_sizes[b];
        }
        CHECK(offset == 7);
    }
}

TEST_CASE("diagonal growth condition") {
    const auto z = zhang_condition(op(RealMatrix::Identity(3, 3)), 16);
    CHECK(z.estimate == doctest::Approx(1.0));
    CHECK(z.plausibly_holds);
    const auto c = zhang_condition(op(cycle(3)), 16);
    CHECK(c.estimate == doctest::Approx(1.0));
    CHECK(c.diagonal_minima[0] == 0.0);
    CHECK(c.diagonal_minima[2] == 1.0);
}
