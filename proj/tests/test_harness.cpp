#include <doctest.h>

#include "perron/generators.hpp"
#include "perron/harness.hpp"
#include "support.hpp"

using namespace perron;
using namespace testing;

namespace {

Vector vec(std::initializer_list<Scalar> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (Scalar x : v) out(i++) = x;
    return out;
}

// Eigenvector of the p-cycle for omega^k: entries omega^{k i}.
Vector cycle_eigenvector(int p, int k) {
    Vector z(p);
    for (int i = 0; i < p; ++i) z(i) = root_of_unity(k * i, p);
    return z;
}

}  // namespace

TEST_CASE("status strings round-trip") {
    for (Status s : {Status::holds, Status::fails, Status::one_sided, Status::not_applicable})
        CHECK(status_from_string(to_string(s)) == s);
}

TEST_CASE("admissibility: fails blocks, one_sided does not") {
    TheoremVerdict v;
    v.add("h1", Status::holds);
    v.add("h2", Status::one_sided);
    CHECK(v.admissible());
    v.add("h3", Status::fails);
    CHECK_FALSE(v.admissible());
}

TEST_CASE("sandwich on cycles") {
    for (int p = 1; p <= 5; ++p)
        for (int k = 0; k < p; ++k) {
            const TheoremVerdict v = verify_thm_1_2(op(cycle(p)), root_of_unity(k, p), cycle_eigenvector(p, k), Variant::a);
            CHECK(v.admissible());
            CHECK(v.conclusion.status == Status::holds);
        }
}

TEST_CASE("growth variants") {
    const RealMatrix t = rows({{1, 1, 0}, {0, 0, 1}, {0, 1, 0}});
    const Vector z = vec({0.5, -1.0, 1.0});
    const TheoremVerdict c = verify_thm_1_2(op(t), -1.0, z, Variant::c);
    CHECK(c.conclusion.status == Status::holds);
    // The same eigenvector does not grow minimally.
    CHECK(verify_thm_1_2(op(t), -1.0, z, Variant::b).conclusion.status == Status::not_applicable);
    const TheoremVerdict b =
        verify_thm_1_2(op(direct_sum(jordan(2), cycle(2))), -1.0, vec({0, 0, 1, -1}), Variant::b);
    CHECK(b.conclusion.status == Status::holds);
    // Not an eigenvector.
    CHECK(verify_thm_1_2(op(t), -1.0, vec({-1, 1, -1}), Variant::a).conclusion.status == Status::not_applicable);
}

TEST_CASE("bounded orbit and dominating fixed vector") {
    const Vector z = cycle_eigenvector(3, 1);
    for (Prop31Mode m : {Prop31Mode::power_bounded_orbit, Prop31Mode::dominating_fixed_vector}) {
        const TheoremVerdict v = verify_prop_3_1(op(cycle(3)), root_of_unity(1, 3), z, m);
        CHECK(v.conclusion.status == Status::holds);
    }
    // e_1 is fixed by J_2(1) and dominates itself.
    const TheoremVerdict fixed = verify_prop_3_1(op(jordan(2)), 1.0, vec({1, 0}), Prop31Mode::dominating_fixed_vector);
    CHECK(fixed.conclusion.status == Status::holds);
    // ker(1 - T) = span e_3 cannot dominate |z| = (1, 1, 1/2).
    const RealMatrix t = rows({{0, 1, 0}, {1, 0, 0}, {1, 0, 1}});
    const TheoremVerdict none =
        verify_prop_3_1(op(t), -1.0, vec({1, -1, -0.5}), Prop31Mode::dominating_fixed_vector);
    CHECK(none.conclusion.status == Status::not_applicable);
}

TEST_CASE("dominated eigenvector condition") {
    const TheoremVerdict v = verify_dae(op(cycle(4)), Scalar(0.0, 1.0));
    CHECK(v.conclusion.status == Status::holds);
    CHECK(verify_dae(op(cycle(4)), Scalar(0.5, 0.5)).conclusion.status == Status::not_applicable);
    REQUIRE(dominated_eigenpair(cycle(4), Scalar(0.0, 1.0)));
    const auto pair = *dominated_eigenpair(cycle(4), Scalar(0.0, 1.0));
    CHECK((pair.z.cwiseAbs() - pair.x).maxCoeff() <= 1e-9);
    CHECK((cycle(4) * pair.x - pair.x).norm() <= 1e-9);
}

TEST_CASE("thm4.1 and cor4.2 gating") {
    const PositiveOperator mixed = op(direct_sum(jordan(2), cycle(2)));
    CHECK(verify_thm_4_1(mixed, -1.0).conclusion.status == Status::holds);
    CHECK(verify_thm_4_1(op(jordan(2)), 1.0).conclusion.status == Status::not_applicable);
    CHECK(verify_cor_4_2(mixed, -1.0).conclusion.status == Status::holds);
    const TheoremVerdict j3 = verify_cor_4_2(op(jordan(3)), 1.0);
    CHECK(j3.conclusion.status == Status::not_applicable);
    CHECK_FALSE(j3.admissible());
}

TEST_CASE("known result 2.1 variants") {
    const PositiveOperator t = op(cycle(3));
    for (Variant v : {Variant::a, Variant::b, Variant::c})
        CHECK(verify_kr_2_1(t, root_of_unity(1, 3), v).conclusion.status == Status::holds);
    RealVector x = RealVector::Ones(3);
    CHECK(verify_kr_2_1(t, root_of_unity(1, 3), Variant::c, std::nullopt, x).conclusion.status == Status::holds);
    // A functional with T'x' < x' is rejected.
    x << 1.0, 0.0, 0.0;
    CHECK(verify_kr_2_1(t, root_of_unity(1, 3), Variant::c, std::nullopt, x).conclusion.status ==
          Status::not_applicable);
    REQUIRE(super_fixed_functional(cycle(3), RealVector::Ones(3)));
}

TEST_CASE("torsion similarity on cycles") {
    for (int p = 2; p <= 6; ++p)
        for (int k = 0; k < p; ++k) {
            const TorsionResult r = torsion_similarity(op(cycle(p)), root_of_unity(k, p), cycle_eigenvector(p, k));
            CHECK(r.defect <= 1e-12);
            CHECK(r.preserves_modulus);
            CHECK((r.u.cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-15);
        }
    CHECK_THROWS_AS(torsion_similarity(op(cycle(2)), 1.0, vec({1, 0})), PreconditionError);
}

TEST_CASE("thm5.8 on cyclic and stochastic instances") {
    for (int p = 1; p <= 4; ++p) {
        const TheoremVerdict v = verify_thm_5_8(cyclic_family(p, 2, 3).op, cesaro_scheme());
        CHECK(v.conclusion.status == Status::holds);
        CHECK(v.parts.size() == 7);
        for (const auto& part : v.parts) {
            INFO(part.theorem_id);
            CHECK(part.conclusion.status != Status::fails);
        }
    }
    CHECK(verify_thm_5_8(op(jordan(2)), cesaro_scheme()).conclusion.status == Status::not_applicable);
}

TEST_CASE("cor5.6") {
    CHECK(verify_cor_5_6(op(cycle(5)), abel_scheme()).conclusion.status == Status::holds);
    CHECK(verify_cor_5_6(op(direct_sum(cycle(2), cycle(3))), cesaro_scheme()).conclusion.status == Status::holds);
    CHECK(verify_cor_5_6(op(jordan(2)), cesaro_scheme()).conclusion.status == Status::not_applicable);
}

TEST_CASE("appendix A.1 on planted ideals") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Generated g = random_family(RandomKind::reducible_block, 6, seed);
        const TheoremVerdict v = verify_appendix_A1(g.op, *g.spec.expected.planted_ideal);
        CHECK(v.conclusion.status == Status::holds);
    }
    const TheoremVerdict bad = verify_appendix_A1(op(cycle(3)), CoordinateIdeal({0}, 3));
    CHECK(bad.conclusion.status == Status::not_applicable);
}

TEST_CASE("linear feasibility helpers") {
    const auto x = nonnegative_eigenvector(cycle(3), 1.0);
    REQUIRE(x);
    CHECK(x->sum() == doctest::Approx(1.0));
    CHECK(x->minCoeff() >= -1e-12);
    CHECK_FALSE(nonnegative_eigenvector(cycle(2), -1.0));
    CHECK_FALSE(dominating_fixed_vector(jordan(2), RealVector::Ones(2)));
}
