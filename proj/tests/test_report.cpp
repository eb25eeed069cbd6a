#include <doctest.h>

#include "perron/cli.hpp"
#include "perron/generators.hpp"
#include "perron/io.hpp"
#include "perron/report.hpp"
#include "support.hpp"

using namespace perron;
using namespace testing;

TEST_CASE("analysis reports round-trip losslessly") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Generated g = random_family(seed % 2 ? RandomKind::nonneg_dense : RandomKind::reducible_block, 5, seed);
        const AnalysisReport r = cli::analyze(g.op, "0123456789abcdef");
        const std::string text = serialize(r);
        CHECK(text.find('\n') == text.size() - 1);
        const AnalysisReport back = parse_analysis_report(text);
        CHECK(back == r);
        CHECK(serialize(back) == text);
    }
}

TEST_CASE("report of the 3-cycle") {
    const AnalysisReport r = cli::analyze(op(cycle(3)), "");
    CHECK(r.schema == "perron.analysis/1");
    REQUIRE(r.irreducibility);
    CHECK(r.irreducibility->period == 3);
    REQUIRE(r.cyclicity);
    CHECK(r.cyclicity->cyclic);
    CHECK(r.spectrum.peripheral().size() == 3);
    CHECK(r.tolerances.count("cluster_rel_tol") == 1);
    CHECK(r.grid.count("abel_n_max") == 1);
}

TEST_CASE("non-finite values survive serialization") {
    AnalysisReport r;
    BoundednessVerdict b;
    b.sup_estimate = std::numeric_limits<double>::infinity();
    b.trend = -std::numeric_limits<double>::infinity();
    r.boundedness.push_back(b);
    CHECK(parse_analysis_report(serialize(r)) == r);
}

TEST_CASE("spectral-only reports") {
    Matrix m(2, 2);
    m << 0.0, -1.0, 1.0, 0.0;
    const AnalysisReport r = cli::analyze(PositiveOperator(m), "");
    CHECK(r.spectral_only);
    CHECK_FALSE(r.irreducibility);
    CHECK(r.spectrum.spectral_radius == doctest::Approx(1.0));
    CHECK(parse_analysis_report(serialize(r)) == r);
}

TEST_CASE("verdicts and generator specs round-trip") {
    const TheoremVerdict v = verify_thm_5_8(op(cycle(3)), cesaro_scheme());
    CHECK(parse_verdict(serialize(v)) == v);
    const Generated g = random_family(RandomKind::reducible_block, 6, 4);
    const GeneratorSpec s = parse_generator_spec(serialize(g.spec));
    CHECK(s.family == g.spec.family);
    CHECK(s.seed == g.spec.seed);
    CHECK(s.params == g.spec.params);
    CHECK(s.expected.planted_ideal == g.spec.expected.planted_ideal);
    CHECK_THROWS_AS(parse_verdict(serialize(g.spec)), ParseError);
    CHECK_THROWS_AS(parse_analysis_report("{\"schema\": \"perron.analysis/1\"}"), ParseError);
}
