#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "perron/cli.hpp"
#include "perron/io.hpp"
#include "support.hpp"

using namespace perron;
using namespace testing;

namespace {

struct Scratch {
    std::filesystem::path dir;
    Scratch() {
        dir = std::filesystem::temp_directory_path() / ("perron_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~Scratch() { std::filesystem::remove_all(dir); }
    std::string file(const std::string& name, const std::string& content) const {
        const std::string p = (dir / name).string();
        write_file_atomic(p, content);
        return p;
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string footer_exponent(const std::string& csv) {
    const auto k = csv.find("fitted_exponent=");
    REQUIRE(k != std::string::npos);
    return csv.substr(k + 16, csv.find_first_of(" \n", k) - k - 16);
}

}  // namespace

TEST_CASE("analyze") {
    Scratch s;
    const std::string c3 = s.file("c3.mtx", write_matrix_market(op(cycle(3)).matrix()));
    const Run r = run({"analyze", c3});
    CHECK(r.code == 0);
    const AnalysisReport rep = parse_analysis_report(r.out);
    CHECK(rep.irreducibility->period == 3);
    CHECK(rep.cyclicity->cyclic);
    CHECK(rep.input_digest == fnv1a_hex(read_file(c3)));

    const std::string out = s.path("report.json");
    CHECK(run({"analyze", c3, "--out", out, "--norm", "1"}).code == 0);
    CHECK(parse_analysis_report(read_file(out)).norm_choice == Norm::one);

    const Run ns = run({"analyze", s.file("ns.mtx", "%%MatrixMarket matrix array real general\n2 3\n1\n2\n3\n4\n5\n6\n")});
    CHECK(ns.code == 2);
    CHECK(ns.err.find("line 2, column 3") != std::string::npos);

    const std::string neg = s.file("neg.mtx", "%%MatrixMarket matrix array real general\n2 2\n1\n-1e-15\n0\n1\n");
    const Run n = run({"analyze", neg});
    CHECK(n.code == 3);
    CHECK(n.err.find("(2,1)") != std::string::npos);
    const Run general = run({"analyze", neg, "--allow-general"});
    CHECK(general.code == 0);
    CHECK(parse_analysis_report(general.out).spectral_only);

    CHECK(run({"analyze", s.path("missing.mtx")}).code == 2);
    CHECK(run({"analyze"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"analyze", c3, "--norm", "7"}).code == 2);
}

TEST_CASE("growth") {
    Scratch s;
    const std::string j2 = s.file("j2.mtx", write_matrix_market(op(jordan(2)).matrix()));
    const Run r = run({"growth", j2});
    CHECK(r.code == 0);
    CHECK(r.out.find("# lambda=1+0i") != std::string::npos);
    CHECK(r.out.find("n,r_n,resolvent_norm,residual,retained") != std::string::npos);
    CHECK(std::stod(footer_exponent(r.out)) == doctest::Approx(2.0).epsilon(0.05));

    const std::string c2 = s.file("c2.json", write_json_matrix(op(cycle(2)).matrix()));
    const std::string z = s.file("z.json", "[1, -1]");
    const Run d = run({"growth", c2, "--lambda", "-1", "--z", z, "--nmin", "3", "--nmax", "20"});
    CHECK(d.code == 0);
    CHECK(std::stod(footer_exponent(d.out)) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(d.out.find("directed_exponent=") != std::string::npos);
    CHECK(d.out.find("\n3,1.125,") != std::string::npos);

    const std::string big = s.file("big.mtx", write_matrix_market(op(2.0 * cycle(2)).matrix()));
    CHECK(run({"growth", big}).code == 5);
    CHECK(run({"growth", big, "--rescale"}).code == 0);
    CHECK(run({"growth", j2, "--lambda", "1+"}).code == 2);
}

TEST_CASE("verify") {
    Scratch s;
    const std::string c3 = s.file("c3.mtx", write_matrix_market(op(cycle(3)).matrix()));
    const Run r = run({"verify", "thm5.8", c3, "--scheme", "cesaro"});
    CHECK(r.code == 0);
    const TheoremVerdict v = parse_verdict(r.out);
    CHECK(v.parts.size() == 7);
    for (const char* id : {"thm5.8a", "thm5.8b", "thm5.8c", "thm5.8d", "thm5.8e", "thm5.8f", "thm5.8g"})
        CHECK(r.err.find(id) != std::string::npos);

    const std::string j2 = s.file("j2.mtx", write_matrix_market(op(jordan(2)).matrix()));
    CHECK(run({"verify", "thm4.1", j2, "--lambda", "1"}).code == 10);
    CHECK(run({"verify", "nosuch", j2}).code == 2);

    const std::string out = s.path("verdict.json");
    CHECK(run({"verify", "thm1.2a", c3, "--lambda", "-0.5+0.8660254037844386i", "--out", out}).code == 0);
    CHECK(parse_verdict(read_file(out)).theorem_id == "thm1.2a");

    for (const auto& id : cli::theorem_ids()) {
        const Run any = run({"verify", id, c3});
        INFO(id << ": " << any.err);
        CHECK((any.code == 0 || any.code == 10));
    }
    const std::string red = s.file("red.mtx", write_matrix_market(op(rows({{1, 0}, {1, 1}})).matrix()));
    CHECK(run({"verify", "appA1", red, "--ideal", "2"}).code == 0);
    CHECK(run({"verify", "appA1", red, "--ideal", "1"}).code == 10);
    CHECK(run({"verify", "appA1", red, "--ideal", "9"}).code == 2);
}

TEST_CASE("generate") {
    Scratch s;
    const std::string c4 = s.path("c4.mtx");
    CHECK(run({"generate", "cycle", "--p", "4", "--out", c4}).code == 0);
    CHECK(read_matrix(read_file(c4)) == op(cycle(4)).matrix());
    CHECK(parse_generator_spec(read_file(c4 + ".truth.json")).expected.period == 4);

    const Run j = run({"generate", "jordan", "--m", "2"});
    CHECK(j.code == 0);
    CHECK(read_matrix(j.out) == op(jordan(2)).matrix());

    const std::string a = s.path("a.mtx"), b = s.path("b.mtx");
    CHECK(run({"generate", "stochastic", "--n", "6", "--seed", "1", "--out", a}).code == 0);
    CHECK(run({"generate", "stochastic", "--n", "6", "--seed", "1", "--out", b}).code == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK(read_file(a + ".truth.json") == read_file(b + ".truth.json"));

    const std::string js = s.path("r.json");
    CHECK(run({"generate", "reducible", "--n", "5", "--seed", "2", "--out", js}).code == 0);
    CHECK(read_file(js).front() == '{');

    CHECK(run({"generate", "cycle", "--p", "0"}).code == 2);
    CHECK(run({"generate", "nosuch"}).code == 2);
    CHECK(run({"generate", "stochastic", "--n", "4", "--density", "2"}).code == 2);
}
