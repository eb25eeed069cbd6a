#include "perron/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "perron/io.hpp"

namespace perron::cli {

namespace {

struct Loaded {
    Matrix matrix;
    std::string digest;
};

Loaded load_matrix(const std::string& path) {
    const std::string text = read_file(path);
    return {read_matrix(text), fnv1a_hex(text)};
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") out << content;
    else write_file_atomic(path, content);
}

std::string fmt(double x) { return format_double(x); }

}  // namespace

AnalysisReport analyze(const PositiveOperator& t, const std::string& input_digest, const AnalyzeOptions& o) {
    AnalysisReport r;
    r.input_digest = input_digest;
    r.norm_choice = t.norm_choice();
    r.spectral_only = !t.nonneg_certified();
    r.spectrum = spectrum(t, o.spectrum);
    r.tolerances = {{"cluster_rel_tol", o.spectrum.cluster_rel_tol},
                    {"peripheral_eps", o.spectrum.peripheral_eps},
                    {"rank_rel_tol", o.spectrum.rank_rel_tol},
                    {"merge_rel_radius", o.spectrum.merge_rel_radius},
                    {"angular_tol", o.cyclicity.angular_tol},
                    {"modulus_eps", o.cyclicity.modulus_eps},
                    {"trend_unbounded", 0.5},
                    {"trend_bounded", 0.1}};
    r.grid = {{"power_horizon", o.power_horizon},
              {"power_trend_skip", std::max(0, o.power_horizon / 8 - 1)},
              {"abel_n_min", 2},
              {"abel_n_max", o.abel_n_max},
              {"abel_trend_skip", 3},
              {"max_denominator", o.cyclicity.max_denominator}};
    if (r.spectral_only) {
        r.notes.push_back("spectral-only mode: the input has negative or non-real entries");
        return r;
    }
    r.irreducibility = irreducibility(t);
    std::vector<Scalar> per;
    for (const auto& rec : r.spectrum.peripheral()) per.push_back(rec.value);
    r.cyclicity = is_cyclic_set(per, r.spectrum.spectral_radius, o.cyclicity);
    const double radius = r.spectrum.spectral_radius;
    if (!(radius > 0.0)) {
        r.notes.push_back("r(T) = 0: boundedness of T / r(T) is undefined, section skipped");
        return r;
    }
    const PositiveOperator unit = t.scaled(1.0 / radius);
    r.notes.push_back("boundedness evaluated on T / r(T), r(T) = " + fmt(radius));
    auto pc = power_and_cesaro(unit, o.power_horizon);
    r.boundedness.push_back(std::move(pc.power));
    r.boundedness.push_back(std::move(pc.cesaro));
    r.boundedness.push_back(abel_bound(unit, o.abel_n_max));
    return r;
}

int exit_code(const TheoremVerdict& v) {
    switch (v.conclusion.status) {
        case Status::holds:
        case Status::one_sided: return Exit::ok;
        case Status::fails: return Exit::conclusion_fails;
        case Status::not_applicable: return Exit::not_applicable;
    }
    return Exit::conclusion_fails;
}

const std::vector<std::string>& theorem_ids() {
    static const std::vector<std::string> ids = {"thm1.2a", "thm1.2b", "thm1.2c", "prop3.1", "thm3.5",
                                                 "thm4.1",  "cor4.2",  "kr2.1a",  "kr2.1b",  "kr2.1c",
                                                 "cor5.6",  "thm5.8",  "appA1"};
    return ids;
}

namespace {

struct Common {
    std::string matrix_file;
    std::string norm = "inf";
    std::string out;
};

struct GrowthArgs {
    std::string lambda = "1";
    std::string z_file;
    int nmin = 2;
    int nmax = 26;
    bool rescale = false;
};

struct VerifyArgs {
    std::string id;
    std::string lambda = "1";
    std::string z_file;
    std::string functional_file;
    std::string scheme = "cesaro";
    std::string mode = "orbit";
    std::string ideal;
    int horizon = 256;
    std::uint64_t seed = 1;
    int nmin = 2;
    int nmax = 26;
};

struct GenerateArgs {
    std::string family;
    int p = 0;
    int block = 1;
    int m = 0;
    std::vector<int> decorate;
    long long n = 0;
    std::uint64_t seed = 1;
    std::optional<double> density;
    std::optional<double> ideal_size;
    std::string format;
};

PositiveOperator positive(const Matrix& m, const std::string& norm) {
    return PositiveOperator::certified(m, norm_from_string(norm));
}

Vector normalized(Vector v, Norm norm) {
    // Make the largest entry real and positive so output does not depend on
    // the phase chosen by the SVD.
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    if (std::abs(v(k)) > 0.0) v *= std::conj(v(k)) / std::abs(v(k));
    const double nv = vector_norm(v, norm);
    return nv > 0.0 ? Vector(v / nv) : v;
}

Vector eigenvector_for(const PositiveOperator& t, Scalar lambda) {
    const SpectrumReport s = spectrum(t);
    const EigenRecord* rec = s.find(lambda, 1e-6);
    return normalized(eigenspace(t.matrix(), rec ? rec->value : lambda).col(0), t.norm_choice());
}

CoordinateIdeal parse_ideal(const std::string& text, std::size_t n) {
    std::vector<std::size_t> idx;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        long long i = 0;
        try {
            i = std::stoll(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != item.size() || i < 1 || static_cast<std::size_t>(i) > n)
            throw ParseError("--ideal: '" + item + "' is not an index in 1.." + std::to_string(n), 0, 0);
        idx.push_back(static_cast<std::size_t>(i - 1));
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return CoordinateIdeal(idx, n);
}

int cmd_analyze(const Common& c, const AnalyzeOptions& o, std::ostream& out) {
    const Loaded in = load_matrix(c.matrix_file);
    const Norm norm = norm_from_string(c.norm);
    const PositiveOperator t = o.allow_general ? PositiveOperator(in.matrix, norm) : positive(in.matrix, c.norm);
    emit(c.out, serialize(analyze(t, in.digest, o)), out);
    return Exit::ok;
}

int cmd_growth(const Common& c, const GrowthArgs& g, std::ostream& out) {
    const Loaded in = load_matrix(c.matrix_file);
    PositiveOperator t = positive(in.matrix, c.norm);
    const Scalar lambda = parse_complex(g.lambda);
    double radius = 1.0;
    if (g.rescale) {
        radius = spectrum(t).spectral_radius;
        if (!(radius > 0.0)) throw PreconditionError("--rescale: r(T) = 0");
        t = t.scaled(1.0 / radius);
    }
    std::optional<Vector> z;
    if (!g.z_file.empty()) {
        z = read_vector(read_file(g.z_file));
        if (z->size() != t.dim())
            throw ParseError("--z: vector has " + std::to_string(z->size()) + " entries, expected " +
                                 std::to_string(t.dim()),
                             0, 0);
    }
    GrowthGrid grid;
    grid.n_min = g.nmin;
    grid.n_max = g.nmax;
    const GrowthProfile p = growth_profile(t, lambda, z, grid);

    std::ostringstream csv;
    csv << "# schema=perron.growth/1 tool_version=" << kToolVersion << " input_digest=" << in.digest << "\n";
    csv << "# lambda=" << format_complex(lambda) << " norm=" << to_string(t.norm_choice())
        << " rescale=" << (g.rescale ? fmt(radius) : std::string("none")) << "\n";
    csv << "# n_min=" << grid.n_min << " n_max=" << grid.n_max << " fit_skip=" << grid.fit_skip
        << " min_fit_points=" << grid.min_fit_points << " exponent_tol=" << fmt(grid.exponent_tol) << "\n";
    csv << "n,r_n,resolvent_norm" << (z ? ",directed_norm" : "") << ",residual,retained\n";
    for (const auto& pt : p.points) {
        csv << pt.n << "," << fmt(pt.r) << "," << fmt(pt.norm);
        if (z) csv << "," << (pt.directed ? fmt(*pt.directed) : std::string("nan"));
        csv << "," << fmt(pt.residual) << "," << (pt.retained ? 1 : 0) << "\n";
    }
    csv << "# fitted_exponent=" << (p.fitted_exponent ? fmt(*p.fitted_exponent) : std::string("none"));
    if (z) csv << " directed_exponent=" << (p.directed_exponent ? fmt(*p.directed_exponent) : std::string("none"));
    csv << " fit_points=" << p.fit_points().size() << "\n";
    if (!p.note.empty()) csv << "# note=" << p.note << "\n";
    emit(c.out, csv.str(), out);
    return Exit::ok;
}

TheoremVerdict dispatch(const VerifyArgs& a, const PositiveOperator& t) {
    HarnessOptions opt;
    opt.horizon = a.horizon;
    opt.seed = a.seed;
    opt.grid.n_min = a.nmin;
    opt.grid.n_max = a.nmax;
    const Scalar lambda = parse_complex(a.lambda);
    auto z_or_eigen = [&]() -> Vector {
        if (a.z_file.empty()) return eigenvector_for(t, lambda);
        Vector z = read_vector(read_file(a.z_file));
        if (z.size() != t.dim()) throw ParseError("--z: dimension mismatch", 0, 0);
        return z;
    };
    const std::string& id = a.id;
    if (id == "thm1.2a" || id == "thm1.2b" || id == "thm1.2c") {
        const Variant v = id.back() == 'a' ? Variant::a : id.back() == 'b' ? Variant::b : Variant::c;
        return verify_thm_1_2(t, lambda, z_or_eigen(), v, opt);
    }
    if (id == "prop3.1") {
        if (a.mode != "orbit" && a.mode != "fixed") throw ParseError("--mode must be 'orbit' or 'fixed'", 0, 0);
        return verify_prop_3_1(t, lambda, z_or_eigen(),
                               a.mode == "orbit" ? Prop31Mode::power_bounded_orbit : Prop31Mode::dominating_fixed_vector,
                               opt);
    }
    if (id == "thm3.5") return verify_dae(t, lambda, opt);
    if (id == "thm4.1") return verify_thm_4_1(t, lambda, opt);
    if (id == "cor4.2") return verify_cor_4_2(t, lambda, opt);
    if (id == "kr2.1a" || id == "kr2.1b" || id == "kr2.1c") {
        const Variant v = id.back() == 'a' ? Variant::a : id.back() == 'b' ? Variant::b : Variant::c;
        std::optional<Vector> z;
        if (!a.z_file.empty()) z = z_or_eigen();
        std::optional<RealVector> x;
        if (!a.functional_file.empty()) x = read_vector(read_file(a.functional_file)).real();
        return verify_kr_2_1(t, lambda, v, z, x, opt);
    }
    if (id == "cor5.6") return verify_cor_5_6(t, scheme_by_name(a.scheme), opt);
    if (id == "thm5.8") return verify_thm_5_8(t, scheme_by_name(a.scheme), opt);
    if (id == "appA1") {
        const auto n = static_cast<std::size_t>(t.dim());
        if (!a.ideal.empty()) return verify_appendix_A1(t, parse_ideal(a.ideal, n), opt);
        for (const auto& f : invariant_ideals(t).ideals)
            if (!f.empty() && f.size() < n) return verify_appendix_A1(t, f, opt);
        TheoremVerdict v;
        v.theorem_id = "appA1";
        v.add("F a closed T-invariant ideal with {0} != F != E", Status::fails,
              "T has no nontrivial invariant coordinate ideal");
        v.conclusion.statement = "sigma(T) = sigma(T|F) union sigma(T/F)";
        v.conclusion.status = Status::not_applicable;
        return v;
    }
    throw ParseError("unknown theorem id '" + id + "'", 0, 0);
}

int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    const auto& ids = theorem_ids();
    if (std::find(ids.begin(), ids.end(), a.id) == ids.end()) {
        std::string known;
        for (const auto& s : ids) known += (known.empty() ? "" : ", ") + s;
        throw ParseError("unknown theorem id '" + a.id + "' (known: " + known + ")", 0, 0);
    }
    const Loaded in = load_matrix(c.matrix_file);
    const TheoremVerdict v = dispatch(a, positive(in.matrix, c.norm));
    emit(c.out, serialize(v), out);
    err << v.theorem_id << ": " << to_string(v.conclusion.status) << "\n";
    for (const auto& h : v.hypotheses) err << "  hypothesis " << to_string(h.status) << ": " << h.name << "\n";
    for (const auto& p : v.parts) err << "  " << p.theorem_id << ": " << to_string(p.conclusion.status) << "\n";
    return exit_code(v);
}

int cmd_generate(const Common& c, const GenerateArgs& g, std::ostream& out) {
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw ParseError(what, 0, 0);
    };
    Generated gen;
    const std::string& f = g.family;
    if (f == "cycle") {
        need(g.p >= 1, "cycle: --p must be at least 1");
        need(g.block >= 1, "cycle: --block must be at least 1");
        gen = g.block == 1 ? cyclic_family(g.p, RealMatrix::Ones(1, 1)) : cyclic_family(g.p, g.block, g.seed);
    } else if (f == "jordan") {
        need(g.m >= 1, "jordan: --m must be at least 1");
        for (int d : g.decorate) need(d >= 1, "jordan: --decorate lengths must be at least 1");
        gen = jordan_growth_family(g.m, g.decorate);
    } else {
        RandomKind kind;
        try {
            kind = random_kind_from_string(f);
        } catch (const std::exception&) {
            throw ParseError("unknown family '" + f + "' (known: cycle, jordan, dense, stochastic, reducible)", 0, 0);
        }
        need(g.n >= 1, f + ": --n must be at least 1");
        std::map<std::string, double> params;
        if (g.density) {
            need(*g.density > 0.0 && *g.density <= 1.0, "--density must lie in (0, 1]");
            params["density"] = *g.density;
        }
        if (g.ideal_size) {
            need(*g.ideal_size >= 1 && *g.ideal_size < static_cast<double>(g.n), "--ideal-size must lie in 1..n-1");
            params["ideal_size"] = *g.ideal_size;
        }
        if (kind == RandomKind::reducible_block) need(g.n >= 2, "reducible: --n must be at least 2");
        gen = random_family(kind, static_cast<Eigen::Index>(g.n), g.seed, params);
    }
    std::string format = g.format;
    if (format.empty()) format = c.out.size() >= 5 && c.out.substr(c.out.size() - 5) == ".json" ? "json" : "mtx";
    need(format == "mtx" || format == "json", "--format must be 'mtx' or 'json'");
    emit(c.out, write_matrix(gen.op.matrix(), format == "json" ? MatrixFormat::json : MatrixFormat::matrix_market),
         out);
    if (!c.out.empty() && c.out != "-") write_file_atomic(c.out + ".truth.json", serialize(gen.spec));
    return Exit::ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral analysis of nonnegative matrices"};
    app.name("perron");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Common common;
    auto add_common = [&](CLI::App* sub, bool with_out = true) {
        sub->add_option("matrix", common.matrix_file, "Matrix Market (.mtx) or dense JSON file")->required();
        sub->add_option("--norm", common.norm, "lattice norm: 1, 2 or inf")
            ->check(CLI::IsMember({"1", "2", "inf", "one", "two"}));
        if (with_out) sub->add_option("--out,-o", common.out, "output file (default: stdout)");
    };

    AnalyzeOptions ao;
    auto* analyze_cmd = app.add_subcommand("analyze", "spectrum, period, cyclicity and boundedness report");
    add_common(analyze_cmd);
    analyze_cmd->add_flag("--allow-general", ao.allow_general, "accept entries of any sign (spectral data only)");
    analyze_cmd->add_option("--horizon", ao.power_horizon, "power/Cesaro horizon")->check(CLI::Range(16, 1 << 16));
    analyze_cmd->add_option("--abel-nmax", ao.abel_n_max, "last dyadic Abel grid point")->check(CLI::Range(4, 40));

    GrowthArgs ga;
    auto* growth_cmd = app.add_subcommand("growth", "resolvent growth curve along r_n lambda as CSV");
    add_common(growth_cmd);
    growth_cmd->add_option("--lambda", ga.lambda, "peripheral eigenvalue, a+bi (default 1)");
    growth_cmd->add_option("--z", ga.z_file, "eigenvector file for directed norms ||R(r_n,T)|z|||");
    growth_cmd->add_option("--nmin", ga.nmin, "first grid exponent")->check(CLI::Range(1, 52));
    growth_cmd->add_option("--nmax", ga.nmax, "last grid exponent")->check(CLI::Range(1, 52));
    growth_cmd->add_flag("--rescale", ga.rescale, "divide T by r(T) first");

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "check one theorem on one matrix");
    verify_cmd->add_option("theorem", va.id, "theorem id")->required();
    add_common(verify_cmd);
    verify_cmd->add_option("--lambda", va.lambda, "eigenvalue, a+bi (default 1)");
    verify_cmd->add_option("--z", va.z_file, "eigenvector file (default: computed)");
    verify_cmd->add_option("--functional", va.functional_file, "functional x' for kr2.1c");
    verify_cmd->add_option("--scheme", va.scheme, "weighting scheme for thm5.8 / cor5.6")
        ->check(CLI::IsMember({"cesaro", "abel", "power", "constant"}));
    verify_cmd->add_option("--mode", va.mode, "prop3.1 mode: orbit or fixed");
    verify_cmd->add_option("--ideal", va.ideal, "appA1 ideal as one-based indices, e.g. 1,2");
    verify_cmd->add_option("--horizon", va.horizon, "finite horizon for power sequences")->check(CLI::Range(16, 1 << 16));
    verify_cmd->add_option("--seed", va.seed, "sampling seed");
    verify_cmd->add_option("--nmin", va.nmin, "first grid exponent")->check(CLI::Range(1, 52));
    verify_cmd->add_option("--nmax", va.nmax, "last grid exponent")->check(CLI::Range(1, 52));

    GenerateArgs gg;
    auto* generate_cmd = app.add_subcommand("generate", "write a test operator and its ground-truth sidecar");
    generate_cmd->add_option("family", gg.family, "cycle, jordan, dense, stochastic or reducible")->required();
    generate_cmd->add_option("--out,-o", common.out, "matrix file; the sidecar goes to <out>.truth.json");
    generate_cmd->add_option("--format", gg.format, "mtx or json (default from the extension)");
    generate_cmd->add_option("--p", gg.p, "cycle: period");
    generate_cmd->add_option("--block", gg.block, "cycle: block size");
    generate_cmd->add_option("--m", gg.m, "jordan: block size");
    generate_cmd->add_option("--decorate", gg.decorate, "jordan: cycle lengths to direct-sum")->delimiter(',');
    generate_cmd->add_option("--n", gg.n, "random families: dimension");
    generate_cmd->add_option("--seed", gg.seed, "random families: seed");
    generate_cmd->add_option("--density", gg.density, "random families: fill probability");
    generate_cmd->add_option("--ideal-size", gg.ideal_size, "reducible: size of the planted ideal");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return Exit::usage;
    }
    if (common.norm == "one") common.norm = "1";
    if (common.norm == "two") common.norm = "2";

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(common, ao, out);
        if (growth_cmd->parsed()) return cmd_growth(common, ga, out);
        if (verify_cmd->parsed()) return cmd_verify(common, va, out, err);
        return cmd_generate(common, gg, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return Exit::usage;
    } catch (const NegativityError& e) {
        err << "error: " << e.what() << "\n";
        return Exit::negativity;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return Exit::numerical;
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << "\n";
        return Exit::precondition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return Exit::usage;
    }
}

}  // namespace perron::cli
