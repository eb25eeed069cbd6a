#include "perron/report.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "perron/io.hpp"

namespace perron {

using nlohmann::json;

namespace {

json num(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double to_num(const json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ParseError("expected a number, found \"" + s + "\"", 0, 0);
}

json cnum(Scalar z) { return json::array({num(z.real()), num(z.imag())}); }
Scalar to_cnum(const json& j) { return {to_num(j.at(0)), to_num(j.at(1))}; }

json num_map(const std::map<std::string, double>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[k] = num(v);
    return j;
}

std::map<std::string, double> to_num_map(const json& j) {
    std::map<std::string, double> m;
    for (auto it = j.begin(); it != j.end(); ++it) m[it.key()] = to_num(it.value());
    return m;
}

json num_list(const std::vector<double>& v) {
    json j = json::array();
    for (double x : v) j.push_back(num(x));
    return j;
}

std::vector<double> to_num_list(const json& j) {
    std::vector<double> v;
    for (const auto& e : j) v.push_back(to_num(e));
    return v;
}

// Index sets are one-based on the wire.
json index_list(const std::vector<std::size_t>& v) {
    json j = json::array();
    for (auto i : v) j.push_back(i + 1);
    return j;
}

std::vector<std::size_t> to_index_list(const json& j) {
    std::vector<std::size_t> v;
    for (const auto& e : j) {
        const auto i = e.get<long long>();
        if (i < 1) throw ParseError("indices are one-based", 0, 0);
        v.push_back(static_cast<std::size_t>(i - 1));
    }
    return v;
}

json spectrum_json(const SpectrumReport& s) {
    json records = json::array();
    for (const auto& r : s.records)
        records.push_back({{"value", cnum(r.value)},
                           {"alg_mult", r.alg_mult},
                           {"geom_mult", r.geom_mult},
                           {"index", r.index},
                           {"peripheral", r.is_peripheral}});
    return {{"dim", s.dim},
            {"spectral_radius", num(s.spectral_radius)},
            {"cluster_tol", num(s.cluster_tol)},
            {"peripheral_eps", num(s.peripheral_eps)},
            {"records", records}};
}

SpectrumReport spectrum_from(const json& j) {
    SpectrumReport s;
    s.dim = j.at("dim").get<Eigen::Index>();
    s.spectral_radius = to_num(j.at("spectral_radius"));
    s.cluster_tol = to_num(j.at("cluster_tol"));
    s.peripheral_eps = to_num(j.at("peripheral_eps"));
    for (const auto& r : j.at("records")) {
        EigenRecord e;
        e.value = to_cnum(r.at("value"));
        e.alg_mult = r.at("alg_mult").get<int>();
        e.geom_mult = r.at("geom_mult").get<int>();
        e.index = r.at("index").get<int>();
        e.is_peripheral = r.at("peripheral").get<bool>();
        s.records.push_back(e);
    }
    return s;
}

BoundednessKind kind_from(const std::string& s) {
    for (auto k : {BoundednessKind::power, BoundednessKind::cesaro, BoundednessKind::abel, BoundednessKind::ws})
        if (to_string(k) == s) return k;
    throw ParseError("unknown boundedness kind \"" + s + "\"", 0, 0);
}

BoundednessStatus bstatus_from(const std::string& s) {
    for (auto k : {BoundednessStatus::bounded_plausible, BoundednessStatus::unbounded_detected,
                   BoundednessStatus::inconclusive})
        if (to_string(k) == s) return k;
    throw ParseError("unknown boundedness verdict \"" + s + "\"", 0, 0);
}

json verdict_json(const TheoremVerdict& v) {
    json hyps = json::array();
    for (const auto& h : v.hypotheses)
        hyps.push_back({{"name", h.name}, {"status", to_string(h.status)}, {"evidence", h.evidence}});
    json parts = json::array();
    for (const auto& p : v.parts) parts.push_back(verdict_json(p));
    return {{"theorem_id", v.theorem_id},
            {"hypotheses", hyps},
            {"conclusion",
             {{"status", to_string(v.conclusion.status)},
              {"statement", v.conclusion.statement},
              {"witnesses", v.conclusion.witnesses}}},
            {"tolerances", num_map(v.tolerances)},
            {"grid", num_map(v.grid)},
            {"parts", parts},
            {"note", v.note}};
}

TheoremVerdict verdict_from(const json& j) {
    TheoremVerdict v;
    v.theorem_id = j.at("theorem_id").get<std::string>();
    for (const auto& h : j.at("hypotheses"))
        v.hypotheses.push_back({h.at("name").get<std::string>(), status_from_string(h.at("status").get<std::string>()),
                                h.at("evidence").get<std::string>()});
    const auto& c = j.at("conclusion");
    v.conclusion.status = status_from_string(c.at("status").get<std::string>());
    v.conclusion.statement = c.at("statement").get<std::string>();
    v.conclusion.witnesses = c.at("witnesses").get<std::vector<std::string>>();
    v.tolerances = to_num_map(j.at("tolerances"));
    v.grid = to_num_map(j.at("grid"));
    for (const auto& p : j.at("parts")) v.parts.push_back(verdict_from(p));
    v.note = j.at("note").get<std::string>();
    return v;
}

json parse_checked(const std::string& text, const char* schema) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0, 0);
    }
    if (!j.is_object() || j.value("schema", "") != schema)
        throw ParseError(std::string("expected schema \"") + schema + "\"", 0, 0);
    return j;
}

template <typename F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed document: ") + e.what(), 0, 0);
    }
}

}  // namespace

std::string serialize(const AnalysisReport& r) {
    json j;
    j["schema"] = r.schema;
    j["tool_version"] = r.tool_version;
    j["input_digest"] = r.input_digest;
    j["norm"] = to_string(r.norm_choice);
    j["spectral_only"] = r.spectral_only;
    j["spectrum"] = spectrum_json(r.spectrum);
    if (r.irreducibility) {
        json sccs = json::array();
        for (const auto& c : r.irreducibility->sccs) sccs.push_back(index_list(c));
        j["irreducibility"] = {{"sccs", sccs},
                               {"condensation_order", r.irreducibility->condensation_order},
                               {"irreducible", r.irreducibility->is_irreducible},
                               {"period", r.irreducibility->period}};
    } else {
        j["irreducibility"] = nullptr;
    }
    if (r.cyclicity) {
        json missing = json::array();
        for (const auto& m : r.cyclicity->missing)
            missing.push_back({{"element", cnum(m.element)}, {"k", m.k}, {"target", cnum(m.target)}});
        j["cyclicity"] = {{"cyclic", r.cyclicity->cyclic},
                          {"missing", missing},
                          {"k_max", r.cyclicity->k_max},
                          {"cap_hit", r.cyclicity->cap_hit}};
    } else {
        j["cyclicity"] = nullptr;
    }
    json bounds = json::array();
    for (const auto& b : r.boundedness)
        bounds.push_back({{"kind", to_string(b.kind)},
                          {"scheme", b.scheme},
                          {"sup", num(b.sup_estimate)},
                          {"horizon", b.horizon},
                          {"trend", num(b.trend)},
                          {"verdict", to_string(b.verdict)},
                          {"certified", b.certified},
                          {"note", b.note},
                          {"index", num_list(b.index_magnitudes)},
                          {"norms", num_list(b.norms)}});
    j["boundedness"] = bounds;
    j["tolerances"] = num_map(r.tolerances);
    j["grid"] = num_map(r.grid);
    j["notes"] = r.notes;
    return j.dump() + "\n";
}

AnalysisReport parse_analysis_report(const std::string& text) {
    const json j = parse_checked(text, kAnalysisSchema);
    return guarded([&] {
        AnalysisReport r;
        r.schema = j.at("schema").get<std::string>();
        r.tool_version = j.at("tool_version").get<std::string>();
        r.input_digest = j.at("input_digest").get<std::string>();
        r.norm_choice = norm_from_string(j.at("norm").get<std::string>());
        r.spectral_only = j.at("spectral_only").get<bool>();
        r.spectrum = spectrum_from(j.at("spectrum"));
        if (!j.at("irreducibility").is_null()) {
            const auto& i = j.at("irreducibility");
            IrreducibilityReport ir;
            for (const auto& c : i.at("sccs")) ir.sccs.push_back(to_index_list(c));
            ir.condensation_order = i.at("condensation_order").get<std::vector<std::size_t>>();
            ir.is_irreducible = i.at("irreducible").get<bool>();
            ir.period = i.at("period").get<int>();
            r.irreducibility = ir;
        }
        if (!j.at("cyclicity").is_null()) {
            const auto& c = j.at("cyclicity");
            CyclicityResult cr;
            cr.cyclic = c.at("cyclic").get<bool>();
            for (const auto& m : c.at("missing"))
                cr.missing.push_back({to_cnum(m.at("element")), m.at("k").get<long long>(), to_cnum(m.at("target"))});
            cr.k_max = c.at("k_max").get<long long>();
            cr.cap_hit = c.at("cap_hit").get<bool>();
            r.cyclicity = cr;
        }
        for (const auto& b : j.at("boundedness")) {
            BoundednessVerdict v;
            v.kind = kind_from(b.at("kind").get<std::string>());
            v.scheme = b.at("scheme").get<std::string>();
            v.sup_estimate = to_num(b.at("sup"));
            v.horizon = b.at("horizon").get<int>();
            v.trend = to_num(b.at("trend"));
            v.verdict = bstatus_from(b.at("verdict").get<std::string>());
            v.certified = b.at("certified").get<bool>();
            v.note = b.at("note").get<std::string>();
            v.index_magnitudes = to_num_list(b.at("index"));
            v.norms = to_num_list(b.at("norms"));
            r.boundedness.push_back(v);
        }
        r.tolerances = to_num_map(j.at("tolerances"));
        r.grid = to_num_map(j.at("grid"));
        r.notes = j.at("notes").get<std::vector<std::string>>();
        return r;
    });
}

std::string serialize(const TheoremVerdict& v) {
    json j = verdict_json(v);
    j["schema"] = kVerdictSchema;
    j["tool_version"] = kToolVersion;
    return j.dump() + "\n";
}

TheoremVerdict parse_verdict(const std::string& text) {
    const json j = parse_checked(text, kVerdictSchema);
    return guarded([&] { return verdict_from(j); });
}

std::string serialize(const GeneratorSpec& s) {
    json params = num_map(s.params);
    json e;
    const auto& g = s.expected;
    e["period"] = g.period ? json(*g.period) : json(nullptr);
    json per = json::array();
    for (auto z : g.peripheral) per.push_back(cnum(z));
    e["peripheral"] = per;
    e["index_at_one"] = g.index_at_one ? json(*g.index_at_one) : json(nullptr);
    e["growth_exponent"] = g.growth_exponent ? num(*g.growth_exponent) : json(nullptr);
    e["planted_ideal"] = g.planted_ideal ? index_list(g.planted_ideal->indices()) : json(nullptr);
    e["row_stochastic"] = g.row_stochastic;
    e["irreducible"] = g.irreducible ? json(*g.irreducible) : json(nullptr);
    json j = {{"schema", kGeneratorSchema},
              {"tool_version", kToolVersion},
              {"family", s.family},
              {"n", s.n},
              {"params", params},
              {"seed", s.seed},
              {"expected", e}};
    return j.dump() + "\n";
}

GeneratorSpec parse_generator_spec(const std::string& text) {
    const json j = parse_checked(text, kGeneratorSchema);
    return guarded([&] {
        GeneratorSpec s;
        s.family = j.at("family").get<std::string>();
        s.n = j.at("n").get<Eigen::Index>();
        s.params = to_num_map(j.at("params"));
        s.seed = j.at("seed").get<std::uint64_t>();
        const auto& e = j.at("expected");
        auto& g = s.expected;
        if (!e.at("period").is_null()) g.period = e.at("period").get<int>();
        for (const auto& z : e.at("peripheral")) g.peripheral.push_back(to_cnum(z));
        if (!e.at("index_at_one").is_null()) g.index_at_one = e.at("index_at_one").get<int>();
        if (!e.at("growth_exponent").is_null()) g.growth_exponent = to_num(e.at("growth_exponent"));
        if (!e.at("planted_ideal").is_null())
            g.planted_ideal = CoordinateIdeal(to_index_list(e.at("planted_ideal")), static_cast<std::size_t>(s.n));
        g.row_stochastic = e.at("row_stochastic").get<bool>();
        if (!e.at("irreducible").is_null()) g.irreducible = e.at("irreducible").get<bool>();
        return s;
    });
}

}  // namespace perron
