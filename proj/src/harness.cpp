#include "perron/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "perron/feasibility.hpp"
#include "perron/perron_structure.hpp"

namespace perron {

std::string to_string(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::fails: return "fails";
        case Status::one_sided: return "one_sided";
        case Status::not_applicable: return "not_applicable";
    }
    return "not_applicable";
}

Status status_from_string(const std::string& text) {
    if (text == "holds") return Status::holds;
    if (text == "fails") return Status::fails;
    if (text == "one_sided") return Status::one_sided;
    if (text == "not_applicable") return Status::not_applicable;
    throw PreconditionError("unknown status '" + text + "'");
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::a: return "a";
        case Variant::b: return "b";
        case Variant::c: return "c";
    }
    return "a";
}

bool TheoremVerdict::admissible() const {
    return std::none_of(hypotheses.begin(), hypotheses.end(),
                        [](const Hypothesis& h) { return h.status == Status::fails || h.status == Status::not_applicable; });
}

Hypothesis& TheoremVerdict::add(std::string name, Status status, std::string evidence) {
    hypotheses.push_back({std::move(name), status, std::move(evidence)});
    return hypotheses.back();
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

std::string fmt(Scalar z) {
    std::ostringstream os;
    os.precision(10);
    os << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::fabs(z.imag()) << "i";
    return os.str();
}

Status holds_if(bool ok) { return ok ? Status::holds : Status::fails; }

void record_grid(TheoremVerdict& v, const HarnessOptions& opt) {
    v.grid["n_min"] = opt.grid.n_min;
    v.grid["n_max"] = opt.grid.n_max;
    v.grid["fit_skip"] = opt.grid.fit_skip;
    v.grid["min_fit_points"] = opt.grid.min_fit_points;
    v.tolerances["exponent_tol"] = opt.grid.exponent_tol;
    v.tolerances["spread_factor"] = opt.grid.spread_factor;
    v.tolerances["angular_tol"] = opt.cyclicity.angular_tol;
    v.tolerances["eigen_tol"] = opt.eigen_tol;
}

bool positive_hypothesis(TheoremVerdict& v, const PositiveOperator& t) {
    if (t.nonneg_certified()) {
        v.add("T positive", Status::holds, "all entries real and >= 0");
        return true;
    }
    const auto bad = first_negative_entry(t.matrix());
    std::string ev = "entry not real and nonnegative";
    if (bad) ev += " at (" + std::to_string(bad->first + 1) + "," + std::to_string(bad->second + 1) + ")";
    v.add("T positive", Status::fails, ev);
    return false;
}

bool unit_radius_hypothesis(TheoremVerdict& v, const SpectrumReport& spec) {
    const double tol = std::max(spec.cluster_tol, 1e-9);
    v.tolerances["radius_tol"] = tol;
    const bool ok = std::fabs(spec.spectral_radius - 1.0) <= tol;
    v.add("r(T) = 1", holds_if(ok), "r(T) = " + fmt(spec.spectral_radius));
    return ok;
}

bool unimodular_hypothesis(TheoremVerdict& v, Scalar lambda) {
    const bool ok = std::fabs(std::abs(lambda) - 1.0) <= 1e-6;
    v.add("|lambda| = 1", holds_if(ok), "|lambda| = " + fmt(std::abs(lambda)));
    return ok;
}

const EigenRecord* peripheral_hypothesis(TheoremVerdict& v, const SpectrumReport& spec, Scalar lambda,
                                         const HarnessOptions& opt) {
    const EigenRecord* rec = spec.find(lambda, opt.match_tol);
    const bool ok = rec && rec->is_peripheral;
    v.add("lambda in peripheral spectrum", holds_if(ok),
          rec ? "matched eigenvalue " + fmt(rec->value) + (rec->is_peripheral ? "" : " (not peripheral)")
              : "no eigenvalue within " + fmt(opt.match_tol));
    return ok ? rec : nullptr;
}

bool eigenvector_hypothesis(TheoremVerdict& v, const PositiveOperator& t, Scalar lambda, const Vector& z,
                            const HarnessOptions& opt, bool require_unit) {
    if (z.size() != t.dim()) {
        v.add("Tz = lambda z", Status::fails, "dimension mismatch");
        return false;
    }
    const double zn = vector_norm(z, t.norm_choice());
    const double res = vector_norm((t.matrix() * z - lambda * z).eval(), t.norm_choice());
    const double bound = opt.eigen_tol * std::max(1.0, t.norm()) * std::max(zn, 1e-300);
    const bool ok = zn > 0 && res <= bound;
    v.add("Tz = lambda z", holds_if(ok), "residual " + fmt(res) + ", bound " + fmt(bound));
    if (!require_unit) return ok;
    const bool unit = std::fabs(zn - 1.0) <= 1e-8;
    v.add("||z|| = 1", holds_if(unit), "||z|| = " + fmt(zn));
    return ok && unit;
}

TheoremVerdict not_applicable(TheoremVerdict& v) {
    v.conclusion.status = Status::not_applicable;
    v.conclusion.witnesses.push_back("a hypothesis failed; conclusion not evaluated");
    return v;
}

// lambda^k (or r e^{i k theta}) among `candidates` for every integer k.
void closure_conclusion(TheoremVerdict& v, Scalar base, const std::vector<Scalar>& candidates,
                        const std::string& statement, const HarnessOptions& opt) {
    const CyclicityResult c = power_closure(base, candidates, opt.cyclicity);
    v.conclusion.statement = statement;
    v.conclusion.status = holds_if(c.cyclic);
    v.conclusion.witnesses.push_back("powers checked for |k| <= " + std::to_string(c.k_max) +
                                     (c.cap_hit ? " (irrational angle; capped)" : " (one full period)"));
    for (const auto& m : c.missing)
        v.conclusion.witnesses.push_back("missing power k = " + std::to_string(m.k) + ": " + fmt(m.target));
}

std::vector<Scalar> peripheral_values(const SpectrumReport& spec) {
    std::vector<Scalar> out;
    for (const auto& r : spec.peripheral()) out.push_back(r.value);
    return out;
}

// Fit-window data of a profile: (r - 1), ||R||, directed norms.
struct Window {
    std::vector<double> delta, norm, directed;
};

Window window_of(const GrowthProfile& p) {
    Window w;
    for (const auto* pt : p.fit_points()) {
        w.delta.push_back(pt->r - 1.0);
        w.norm.push_back(pt->norm);
        if (pt->directed) w.directed.push_back(*pt->directed);
    }
    return w;
}

// ||R|| ~ C / (r - 1)^alpha: fitted exponent within tol and bounded ratio.
Hypothesis growth_like(const std::string& name, const GrowthProfile& p, double alpha, const GrowthGrid& g) {
    if (!p.fitted_exponent) return {name, Status::fails, "no exponent: " + p.note};
    const Window w = window_of(p);
    std::vector<double> model;
    for (double d : w.delta) model.push_back(std::pow(d, -alpha));
    const double spread = ratio_spread(w.norm, model);
    const bool ok = std::fabs(*p.fitted_exponent - alpha) <= g.exponent_tol && spread <= g.spread_factor;
    return {name, holds_if(ok), "fitted exponent " + fmt(*p.fitted_exponent) + ", ratio spread " + fmt(spread)};
}

Hypothesis growth_at_most(const std::string& name, const GrowthProfile& p, double alpha, const GrowthGrid& g) {
    if (!p.fitted_exponent) return {name, Status::fails, "no exponent: " + p.note};
    const bool ok = *p.fitted_exponent <= alpha + g.exponent_tol;
    return {name, holds_if(ok), "fitted exponent " + fmt(*p.fitted_exponent) + " vs " + fmt(alpha) + " + " +
                                    fmt(g.exponent_tol)};
}

std::optional<GrowthProfile> try_profile(TheoremVerdict& v, const PositiveOperator& t, Scalar dir,
                                         const std::optional<Vector>& z, const GrowthGrid& g, const std::string& what) {
    try {
        return growth_profile(t, dir, z, g);
    } catch (const PreconditionError& e) {
        v.add(what, Status::fails, e.what());
        return std::nullopt;
    }
}

std::optional<RealMatrix> checked_real_eigenspace(const RealMatrix& t, double mu) {
    if (t.rows() == 0) return std::nullopt;
    const RealMatrix b = real_eigenspace(t, mu);
    const double scale = std::max(1.0, t.cwiseAbs().rowwise().sum().maxCoeff());
    const RealMatrix r = t * b - mu * b;
    if (r.cwiseAbs().maxCoeff() > 1e-8 * scale) return std::nullopt;
    return b;
}

Vector unit_eigenvector(const PositiveOperator& t, Scalar lambda, Eigen::Index column = 0) {
    const Matrix basis = eigenspace(t.matrix(), lambda);
    Vector z = basis.col(std::min(column, basis.cols() - 1));
    return z / vector_norm(z, t.norm_choice());
}

}  // namespace

std::optional<RealVector> nonnegative_eigenvector(const RealMatrix& t, double mu) {
    const auto b = checked_real_eigenspace(t, mu);
    if (!b) return std::nullopt;
    const Eigen::Index q = b->cols();
    const RealMatrix a_ub = -*b;
    const RealVector b_ub = RealVector::Zero(t.rows());
    const RealMatrix a_eq = b->colwise().sum();
    const RealVector b_eq = RealVector::Ones(1);
    auto c = find_feasible(a_ub, b_ub, a_eq, b_eq);
    if (!c || c->size() != q) return std::nullopt;
    RealVector x = *b * *c;
    if (x.minCoeff() < -1e-9) return std::nullopt;
    return x.cwiseMax(0.0);
}

std::optional<RealVector> dominating_fixed_vector(const RealMatrix& t, const RealVector& modz) {
    const auto b = checked_real_eigenspace(t, 1.0);
    if (!b) return std::nullopt;
    auto c = find_feasible(-*b, -modz, RealMatrix(0, b->cols()), RealVector(0));
    if (!c) return std::nullopt;
    RealVector x = *b * *c;
    if (((x - modz).array() < -1e-9 * std::max(1.0, modz.maxCoeff())).any()) return std::nullopt;
    return x;
}

std::optional<DominatedPair> dominated_eigenpair(const RealMatrix& t, Scalar lambda, int phases) {
    const Eigen::Index n = t.rows();
    if (n == 0 || std::abs(lambda) == 0.0) return std::nullopt;
    const Matrix tc = t.cast<Scalar>();
    const Matrix zb = eigenspace(tc, lambda);
    const double scale = std::max(1.0, t.cwiseAbs().rowwise().sum().maxCoeff());
    if ((tc * zb - lambda * zb).cwiseAbs().maxCoeff() > 1e-8 * scale) return std::nullopt;
    const auto xb = checked_real_eigenspace(t, std::abs(lambda));
    if (!xb) return std::nullopt;

    const Eigen::Index p = zb.cols(), q = xb->cols();
    const Eigen::Index vars = 2 * p + q;
    const RealMatrix zr = zb.real(), zi = zb.imag();
    RealMatrix a_ub(n * phases, vars);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (int m = 0; m < phases; ++m) {
            const double phi = 2.0 * std::numbers::pi * m / phases;
            const double c = std::cos(phi), s = std::sin(phi);
            const Eigen::Index row = j * phases + m;
            // c Re z_j + s Im z_j - x_j <= 0
            a_ub.row(row).segment(0, p) = c * zr.row(j) + s * zi.row(j);
            a_ub.row(row).segment(p, p) = -c * zi.row(j) + s * zr.row(j);
            a_ub.row(row).segment(2 * p, q) = -xb->row(j);
        }
    }
    const RealVector b_ub = RealVector::Zero(n * phases);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return zb.row(a).norm() > zb.row(b).norm(); });
    const double widen = 1.0 / std::cos(std::numbers::pi / phases);
    for (Eigen::Index i : order) {
        if (zb.row(i).norm() <= 1e-12) break;
        RealMatrix a_eq(2, vars);
        a_eq.row(0) << zr.row(i), -zi.row(i), RealVector::Zero(q).transpose();
        a_eq.row(1) << zi.row(i), zr.row(i), RealVector::Zero(q).transpose();
        const RealVector b_eq = (RealVector(2) << 1.0, 0.0).finished();
        auto sol = find_feasible(a_ub, b_ub, a_eq, b_eq);
        if (!sol) continue;
        const RealVector a = sol->segment(0, p), b = sol->segment(p, p), c = sol->segment(2 * p, q);
        DominatedPair out;
        out.z = zb * (a.cast<Scalar>() + Scalar(0, 1) * b.cast<Scalar>());
        out.x = (*xb * c) * widen;
        if ((out.z.cwiseAbs() - out.x).maxCoeff() > 1e-9 * std::max(1.0, out.x.maxCoeff())) continue;
        return out;
    }
    return std::nullopt;
}

std::optional<RealVector> super_fixed_functional(const RealMatrix& t, const RealVector& modz) {
    const Eigen::Index n = t.rows();
    RealMatrix a_ub(2 * n + 1, n);
    a_ub.topRows(n) = -RealMatrix::Identity(n, n);
    a_ub.middleRows(n, n) = -(t.transpose() - RealMatrix::Identity(n, n));
    a_ub.row(2 * n) = -modz.transpose();
    RealVector b_ub = RealVector::Zero(2 * n + 1);
    b_ub(2 * n) = -1.0;
    auto x = find_feasible(a_ub, b_ub, RealMatrix(0, n), RealVector(0));
    if (!x) return std::nullopt;
    return x->cwiseMax(0.0);
}

TheoremVerdict verify_thm_1_2(const PositiveOperator& t, Scalar lambda, const Vector& z, Variant variant,
                              const HarnessOptions& opt) {
    TheoremVerdict v;
    v.theorem_id = "thm1.2" + to_string(variant);
    record_grid(v, opt);
    if (!positive_hypothesis(v, t)) return not_applicable(v);
    const SpectrumReport spec = spectrum(t);
    unit_radius_hypothesis(v, spec);
    unimodular_hypothesis(v, lambda);
    peripheral_hypothesis(v, spec, lambda, opt);
    eigenvector_hypothesis(v, t, lambda, z, opt, true);
    if (!v.admissible()) return not_applicable(v);

    const Scalar dir = lambda / std::abs(lambda);
    if (variant == Variant::a) {
        auto prof = try_profile(v, t, Scalar(1), z, opt.grid, "growth profile");
        if (!prof) return not_applicable(v);
        v.conclusion.statement = "1/(r_n - 1) <= ||R(r_n,T)|z||| <= ||R(r_n,T)|| at every retained grid point";
        int checked = 0, violations = 0;
        for (const auto& p : prof->points) {
            if (!p.retained || !p.directed) continue;
            ++checked;
            const double slack = 1e-8 + p.residual;
            const double lower = 1.0 / (p.r - 1.0);
            const bool lo = lower <= *p.directed * (1.0 + slack);
            const bool hi = *p.directed <= p.norm * (1.0 + slack);
            if (!lo || !hi) {
                ++violations;
                v.conclusion.witnesses.push_back("n = " + std::to_string(p.n) + ": lower " + fmt(lower) + ", directed " +
                                                 fmt(*p.directed) + ", norm " + fmt(p.norm));
            }
        }
        v.conclusion.witnesses.push_back(std::to_string(checked) + " retained points, " + std::to_string(violations) +
                                         " violations");
        v.conclusion.status = holds_if(checked > 0 && violations == 0);
        v.tolerances["relative_slack"] = 1e-8;
        return v;
    }

    GrowthClassification cls;
    try {
        cls = classify_eigenvector_growth(t, lambda, z, opt.grid);
    } catch (const PreconditionError& e) {
        v.add("growth classification", Status::fails, e.what());
        return not_applicable(v);
    }
    const std::string ev = "label " + to_string(cls.label) + ", minimal spread " + fmt(cls.minimal_spread) +
                           ", maximal spread " + fmt(cls.maximal_spread) +
                           (cls.profile.directed_exponent ? ", directed exponent " + fmt(*cls.profile.directed_exponent)
                                                          : std::string()) +
                           (cls.note.empty() ? "" : "; " + cls.note);
    if (variant == Variant::b)
        v.add("||R(r_n,T)|z||| ~ 1/(r_n - 1)", holds_if(cls.minimal), ev);
    else
        v.add("||R(r_n,T)|z||| ~ ||R(r_n,T)||", holds_if(cls.maximal), ev);
    if (!v.admissible()) return not_applicable(v);
    closure_conclusion(v, dir, spec.values(), "lambda^k in sigma(T) for all integers k", opt);
    return v;
}

TheoremVerdict verify_prop_3_1(const PositiveOperator& t, Scalar lambda, const Vector& z, Prop31Mode mode,
                               const HarnessOptions& opt) {
    TheoremVerdict v;
    v.theorem_id = "prop3.1";
    record_grid(v, opt);
    v.grid["horizon"] = opt.horizon;
    if (!positive_hypothesis(v, t)) return not_applicable(v);
    unimodular_hypothesis(v, lambda);
    eigenvector_hypothesis(v, t, lambda, z, opt, false);
    if (!v.admissible()) return not_applicable(v);
    const RealVector modz = modulus(z);

    if (mode == Prop31Mode::power_bounded_orbit) {
        std::vector<double> idx, norms;
        Vector w = modz.cast<Scalar>();
        double sup = vector_norm(w, t.norm_choice());
        for (int k = 1; k <= opt.horizon; ++k) {
            w = t.matrix() * w;
            const double nk = vector_norm(w, t.norm_choice());
            sup = std::max(sup, nk);
            idx.push_back(k);
            norms.push_back(nk);
        }
        const double trend = trend_slope(idx, norms, static_cast<std::size_t>(std::max(0, opt.horizon / 8 - 1)));
        const BoundednessStatus b = classify_trend(sup, trend);
        v.add("sup_n ||T^n|z||| < infinity", b == BoundednessStatus::bounded_plausible ? Status::one_sided : Status::fails,
              "sup over horizon " + fmt(sup) + ", trend " + fmt(trend) + " (" + to_string(b) + ")");
    } else {
        const auto x = dominating_fixed_vector(t.real(), modz);
        std::string ev = "no x in ker(1 - T) with x >= |z|";
        if (x) {
            ev = "x = (";
            for (Eigen::Index i = 0; i < x->size(); ++i) ev += (i ? "," : "") + fmt((*x)(i));
            ev += ")";
        }
        v.add("1 has an eigenvector x >= |z|", holds_if(x.has_value()), ev);
    }
    if (!v.admissible()) return not_applicable(v);
    const SpectrumReport spec = spectrum(t);
    closure_conclusion(v, lambda / std::abs(lambda), spec.values(), "lambda^k in sigma(T) for all integers k", opt);
    return v;
}

TheoremVerdict verify_dae(const PositiveOperator& t, Scalar lambda, const HarnessOptions& opt) {
    TheoremVerdict v;
    v.theorem_id = "thm3.5";
    record_grid(v, opt);
    v.grid["phase_grid"] = opt.phase_grid;
    if (!positive_hypothesis(v, t)) return not_applicable(v);
    const SpectrumReport spec = spectrum(t);
    const EigenRecord* rec = spec.find(lambda, opt.match_tol);
    v.add("lambda is an eigenvalue", holds_if(rec != nullptr), rec ? "matched " + fmt(rec->value) : "no match");
    v.add("lambda != 0", holds_if(std::abs(lambda) > 0.0));
    if (!v.admissible()) return not_applicable(v);
    const Scalar mu = rec->value;
    const auto pair = dominated_eigenpair(t.real(), mu, opt.phase_grid);
    std::string ev = "no z in ker(lambda - T), x in ker(|lambda| - T) with |z| <= x";
    if (pair) ev = "witness found; max(|z| - x) = " + fmt((pair->z.cwiseAbs() - pair->x).maxCoeff());
    v.add("dominated eigenvector condition", holds_if(pair.has_value()), ev);
    if (!v.admissible()) return not_applicable(v);
    closure_conclusion(v, mu, spec.values(), "|lambda| e^{ik theta} in sigma(T) for all integers k", opt);
    return v;
}

TheoremVerdict verify_thm_4_1(const PositiveOperator& t, Scalar lambda, const HarnessOptions& opt) {
    TheoremVerdict v;
    v.theorem_id = "thm4.1";
    record_grid(v, opt);
    if (!positive_hypothesis(v, t)) return not_applicable(v);
    const SpectrumReport spec = spectrum(t);
    unit_radius_hypothesis(v, spec);
    peripheral_hypothesis(v, spec, lambda, opt);
    if (!v.admissible()) return not_applicable(v);
    const Scalar dir = lambda / std::abs(lambda);
    auto ray = try_profile(v, t, dir, std::nullopt, opt.grid, "growth profile along lambda");
    auto one = try_profile(v, t, Scalar(1), std::nullopt, opt.grid, "growth profile along 1");
    if (!ray || !one) return not_applicable(v);
    v.hypotheses.push_back(growth_like("||R(r_n lambda,T)|| ~ 1/(r_n - 1)", *ray, 1.0, opt.grid));
    v.hypotheses.push_back(growth_at_most("||R(r_n,T)|| = O(1/(r_n - 1)^2)", *one, 2.0, opt.grid));
    if (!v.admissible()) return not_applicable(v);
    closure_conclusion(v, dir, peripheral_values(spec), "lambda^k in sigma_per(T) for all integers k", opt);
    return v;
}

TheoremVerdict verify_cor_4_2(const PositiveOperator& t, Scalar lambda, const HarnessOptions& opt) {
    TheoremVerdict v;
    v.theorem_id = "cor4.2";
    record_grid(v, opt);
    if (!positive_hypothesis(v, t)) return not_applicable(v);
    const SpectrumReport spec = spectrum(t);
    unit_radius_hypothesis(v, spec);
    const EigenRecord* rec = peripheral_hypothesis(v, spec, lambda, opt);
    if (rec)
        v.add("lambda is a pole of the resolvent", Status::holds,
              "every eigenvalue of a matrix is a pole; order " + std::to_string(rec->index));
    if (!v.admissible()) return not_applicable(v);
    auto one = try_profile(v, t, Scalar(1), std::nullopt, opt.grid, "growth profile along 1");
    if (!one) return not_applicable(v);
    v.hypotheses.push_back(growth_at_most("||R(r_n,T)|| = O(1/(r_n - 1)^2)", *one, 2.0, opt.grid));
    if (!v.admissible()) return not_applicable(v);
    closure_conclusion(v, rec->value / std::abs(rec->value), peripheral_values(spec),
                       "lambda^k in sigma_per(T) for all integers k; pole order at lambda is 1 or 2", opt);
    const bool order_ok = rec->index <= 2;
    v.conclusion.witnesses.push_back("pole order at lambda: " + std::to_string(rec->index));
    if (!order_ok) v.conclusion.status = Status::fails;
    return v;
}

TheoremVerdict verify_kr_2_1(const PositiveOperator& t, Scalar lambda, Variant variant, const std::optional<Vector>& z,
                             const std::optional<RealVector>& functional, const HarnessOptions& opt) {
    TheoremVerdict v;
    v.theorem_id = "kr2.1" + to_string(variant);
    record_grid(v, opt);
    if (!positive_hypothesis(v, t)) return not_applicable(v);
    const SpectrumReport spec = spectrum(t);
    unit_radius_hypothesis(v, spec);
    const EigenRecord* rec = nullptr;
    if (variant != Variant::a) rec = peripheral_hypothesis(v, spec, lambda, opt);
    if (!v.admissible()) return not_applicable(v);
    auto one = try_profile(v, t, Scalar(1), std::nullopt, opt.grid, "growth profile along 1");
    if (!one) return not_applicable(v);

    if (variant == Variant::a) {
        v.hypotheses.push_back(growth_like("||R(r_n,T)|| ~ 1/(r_n - 1)", *one, 1.0, opt.grid));
        if (!v.admissible()) return not_applicable(v);
        const auto per = peripheral_values(spec);
        const CyclicityResult c = is_cyclic_set(per, spec.spectral_radius, opt.cyclicity);
        v.conclusion.statement = "sigma_per(T) is cyclic";
        v.conclusion.status = holds_if(c.cyclic);
        for (const auto& m : c.missing)
            v.conclusion.witnesses.push_back("missing power k = " + std::to_string(m.k) + " of " + fmt(m.element));
        v.conclusion.witnesses.push_back(std::to_string(per.size()) + " peripheral values");
        return v;
    }

    const Scalar dir = rec->value / std::abs(rec->value);
    if (variant == Variant::b) {
        auto ray = try_profile(v, t, dir, std::nullopt, opt.grid, "growth profile along lambda");
        if (!ray) return not_applicable(v);
        std::string ev = "insufficient data";
        bool ok = false;
        if (ray->fitted_exponent && one->fitted_exponent) {
            std::vector<double> a, b;
            for (std::size_t i = 0; i < ray->points.size() && i < one->points.size(); ++i) {
                const auto& p = ray->points[i];
                const auto& q = one->points[i];
                if (!p.retained || !q.retained || p.n < opt.grid.n_min + opt.grid.fit_skip) continue;
                a.push_back(p.norm);
                b.push_back(q.norm);
            }
            const double spread = ratio_spread(a, b);
            ok = std::fabs(*ray->fitted_exponent - *one->fitted_exponent) <= opt.grid.exponent_tol &&
                 spread <= opt.grid.spread_factor;
            ev = "exponents " + fmt(*ray->fitted_exponent) + " vs " + fmt(*one->fitted_exponent) + ", ratio spread " +
                 fmt(spread);
        }
        v.add("||R(r_n lambda,T)|| ~ ||R(r_n,T)||", holds_if(ok), ev);
        if (!v.admissible()) return not_applicable(v);
        closure_conclusion(v, dir, peripheral_values(spec), "lambda^k in sigma_per(T) for all integers k", opt);
        return v;
    }

    v.hypotheses.push_back(growth_at_most("||R(r_n,T)|| = O(1/(r_n - 1)^2)", *one, 2.0, opt.grid));
    const Vector zz = z ? *z : unit_eigenvector(t, rec->value);
    eigenvector_hypothesis(v, t, rec->value, zz, opt, false);
    const RealVector modz = modulus(zz);
    const RealMatrix tr = t.real();
    if (functional) {
        const RealVector& x = *functional;
        bool ok = x.size() == t.dim();
        std::string ev = "dimension mismatch";
        if (ok) {
            const RealVector gap = tr.transpose() * x - x;
            const double pairing = x.dot(modz);
            const double tol = 1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff()) * std::max(1.0, t.norm());
            ok = x.minCoeff() >= 0.0 && gap.minCoeff() >= -tol && pairing > 0.0;
            ev = "min x' = " + fmt(x.minCoeff()) + ", min(T'x' - x') = " + fmt(gap.minCoeff()) + ", <x',|z|> = " +
                 fmt(pairing);
        }
        v.add("0 <= x' <= T'x', <x',|z|> != 0", holds_if(ok), "supplied functional: " + ev);
    } else {
        const auto x = super_fixed_functional(tr, modz);
        // The search ranges over the whole dual cone of R^n, so an empty
        // result decides the question.
        v.add("0 <= x' <= T'x', <x',|z|> != 0", holds_if(x.has_value()),
              x ? "found by linear feasibility, <x',|z|> = " + fmt(x->dot(modz))
                : "no x' >= 0 with T'x' >= x' and <x',|z|> >= 1 exists (search over all of E'_+)");
    }
    if (!v.admissible()) return not_applicable(v);
    closure_conclusion(v, dir, peripheral_values(spec), "lambda^k in sigma_per(T) for all integers k", opt);
    return v;
}

TorsionResult torsion_similarity(const PositiveOperator& t, Scalar lambda, const Vector& z, std::uint64_t seed) {
    if (z.size() != t.dim()) throw PreconditionError("torsion_similarity: dimension mismatch");
    const double zn = vector_norm(z, t.norm_choice());
    for (Eigen::Index i = 0; i < z.size(); ++i)
        if (std::abs(z(i)) <= 1e-12 * zn)
            throw PreconditionError("torsion_similarity: |z_" + std::to_string(i + 1) +
                                    "| vanishes at working precision; T is not irreducible enough for a torsion");
    TorsionResult out;
    out.u = z.array() / z.array().abs().cast<Scalar>();
    const Matrix conj = out.u.conjugate().asDiagonal() * t.matrix() * out.u.asDiagonal();
    out.defect = operator_norm((conj - lambda * t.matrix()).eval(), t.norm_choice());
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    out.preserves_modulus = true;
    for (int s = 0; s < 8; ++s) {
        Vector w(z.size());
        for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = Scalar(2 * uniform() - 1, 2 * uniform() - 1);
        const Vector uw = out.u.asDiagonal() * w;
        if ((uw.cwiseAbs() - w.cwiseAbs()).cwiseAbs().maxCoeff() > 1e-14 * std::max(1.0, w.cwiseAbs().maxCoeff()))
            out.preserves_modulus = false;
    }
    return out;
}

namespace {

TheoremVerdict part(const std::string& id, const std::string& statement) {
    TheoremVerdict p;
    p.theorem_id = id;
    p.conclusion.statement = statement;
    return p;
}

void ws_hypothesis(TheoremVerdict& v, const PositiveOperator& t, const WeightingSchemeSpec& scheme) {
    try {
        const WsResult ws = ws_bound(t, scheme, scheme.index_set.size());
        const auto& b = ws.verdict;
        v.add("T is (WS)-bounded (" + scheme.name + ")", holds_if(b.verdict == BoundednessStatus::bounded_plausible),
              "sup " + fmt(b.sup_estimate) + ", trend " + fmt(b.trend) + ", verdict " + to_string(b.verdict) +
                  (b.note.empty() ? "" : "; " + b.note));
    } catch (const PreconditionError& e) {
        v.add("T is (WS)-bounded (" + scheme.name + ")", Status::fails, e.what());
    }
}

}  // namespace

TheoremVerdict verify_thm_5_8(const PositiveOperator& t, const WeightingSchemeSpec& scheme, const HarnessOptions& opt) {
    TheoremVerdict v;
    v.theorem_id = "thm5.8";
    record_grid(v, opt);
    v.grid["horizon"] = opt.horizon;
    v.grid["random_samples"] = opt.random_samples;
    v.grid["seed"] = static_cast<double>(opt.seed);
    if (!positive_hypothesis(v, t)) return not_applicable(v);
    const SpectrumReport spec = spectrum(t);
    unit_radius_hypothesis(v, spec);
    const IrreducibilityReport irr = irreducibility(t);
    v.add("T irreducible", holds_if(irr.is_irreducible), std::to_string(irr.sccs.size()) + " strongly connected components");
    v.add("peripheral point spectrum non-empty", Status::holds,
          "in finite dimensions every peripheral spectral value is an eigenvalue");
    if (!v.admissible()) return not_applicable(v);
    ws_hypothesis(v, t, scheme);
    if (!v.admissible()) return not_applicable(v);

    const Eigen::Index n = t.dim();
    const Norm norm = t.norm_choice();
    const auto per = spec.peripheral();
    const double tnorm = std::max(1.0, t.norm());

    {   // (a)
        TheoremVerdict p = part("thm5.8a", "T^k x does not tend to 0 for every x > 0 (finite horizon)");
        std::mt19937_64 rng(opt.seed);
        auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        std::vector<RealVector> samples;
        for (Eigen::Index i = 0; i < n; ++i) samples.push_back(RealVector::Unit(n, i));
        for (int s = 0; s < opt.random_samples; ++s) {
            RealVector x(n);
            for (Eigen::Index i = 0; i < n; ++i) x(i) = uniform() + 1e-3;
            samples.push_back(x / vector_norm(x, norm));
        }
        bool ok = true;
        double worst_min = std::numeric_limits<double>::infinity(), worst_trend = 0.0;
        const RealMatrix tr = t.real();
        const std::size_t skip = static_cast<std::size_t>(std::max(0, opt.horizon / 8 - 1));
        for (const auto& x0 : samples) {
            RealVector x = x0;
            std::vector<double> idx, norms;
            double mn = std::numeric_limits<double>::infinity();
            for (int k = 1; k <= opt.horizon; ++k) {
                x = tr * x;
                const double nk = vector_norm(x, norm);
                mn = std::min(mn, nk);
                idx.push_back(k);
                norms.push_back(nk);
            }
            const double trend = trend_slope(idx, norms, skip);
            worst_min = std::min(worst_min, mn);
            worst_trend = std::min(worst_trend, trend);
            if (!(mn > 1e-10) || trend < -0.1) ok = false;
        }
        p.conclusion.status = ok ? Status::one_sided : Status::fails;
        p.conclusion.witnesses.push_back(std::to_string(samples.size()) + " samples, min_k ||T^k x|| >= " +
                                         fmt(worst_min) + ", worst trend " + fmt(worst_trend));
        v.parts.push_back(std::move(p));
    }
    {   // (b)
        TheoremVerdict p = part("thm5.8b", "|z| in ker(1 - T) for every peripheral eigenvector z");
        bool ok = true;
        double worst = 0.0;
        for (const auto& rec : per) {
            const Matrix basis = eigenspace(t.matrix(), rec.value);
            for (Eigen::Index c = 0; c < basis.cols(); ++c) {
                Vector z = basis.col(c);
                z /= vector_norm(z, norm);
                const Vector mz = modulus(z).cast<Scalar>();
                const double d = vector_norm((t.matrix() * mz - mz).eval(), norm);
                worst = std::max(worst, d);
                if (d > 1e-8) ok = false;
            }
        }
        p.conclusion.status = holds_if(ok);
        p.conclusion.witnesses.push_back("max ||T|z| - |z||| = " + fmt(worst));
        p.tolerances["defect_tol"] = 1e-8;
        v.parts.push_back(std::move(p));
    }
    {   // (c)
        TheoremVerdict p = part("thm5.8c", "ker(1 - T) is one-dimensional and spanned by a strictly positive vector");
        const EigenRecord* one = spec.find(Scalar(1), std::max(spec.cluster_tol, 1e-9));
        bool ok = false;
        if (one) {
            const auto b = checked_real_eigenspace(t.real(), 1.0);
            if (b && b->cols() == 1 && one->geom_mult == 1) {
                RealVector x = b->col(0);
                if (x.sum() < 0) x = -x;
                ok = x.minCoeff() > 1e-14 * x.cwiseAbs().maxCoeff();
                p.conclusion.witnesses.push_back("min entry of the normalized fixed vector: " +
                                                 fmt(x.minCoeff() / x.cwiseAbs().maxCoeff()));
            } else {
                p.conclusion.witnesses.push_back("dim ker(1 - T) = " + std::to_string(one->geom_mult));
            }
        } else {
            p.conclusion.witnesses.push_back("1 is not an eigenvalue");
        }
        p.conclusion.status = holds_if(ok);
        v.parts.push_back(std::move(p));
    }
    {   // (d)
        TheoremVerdict p = part("thm5.8d", "T and lambda T are similar via a torsion for every peripheral eigenvalue");
        bool ok = true;
        for (const auto& rec : per) {
            try {
                const Vector z = unit_eigenvector(t, rec.value);
                const TorsionResult tor = torsion_similarity(t, rec.value, z, opt.seed);
                const bool good = tor.defect <= 1e-10 * tnorm && tor.preserves_modulus;
                ok = ok && good;
                p.conclusion.witnesses.push_back("lambda = " + fmt(rec.value) + ": defect " + fmt(tor.defect));
            } catch (const PreconditionError& e) {
                ok = false;
                p.conclusion.witnesses.push_back("lambda = " + fmt(rec.value) + ": " + e.what());
            }
        }
        p.tolerances["defect_tol"] = 1e-10 * tnorm;
        p.conclusion.status = holds_if(ok);
        v.parts.push_back(std::move(p));
    }
    {   // (e)
        TheoremVerdict p = part("thm5.8e", "the peripheral point spectrum is the group of p-th roots of unity");
        const auto q = static_cast<int>(per.size());
        bool ok = q > 0;
        for (const auto& rec : per) {
            const double k = std::arg(rec.value) / (2.0 * std::numbers::pi) * q;
            const Scalar root = std::polar(1.0, 2.0 * std::numbers::pi * std::round(k) / q);
            if (std::abs(rec.value - root) > 1e-8) ok = false;
        }
        for (int k = 0; k < q && ok; ++k) {
            const Scalar root = std::polar(1.0, 2.0 * std::numbers::pi * k / q);
            if (!spec.find(root, 1e-8)) ok = false;
        }
        p.conclusion.witnesses.push_back("group order " + std::to_string(q) + ", graph period " +
                                         std::to_string(irr.period));
        if (q != irr.period) ok = false;
        p.tolerances["root_tol"] = 1e-8;
        p.conclusion.status = holds_if(ok);
        v.parts.push_back(std::move(p));
    }
    {   // (f)
        TheoremVerdict p = part("thm5.8f", "every peripheral eigenvalue is algebraically simple");
        bool ok = true;
        for (const auto& rec : per) {
            if (rec.alg_mult != 1 || rec.geom_mult != 1 || rec.index != 1) ok = false;
            p.conclusion.witnesses.push_back("lambda = " + fmt(rec.value) + ": alg " + std::to_string(rec.alg_mult) +
                                             ", geom " + std::to_string(rec.geom_mult) + ", index " +
                                             std::to_string(rec.index));
        }
        p.conclusion.status = holds_if(ok);
        v.parts.push_back(std::move(p));
    }
    {   // (g)
        TheoremVerdict p = part("thm5.8g", "1 is the only eigenvalue with a positive eigenvector");
        bool ok = true, one_found = false;
        const RealMatrix tr = t.real();
        for (const auto& rec : spec.records) {
            if (std::fabs(rec.value.imag()) > std::max(spec.cluster_tol, 1e-12)) continue;
            if (!nonnegative_eigenvector(tr, rec.value.real())) continue;
            if (std::abs(rec.value - Scalar(1)) <= std::max(spec.cluster_tol, 1e-9)) {
                one_found = true;
            } else {
                ok = false;
                p.conclusion.witnesses.push_back("positive eigenvector for " + fmt(rec.value));
            }
        }
        if (!one_found) p.conclusion.witnesses.push_back("no positive eigenvector for 1");
        p.conclusion.status = holds_if(ok && one_found);
        v.parts.push_back(std::move(p));
    }

    v.conclusion.statement = "assertions (a) through (g)";
    bool all = true;
    for (const auto& p : v.parts) {
        if (p.conclusion.status == Status::fails) all = false;
        v.conclusion.witnesses.push_back(p.theorem_id + ": " + to_string(p.conclusion.status));
    }
    v.conclusion.status = holds_if(all);
    return v;
}

TheoremVerdict verify_appendix_A1(const PositiveOperator& t, const CoordinateIdeal& f, const HarnessOptions& opt) {
    TheoremVerdict v;
    v.theorem_id = "appA1";
    record_grid(v, opt);
    const auto viol = invariance_violation(t.matrix(), f);
    v.add("F is T-invariant", holds_if(!viol && f.ambient_dim() == static_cast<std::size_t>(t.dim())),
          viol ? "T(" + std::to_string(viol->first + 1) + "," + std::to_string(viol->second + 1) + ") != 0"
               : "F = " + f.to_string());
    if (!v.admissible()) return not_applicable(v);

    const InducedPair pair = induce(t, f);
    const SpectrumReport spec = spectrum(t);
    const double r = spec.spectral_radius;
    const double tn = t.norm();
    bool ok = true;
    auto check = [&](bool cond, const std::string& what) {
        v.conclusion.witnesses.push_back((cond ? "ok: " : "FAILED: ") + what);
        ok = ok && cond;
    };
    const double norm_tol = 1e-12 * std::max(1.0, tn);
    const double rad_tol = std::max(spec.cluster_tol, 1e-9);
    const auto values = spec.values();
    auto near_spectrum = [&](Scalar mu) {
        return std::any_of(values.begin(), values.end(), [&](Scalar s) { return std::abs(s - mu) <= 1e-7; });
    };
    for (const auto* part_op : {&pair.restriction, &pair.quotient}) {
        const std::string label = part_op == &pair.restriction ? "restriction" : "quotient";
        if (part_op->dim() == 0) {
            v.conclusion.witnesses.push_back(label + " is the zero space");
            continue;
        }
        const SpectrumReport ps = spectrum(*part_op);
        check(part_op->norm() <= tn + norm_tol, "||T_" + label + "|| = " + fmt(part_op->norm()) + " <= ||T|| = " + fmt(tn));
        check(ps.spectral_radius <= r + rad_tol, "r(T_" + label + ") = " + fmt(ps.spectral_radius) + " <= r(T) = " + fmt(r));
        for (const auto& rec : ps.records) {
            if (std::fabs(std::abs(rec.value) - r) > 1e-8 * std::max(1.0, r)) continue;
            check(near_spectrum(rec.value), label + " peripheral value " + fmt(rec.value) + " lies in sigma(T)");
        }
    }
    const Scalar mu(2.0 * std::max(r, 0.5) + 1.0, 0.5);
    const ResolventResult full = resolvent(t, mu, &spec);
    double worst = 0.0;
    auto block = [&](const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
        Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    m(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
        return out;
    };
    if (pair.restriction.dim() > 0) {
        const Matrix rr = resolvent(pair.restriction, mu).value;
        const Matrix diff = block(full.value, pair.ideal_indices, pair.ideal_indices) - rr;
        worst = std::max(worst, operator_norm(diff, t.norm_choice()) / std::max(1.0, operator_norm(rr, t.norm_choice())));
    }
    if (pair.quotient.dim() > 0) {
        const Matrix rq = resolvent(pair.quotient, mu).value;
        const Matrix diff = block(full.value, pair.quotient_indices, pair.quotient_indices) - rq;
        worst = std::max(worst, operator_norm(diff, t.norm_choice()) / std::max(1.0, operator_norm(rq, t.norm_choice())));
    }
    if (pair.restriction.dim() > 0 && pair.quotient.dim() > 0) {
        const Matrix leak = block(full.value, pair.quotient_indices, pair.ideal_indices);
        worst = std::max(worst, operator_norm(leak, t.norm_choice()) /
                                    std::max(1.0, operator_norm(full.value, t.norm_choice())));
    }
    v.tolerances["commutation_tol"] = 1e-9;
    v.tolerances["containment_tol"] = 1e-7;
    check(worst <= 1e-9, "resolvent commutation residual " + fmt(worst) + " at mu = " + fmt(mu));
    v.conclusion.statement =
        "norm and spectral radius bounds, peripheral values of T_| and T_/ in sigma(T), R(mu,T)_| = R(mu,T_|)";
    v.conclusion.status = holds_if(ok);
    return v;
}

TheoremVerdict verify_cor_5_6(const PositiveOperator& t, const WeightingSchemeSpec& scheme, const HarnessOptions& opt) {
    TheoremVerdict v;
    v.theorem_id = "cor5.6";
    record_grid(v, opt);
    if (!positive_hypothesis(v, t)) return not_applicable(v);
    const SpectrumReport spec = spectrum(t);
    unit_radius_hypothesis(v, spec);
    if (!v.admissible()) return not_applicable(v);
    ws_hypothesis(v, t, scheme);
    if (!v.admissible()) return not_applicable(v);
    const auto per = peripheral_values(spec);
    const CyclicityResult c = is_cyclic_set(per, spec.spectral_radius, opt.cyclicity);
    v.conclusion.statement = "sigma_per(T) is cyclic";
    v.conclusion.status = holds_if(c.cyclic);
    v.conclusion.witnesses.push_back(std::to_string(per.size()) + " peripheral values, powers checked up to |k| <= " +
                                     std::to_string(c.k_max));
    for (const auto& m : c.missing)
        v.conclusion.witnesses.push_back("missing power k = " + std::to_string(m.k) + " of " + fmt(m.element));
    return v;
}

}  // namespace perron
