#include "perron/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "perron/parallel.hpp"

namespace perron {

std::string to_string(GrowthClass c) {
    switch (c) {
        case GrowthClass::minimal: return "minimal";
        case GrowthClass::maximal: return "maximal";
        case GrowthClass::intermediate: return "intermediate";
    }
    return "intermediate";
}

std::string to_string(BoundednessKind k) {
    switch (k) {
        case BoundednessKind::power: return "power";
        case BoundednessKind::cesaro: return "cesaro";
        case BoundednessKind::abel: return "abel";
        case BoundednessKind::ws: return "ws";
    }
    return "ws";
}

std::string to_string(BoundednessStatus s) {
    switch (s) {
        case BoundednessStatus::bounded_plausible: return "bounded_plausible";
        case BoundednessStatus::unbounded_detected: return "unbounded_detected";
        case BoundednessStatus::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] > 0 && y[i] > 0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 2) return 0.0;
    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    return sxx > 0 ? sxy / sxx : 0.0;
}

double ratio_spread(const std::vector<double>& a, const std::vector<double>& b) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        const double q = a[i] / b[i];
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    if (!(lo > 0) || !std::isfinite(hi)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

std::vector<const GrowthPoint*> GrowthProfile::fit_points() const {
    std::vector<const GrowthPoint*> out;
    for (const auto& p : points)
        if (p.retained && p.n >= grid.n_min + grid.fit_skip) out.push_back(&p);
    return out;
}

namespace {

void require_unit_radius(const SpectrumReport& s, const char* op) {
    const double tol = std::max(s.cluster_tol, 1e-9);
    if (std::fabs(s.spectral_radius - 1.0) > tol) {
        std::ostringstream os;
        os.precision(17);
        os << op << " requires r(T) = 1, got r(T) = " << s.spectral_radius;
        throw PreconditionError(os.str());
    }
}

Scalar unit_direction(Scalar lambda, const char* op) {
    if (std::fabs(std::abs(lambda) - 1.0) > 1e-6)
        throw PreconditionError(std::string(op) + " requires |lambda| = 1");
    return lambda / std::abs(lambda);
}

}  // namespace

GrowthProfile growth_profile(const PositiveOperator& t, Scalar lambda, const std::optional<Vector>& z,
                             const GrowthGrid& grid) {
    const SpectrumReport spec = spectrum(t);
    require_unit_radius(spec, "growth_profile");
    GrowthProfile prof;
    prof.direction = unit_direction(lambda, "growth_profile");
    prof.grid = grid;
    const bool along_one = std::abs(prof.direction - Scalar(1)) == 0.0;
    std::optional<Vector> modz;
    if (z) modz = modulus(*z).cast<Scalar>();

    const std::size_t count = grid.n_max >= grid.n_min ? static_cast<std::size_t>(grid.n_max - grid.n_min + 1) : 0;
    prof.points.resize(count);
    parallel_for(count, [&](std::size_t i) {
        GrowthPoint& p = prof.points[i];
        p.n = grid.n_min + static_cast<int>(i);
        p.r = 1.0 + std::ldexp(1.0, -p.n);
        const ResolventResult ray = resolvent(t, p.r * prof.direction, &spec);
        p.norm = operator_norm(ray.value, t.norm_choice());
        p.residual = ray.residual;
        p.retained = ray.within_bound;
        if (modz) {
            const ResolventResult at_r = along_one ? ray : resolvent(t, Scalar(p.r), &spec);
            p.directed = vector_norm(at_r.value * *modz, t.norm_choice());
            p.residual = std::max(p.residual, at_r.residual);
            p.retained = p.retained && at_r.within_bound;
        }
    });

    const auto fit = prof.fit_points();
    if (static_cast<int>(fit.size()) < grid.min_fit_points) {
        prof.note = "only " + std::to_string(fit.size()) + " residual-clean points in the fit window (need " +
                    std::to_string(grid.min_fit_points) + "); exponent not fitted";
        return prof;
    }
    std::vector<double> x, y, yd;
    for (const auto* p : fit) {
        x.push_back(p->r - 1.0);
        y.push_back(p->norm);
        if (p->directed) yd.push_back(*p->directed);
    }
    prof.fitted_exponent = -log_log_slope(x, y);
    if (modz) prof.directed_exponent = -log_log_slope(x, yd);
    return prof;
}

EstimateCheck check_estimate_2_1(const PositiveOperator& t, Scalar lambda, const GrowthProfile& profile) {
    const SpectrumReport spec = spectrum(t);
    require_unit_radius(spec, "check_estimate_2_1");
    const Scalar dir = unit_direction(lambda, "check_estimate_2_1");
    bool peripheral = false;
    for (const auto& r : spec.peripheral())
        if (std::abs(r.value - dir) <= 1e-6) peripheral = true;
    if (!peripheral) throw PreconditionError("check_estimate_2_1 requires lambda in the peripheral spectrum");

    const bool along_one = std::abs(dir - Scalar(1)) == 0.0;
    EstimateCheck chk;
    for (const auto& p : profile.points) {
        if (!p.retained) continue;
        EstimatePoint e;
        e.n = p.n;
        e.lower = 1.0 / (p.r - 1.0);
        e.along_lambda = p.norm;
        double residual = p.residual;
        if (along_one) {
            e.along_one = p.norm;
        } else {
            const ResolventResult one = resolvent(t, Scalar(p.r), &spec);
            if (!one.within_bound) continue;
            e.along_one = operator_norm(one.value, t.norm_choice());
            residual = std::max(residual, one.residual);
        }
        e.slack = 1e-8 + residual;
        e.lower_ok = e.lower <= e.along_lambda * (1.0 + e.slack);
        e.upper_ok = e.along_lambda <= e.along_one * (1.0 + e.slack);
        if (!e.lower_ok) ++chk.violations;
        if (!e.upper_ok) ++chk.violations;
        chk.points.push_back(e);
    }
    chk.holds = chk.violations == 0 && !chk.points.empty();
    return chk;
}

GrowthClassification classify_eigenvector_growth(const PositiveOperator& t, Scalar lambda, const Vector& z,
                                                 const GrowthGrid& grid) {
    const double tn = std::max(1.0, t.norm());
    if ((t.matrix() * z - lambda * z).norm() > 1e-8 * tn * std::max(1.0, z.norm()))
        throw PreconditionError("classify_eigenvector_growth: z is not an eigenvector for lambda");
    if (std::fabs(vector_norm(z, t.norm_choice()) - 1.0) > 1e-8)
        throw PreconditionError("classify_eigenvector_growth: z must have norm 1");
    unit_direction(lambda, "classify_eigenvector_growth");

    GrowthClassification c;
    c.profile = growth_profile(t, Scalar(1), z, grid);
    const auto fit = c.profile.fit_points();
    if (!c.profile.fitted_exponent || !c.profile.directed_exponent) {
        c.note = "insufficient residual-clean data: " + c.profile.note;
        return c;
    }
    std::vector<double> directed, inv, full;
    for (const auto* p : fit) {
        directed.push_back(*p->directed);
        inv.push_back(1.0 / (p->r - 1.0));
        full.push_back(p->norm);
    }
    c.minimal_spread = ratio_spread(directed, inv);
    c.maximal_spread = ratio_spread(directed, full);
    c.minimal = std::fabs(*c.profile.directed_exponent - 1.0) <= grid.exponent_tol && c.minimal_spread <= grid.spread_factor;
    c.maximal = std::fabs(*c.profile.directed_exponent - *c.profile.fitted_exponent) <= grid.exponent_tol &&
                c.maximal_spread <= grid.spread_factor;
    if (c.maximal) {
        c.label = GrowthClass::maximal;
        if (c.minimal) c.note = "degenerate: growth is simultaneously minimal and maximal";
    } else if (c.minimal) {
        c.label = GrowthClass::minimal;
    } else {
        c.label = GrowthClass::intermediate;
    }
    return c;
}

BoundednessStatus classify_trend(double sup, double trend) {
    if (!std::isfinite(sup) || !std::isfinite(trend) || trend >= 0.5) return BoundednessStatus::unbounded_detected;
    if (trend <= 0.1) return BoundednessStatus::bounded_plausible;
    return BoundednessStatus::inconclusive;
}

double trend_slope(const std::vector<double>& idx, const std::vector<double>& norms, std::size_t skip) {
    if (idx.size() > skip + 1) {
        std::vector<double> x(idx.begin() + static_cast<long>(skip), idx.end());
        std::vector<double> y(norms.begin() + static_cast<long>(skip), norms.end());
        return log_log_slope(x, y);
    }
    return log_log_slope(idx, norms);
}

BoundednessVerdict abel_bound(const PositiveOperator& t, int horizon) {
    const SpectrumReport spec = spectrum(t);
    require_unit_radius(spec, "abel_bound");
    BoundednessVerdict v;
    v.kind = BoundednessKind::abel;
    v.horizon = horizon;
    const int n_min = 2;
    const std::size_t count = horizon >= n_min ? static_cast<std::size_t>(horizon - n_min + 1) : 0;
    std::vector<double> mags(count), norms(count);
    std::vector<char> keep(count, 0);
    parallel_for(count, [&](std::size_t i) {
        const int n = n_min + static_cast<int>(i);
        const double r = 1.0 + std::ldexp(1.0, -n);
        const ResolventResult res = resolvent(t, Scalar(r), &spec);
        mags[i] = 1.0 / (r - 1.0);
        norms[i] = (r - 1.0) * operator_norm(res.value, t.norm_choice());
        keep[i] = res.within_bound ? 1 : 0;
    });
    for (std::size_t i = 0; i < count; ++i) {
        if (!keep[i]) continue;
        v.index_magnitudes.push_back(mags[i]);
        v.norms.push_back(norms[i]);
    }
    if (v.norms.empty()) {
        v.note = "no residual-clean grid points";
        return v;
    }
    v.sup_estimate = *std::max_element(v.norms.begin(), v.norms.end());
    v.trend = trend_slope(v.index_magnitudes, v.norms, 3);
    v.verdict = classify_trend(v.sup_estimate, v.trend);
    return v;
}

PowerCesaroResult power_and_cesaro(const PositiveOperator& t, int horizon) {
    PowerCesaroResult out;
    out.power.kind = BoundednessKind::power;
    out.cesaro.kind = BoundednessKind::cesaro;
    out.power.horizon = out.cesaro.horizon = horizon;
    const Norm norm = t.norm_choice();
    const Eigen::Index n = t.dim();
    Matrix p = Matrix::Identity(n, n);
    Matrix sum = p;
    out.power.sup_estimate = operator_norm(p, norm);
    out.cesaro.sup_estimate = out.power.sup_estimate;
    for (int j = 1; j <= horizon; ++j) {
        p = p * t.matrix();
        sum += p;
        const double pn = operator_norm(p, norm);
        const double cn = operator_norm(sum, norm) / static_cast<double>(j + 1);
        out.power.index_magnitudes.push_back(j);
        out.power.norms.push_back(pn);
        out.cesaro.index_magnitudes.push_back(j + 1);
        out.cesaro.norms.push_back(cn);
        out.power.sup_estimate = std::max(out.power.sup_estimate, pn);
        out.cesaro.sup_estimate = std::max(out.cesaro.sup_estimate, cn);
        out.sup_power_over_j = std::max(out.sup_power_over_j, pn / j);
        if (!std::isfinite(pn)) {
            out.power.sup_estimate = out.cesaro.sup_estimate = out.sup_power_over_j = pn;
            break;
        }
    }
    const std::size_t skip = static_cast<std::size_t>(std::max(0, horizon / 8 - 1));
    for (BoundednessVerdict* v : {&out.power, &out.cesaro}) {
        v->trend = trend_slope(v->index_magnitudes, v->norms, skip);
        v->verdict = classify_trend(v->sup_estimate, v->trend);
        if (!std::isfinite(v->sup_estimate)) v->note = "norms overflowed";
    }
    return out;
}

}  // namespace perron
