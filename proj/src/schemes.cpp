#include "perron/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "perron/parallel.hpp"

namespace perron {

namespace {

// Neumaier-compensated accumulation of a complex matrix, real and imaginary
// parts kept as separate arrays.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(Eigen::Index n)
        : re_(Eigen::ArrayXXd::Zero(n, n)), im_(re_), cre_(re_), cim_(re_) {}

    void add(const Matrix& m, double weight) {
        step(re_, cre_, weight * m.real().array());
        step(im_, cim_, weight * m.imag().array());
    }

    Matrix value() const {
        Matrix out(re_.rows(), re_.cols());
        out.real() = (re_ + cre_).matrix();
        out.imag() = (im_ + cim_).matrix();
        return out;
    }

private:
    static void step(Eigen::ArrayXXd& s, Eigen::ArrayXXd& c, const Eigen::ArrayXXd& y) {
        const Eigen::ArrayXXd t = s + y;
        c += (s.abs() >= y.abs()).select((s - t) + y, (y - t) + s);
        s = t;
    }

    Eigen::ArrayXXd re_, im_, cre_, cim_;
};

std::vector<double> dyadic_levels(int from, int to, double offset) {
    std::vector<double> out;
    for (int m = from; m <= to; ++m) out.push_back(std::ldexp(1.0, m) + offset);
    return out;
}

}  // namespace

Matrix matrix_power(const Matrix& t, unsigned long long j) {
    Matrix result = Matrix::Identity(t.rows(), t.cols());
    Matrix base = t;
    while (j > 0) {
        if (j & 1ULL) result = result * base;
        j >>= 1;
        if (j > 0) base = base * base;
    }
    return result;
}

Matrix geometric_power_sum(const Matrix& t, unsigned long long count) {
    const Eigen::Index n = t.rows();
    Matrix sum = Matrix::Zero(n, n);   // sum_{k < m} T^k
    Matrix power = Matrix::Identity(n, n);   // T^m
    int top = 63;
    while (top >= 0 && !((count >> top) & 1ULL)) --top;
    for (int b = top; b >= 0; --b) {
        sum = sum + power * sum;
        power = power * power;
        if ((count >> b) & 1ULL) {
            sum += power;
            power = power * t;
        }
    }
    return sum;
}

WeightingSchemeSpec cesaro_scheme(int levels) {
    WeightingSchemeSpec s;
    s.name = "cesaro";
    s.index_set = dyadic_levels(0, levels, -1.0);
    s.coeff = [](double j, long long k) { return static_cast<double>(k) <= j ? 1.0 / (j + 1.0) : 0.0; };
    s.tail_bound = [](double j, long long K) {
        return static_cast<double>(K) >= j ? 0.0 : (j - static_cast<double>(K)) / (j + 1.0);
    };
    s.magnitude = [](double j) { return j + 1.0; };
    s.closed_form = [](const PositiveOperator& t, const SpectrumReport&, double j) -> Matrix {
        const auto count = static_cast<unsigned long long>(j) + 1ULL;
        return geometric_power_sum(t.matrix(), count) / (j + 1.0);
    };
    return s;
}

WeightingSchemeSpec abel_scheme(int n_max) {
    WeightingSchemeSpec s;
    s.name = "abel";
    for (int n = 2; n <= n_max; ++n) s.index_set.push_back(1.0 + std::ldexp(1.0, -n));
    s.coeff = [](double r, long long k) { return (r - 1.0) * std::pow(r, -static_cast<double>(k + 1)); };
    s.tail_bound = [](double r, long long K) { return std::pow(r, -static_cast<double>(K + 1)); };
    s.magnitude = [](double r) { return 1.0 / (r - 1.0); };
    s.closed_form = [](const PositiveOperator& t, const SpectrumReport& spec, double r) -> Matrix {
        const ResolventResult res = resolvent(t, Scalar(r), &spec);
        return (r - 1.0) * res.value;
    };
    return s;
}

WeightingSchemeSpec power_scheme(int levels) {
    WeightingSchemeSpec s;
    s.name = "power";
    s.index_set = dyadic_levels(0, levels, 0.0);
    s.coeff = [](double j, long long k) { return static_cast<double>(k) == j ? 1.0 : 0.0; };
    s.tail_bound = [](double j, long long K) { return static_cast<double>(K) >= j ? 0.0 : 1.0; };
    s.magnitude = [](double j) { return j; };
    s.closed_form = [](const PositiveOperator& t, const SpectrumReport&, double j) -> Matrix {
        return matrix_power(t.matrix(), static_cast<unsigned long long>(j));
    };
    return s;
}

WeightingSchemeSpec constant_scheme(int count) {
    WeightingSchemeSpec s;
    s.name = "constant";
    for (int j = 0; j < count; ++j) s.index_set.push_back(j);
    s.coeff = [](double, long long k) { return k == 0 ? 1.0 : 0.0; };
    s.tail_bound = [](double, long long) { return 0.0; };
    s.magnitude = [](double j) { return j + 1.0; };
    s.closed_form = [](const PositiveOperator& t, const SpectrumReport&, double) -> Matrix {
        return Matrix::Identity(t.dim(), t.dim());
    };
    return s;
}

WeightingSchemeSpec scheme_by_name(const std::string& name) {
    if (name == "cesaro") return cesaro_scheme();
    if (name == "abel") return abel_scheme();
    if (name == "power") return power_scheme();
    if (name == "constant") return constant_scheme();
    throw PreconditionError("unknown weighting scheme '" + name + "' (expected cesaro, abel, power or constant)");
}

SchemeValidation validate_scheme(const WeightingSchemeSpec& s, std::size_t j_prefix, long long k_prefix) {
    SchemeValidation v;
    const std::size_t count = std::min(j_prefix, s.index_set.size());
    const long long budget = 1LL << 24;
    for (std::size_t idx = 0; idx < count; ++idx) {
        const double j = s.index_set[idx];
        double sum = 0.0, comp = 0.0;
        long long next = 0;
        long long K = std::max<long long>(k_prefix - 1, 0);
        double tail = 0.0;
        for (;;) {
            for (; next <= K; ++next) {
                const double a = s.coeff(j, next);
                if (!(a >= 0.0)) v.nonnegative = false;
                const double y = a - comp;
                const double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            tail = s.tail_bound(j, K);
            if (tail <= 1e-12 || K >= budget) break;
            K = 2 * K + 1;
        }
        v.sum_errors.push_back(std::fabs(sum - 1.0));
        if (tail > 1e-12) {
            v.sums_to_one = false;
            v.note += "tail bound not below 1e-12 within the term budget at index " + std::to_string(idx) + "; ";
        } else if (sum > 1.0 + 1e-12 || sum + tail < 1.0 - 1e-12) {
            v.sums_to_one = false;
        }
    }
    const long long k_check = std::min<long long>(k_prefix - 1, 16);
    for (long long k = 0; k <= k_check && count > 0; ++k) {
        double peak = 0.0;
        for (std::size_t idx = 0; idx < count; ++idx) peak = std::max(peak, s.coeff(s.index_set[idx], k));
        const double last = s.coeff(s.index_set[count - 1], k);
        if (peak > 0.0 && last > 0.5 * peak) {
            v.decays = false;
            v.note += "coefficient " + std::to_string(k) + " does not decay along the index prefix; ";
            break;
        }
    }
    if (count < 2) {
        v.decays = false;
        v.note += "index prefix too short to judge decay; ";
    }
    return v;
}

namespace {

struct Envelope {
    int degree = 0;
    double constant = 0.0;
    bool certified = true;
};

Envelope power_envelope(const PositiveOperator& t, const SpectrumReport& spec, const WsOptions& opt) {
    Envelope e;
    e.degree = std::max(0, spec.max_peripheral_index() - 1);
    std::vector<double> ks, norms;
    Matrix p = Matrix::Identity(t.dim(), t.dim());
    for (int k = 0; k <= opt.envelope_probe; ++k) {
        const double nk = operator_norm(p, t.norm_choice());
        e.constant = std::max(e.constant, nk / std::pow(k + 1.0, e.degree));
        if (k >= opt.envelope_probe / 2) {
            ks.push_back(k + 1.0);
            norms.push_back(nk);
        }
        p = p * t.matrix();
    }
    e.constant *= opt.envelope_safety;
    // Growth faster than the index allows means the envelope is not trustworthy.
    if (!std::isfinite(e.constant) || log_log_slope(ks, norms) > e.degree + 0.5) e.certified = false;
    return e;
}

// Bound on sum_{k > K} a_{j,k} C (k+1)^d over dyadic blocks (K_b, K_{b+1}].
double certified_tail(const WeightingSchemeSpec& s, double j, long long K, const Envelope& e) {
    double total = 0.0;
    long long kb = K;
    for (int b = 0; b < 62; ++b) {
        const double tail = s.tail_bound(j, kb);
        if (tail <= 0.0) return total;
        const double term = e.constant * std::pow(2.0 * (static_cast<double>(kb) + 1.0), e.degree) * tail;
        total += term;
        if (term <= 1e-18 * total) return total;
        if (kb > (1LL << 60)) break;
        kb = 2 * kb + 1;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

WsResult ws_bound(const PositiveOperator& t, const WeightingSchemeSpec& s, std::size_t j_prefix,
                  const WsOptions& opt) {
    const SpectrumReport spec = spectrum(t);
    if (std::fabs(spec.spectral_radius - 1.0) > std::max(spec.cluster_tol, 1e-9)) {
        std::ostringstream os;
        os.precision(17);
        os << "ws_bound requires r(T) = 1, got r(T) = " << spec.spectral_radius;
        throw PreconditionError(os.str());
    }
    WsResult out;
    BoundednessVerdict& v = out.verdict;
    v.kind = BoundednessKind::ws;
    v.scheme = s.name;
    const std::size_t count = std::min(j_prefix, s.index_set.size());
    v.horizon = static_cast<int>(count);

    const Envelope env = power_envelope(t, spec, opt);
    out.envelope_degree = env.degree;
    out.envelope_constant = env.constant;

    // Truncation order per index; -1 selects the closed form.
    std::vector<long long> order(count, -1);
    std::vector<double> tails(count, 0.0);
    bool uncertified = false;
    for (std::size_t i = 0; i < count; ++i) {
        const double j = s.index_set[i];
        long long K = 15;
        double tail = certified_tail(s, j, K, env);
        while (tail > opt.tail_tol && K <= opt.term_budget) {
            K = 2 * K + 1;
            tail = certified_tail(s, j, K, env);
        }
        if (env.certified && tail <= opt.tail_tol && K + 1 <= opt.term_budget) {
            order[i] = K;
            tails[i] = tail;
        } else if (!s.closed_form) {
            uncertified = true;
        }
    }

    out.evaluations.resize(count);
    const long long k_max = order.empty() ? -1 : *std::max_element(order.begin(), order.end());
    if (k_max >= 0) {
        std::vector<CompensatedSum> sums;
        for (std::size_t i = 0; i < count; ++i) sums.emplace_back(order[i] >= 0 ? t.dim() : 0);
        Matrix p = Matrix::Identity(t.dim(), t.dim());
        for (long long k = 0; k <= k_max; ++k) {
            for (std::size_t i = 0; i < count; ++i) {
                if (order[i] < k) continue;
                const double a = s.coeff(s.index_set[i], k);
                if (a != 0.0) sums[i].add(p, a);
            }
            if (k < k_max) p = p * t.matrix();
        }
        for (std::size_t i = 0; i < count; ++i) {
            if (order[i] < 0) continue;
            out.evaluations[i].value = sums[i].value();
            out.evaluations[i].terms = order[i] + 1;
            out.evaluations[i].tail_bound = tails[i];
        }
    }
    if (s.closed_form) {
        parallel_for(count, [&](std::size_t i) {
            if (order[i] >= 0) return;
            out.evaluations[i].value = s.closed_form(t, spec, s.index_set[i]);
        });
    }

    v.certified = env.certified && !uncertified;
    for (std::size_t i = 0; i < count; ++i) {
        if (order[i] < 0 && !s.closed_form) continue;
        v.index_magnitudes.push_back(s.magnitude(s.index_set[i]));
        v.norms.push_back(operator_norm(out.evaluations[i].value, t.norm_choice()));
    }
    if (!v.certified) {
        v.verdict = BoundednessStatus::inconclusive;
        v.note = env.certified ? "tail not certifiable within the term budget"
                               : "power growth exceeds the degree allowed by the peripheral index; tail not certified";
        if (!v.norms.empty()) v.sup_estimate = *std::max_element(v.norms.begin(), v.norms.end());
        return out;
    }
    if (v.norms.empty()) {
        v.note = "empty index prefix";
        return out;
    }
    v.sup_estimate = *std::max_element(v.norms.begin(), v.norms.end());
    v.trend = trend_slope(v.index_magnitudes, v.norms, 3);
    v.verdict = classify_trend(v.sup_estimate, v.trend);
    return out;
}

WsIdeal ws_invariant_ideal(const PositiveOperator& t, const WeightingSchemeSpec& s, std::size_t j_prefix) {
    if (j_prefix == 0) j_prefix = s.index_set.size();
    const WsResult bound = ws_bound(t, s, j_prefix);
    if (bound.verdict.verdict != BoundednessStatus::bounded_plausible)
        throw PreconditionError("ws_invariant_ideal requires a bounded_plausible ws_bound verdict for scheme '" +
                                s.name + "', got " + to_string(bound.verdict.verdict));
    WsIdeal out;
    const auto n = static_cast<std::size_t>(t.dim());
    if (bound.evaluations.size() < 2) {
        out.note = "index prefix too short to detect limits";
        return out;
    }
    const Matrix& prev = bound.evaluations[bound.evaluations.size() - 2].value;
    const Matrix& last = bound.evaluations.back().value;
    const Norm norm = t.norm_choice();
    std::vector<std::size_t> zero_limit;
    // Cesaro and Abel means decay only like 1/j, so a column also counts as
    // tending to 0 when its norm falls with log-log slope <= -1/2 over the
    // last few indices.
    const std::size_t tail = std::min<std::size_t>(4, bound.evaluations.size());
    std::vector<double> mags;
    for (std::size_t e = bound.evaluations.size() - tail; e < bound.evaluations.size(); ++e)
        mags.push_back(s.magnitude(s.index_set[e]));
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<Eigen::Index>(i);
        const double nb = vector_norm(last.col(c), norm);
        const double na = vector_norm(prev.col(c), norm);
        out.limit_norms.push_back(nb);
        std::vector<double> norms;
        for (std::size_t e = bound.evaluations.size() - tail; e < bound.evaluations.size(); ++e)
            norms.push_back(vector_norm(bound.evaluations[e].value.col(c), norm));
        const bool decaying = nb < na && nb > 0.0 && log_log_slope(mags, norms) <= -0.5;
        if ((nb <= 1e-8 && nb <= na) || decaying) {
            zero_limit.push_back(i);
        } else if (vector_norm((last.col(c) - prev.col(c)).eval(), norm) > 1e-6 * nb) {
            out.non_convergent.push_back(i);
        }
    }
    out.ideal = CoordinateIdeal(zero_limit, n);
    out.converged = out.non_convergent.empty();
    if (!out.converged) {
        out.note = "f_j(T) e_i did not stabilize over the prefix; properties not asserted";
        return out;
    }

    out.invariant = is_invariant(t.matrix(), out.ideal);

    const SpectrumReport spec = spectrum(t);
    out.eigenvectors_ok = true;
    for (const auto& rec : spec.peripheral()) {
        const Matrix basis = eigenspace(t.matrix(), rec.value);
        for (Eigen::Index c = 0; c < basis.cols(); ++c) {
            const Vector z = basis.col(c);
            const double zn = vector_norm(z, norm);
            const Vector mz = modulus(z).cast<Scalar>();
            const Vector defect = t.matrix() * mz - mz;
            if (out.ideal.contains(z, 1e-8 * zn) || !out.ideal.contains(defect, 1e-8 * zn)) out.eigenvectors_ok = false;
        }
    }

    const Matrix far = matrix_power(t.matrix(), 1ULL << 20);
    const Matrix near = matrix_power(t.matrix(), 1ULL << 19);
    out.decaying_in_ideal = true;
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<Eigen::Index>(i);
        const double nf = vector_norm(far.col(c), norm);
        if (nf <= 1e-10 && nf <= vector_norm(near.col(c), norm) && !out.ideal.contains_index(i))
            out.decaying_in_ideal = false;
    }
    return out;
}

}  // namespace perron
