#include "perron/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "perron/digraph.hpp"

namespace perron {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, two_pi);
    if (a < 0) a += two_pi;
    return a;
}

double angular_distance(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, two_pi - d);
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<std::vector<std::size_t>> single_linkage(const std::vector<Scalar>& pts, double tol) {
    UnionFind uf(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (std::abs(pts[i] - pts[j]) <= tol) uf.unite(i, j);
    std::vector<std::vector<std::size_t>> groups;
    std::vector<long> slot(pts.size(), -1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::size_t r = uf.find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    return groups;
}

Scalar mean_of(const std::vector<Scalar>& raw, const std::vector<std::size_t>& idx) {
    Scalar s = 0;
    for (std::size_t i : idx) s += raw[i];
    return s / static_cast<double>(idx.size());
}

std::vector<Scalar> raw_eigenvalues(const Matrix& t) {
    const Condensation c = condense(Digraph::of_pattern(t));
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(t.rows()));
    for (const auto& comp : c.components) {
        const auto k = static_cast<Eigen::Index>(comp.size());
        if (k == 1) {
            const auto v = static_cast<Eigen::Index>(comp[0]);
            out.push_back(t(v, v));
            continue;
        }
        Matrix block(k, k);
        for (Eigen::Index a = 0; a < k; ++a)
            for (Eigen::Index b = 0; b < k; ++b)
                block(a, b) = t(static_cast<Eigen::Index>(comp[a]), static_cast<Eigen::Index>(comp[b]));
        Eigen::ComplexEigenSolver<Matrix> solver;
        solver.setMaxIterations(60 * k);
        solver.compute(block, false);
        if (solver.info() != Eigen::Success) {
            std::ostringstream os;
            os << "eigenvalue iteration did not converge on a " << k << "x" << k
               << " irreducible block (iteration cap " << 60 * k << ")";
            throw NumericalError(os.str());
        }
        for (Eigen::Index a = 0; a < k; ++a) out.push_back(solver.eigenvalues()(a));
    }
    return out;
}

Matrix shifted(const Matrix& t, Scalar c) {
    return Matrix::Identity(t.rows(), t.cols()) * c - t;
}

}  // namespace

Eigen::Index numerical_rank(const Matrix& a, double cutoff) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++r;
    return r;
}

std::vector<EigenRecord> SpectrumReport::peripheral() const {
    std::vector<EigenRecord> out;
    for (const auto& r : records)
        if (r.is_peripheral) out.push_back(r);
    return out;
}

std::vector<Scalar> SpectrumReport::values() const {
    std::vector<Scalar> out;
    for (const auto& r : records) out.push_back(r.value);
    return out;
}

const EigenRecord* SpectrumReport::find(Scalar lambda, double tol) const {
    const EigenRecord* best = nullptr;
    double best_d = tol;
    for (const auto& r : records) {
        double d = std::abs(r.value - lambda);
        if (d <= best_d) {
            best_d = d;
            best = &r;
        }
    }
    return best;
}

int SpectrumReport::max_peripheral_index() const {
    int m = 0;
    for (const auto& r : records)
        if (r.is_peripheral) m = std::max(m, r.index);
    return m;
}

SpectrumReport spectrum(const PositiveOperator& op, const SpectrumOptions& options) {
    const Matrix& t = op.matrix();
    const Eigen::Index n = t.rows();
    SpectrumReport rep;
    rep.dim = n;
    rep.peripheral_eps = options.peripheral_eps;
    if (n == 0) return rep;

    const double scale = std::max(1.0, op.norm());
    const double norm2 = std::max(1.0, operator_norm(t, Norm::two));
    rep.cluster_tol = options.cluster_rel_tol * scale;

    const std::vector<Scalar> raw = raw_eigenvalues(t);
    std::vector<std::vector<std::size_t>> clusters = single_linkage(raw, rep.cluster_tol);

    // Defective eigenvalues split by roughly eps^(1/m); merge neighbouring
    // clusters when the generalized eigenspace at their mean is large enough.
    std::vector<Scalar> centers;
    for (const auto& c : clusters) centers.push_back(mean_of(raw, c));
    const auto coarse = single_linkage(centers, options.merge_rel_radius * scale);
    std::vector<std::vector<std::size_t>> merged;
    for (const auto& group : coarse) {
        if (group.size() == 1) {
            merged.push_back(clusters[group[0]]);
            continue;
        }
        std::vector<std::size_t> all;
        for (std::size_t g : group) all.insert(all.end(), clusters[g].begin(), clusters[g].end());
        const Scalar c = mean_of(raw, all);
        const auto m = static_cast<int>(all.size());
        Matrix a = shifted(t, c);
        Matrix p = a;
        for (int k = 1; k < m; ++k) p = p * a;
        const double cutoff = options.rank_rel_tol * std::pow(norm2, m);
        if (n - numerical_rank(p, cutoff) >= m) {
            merged.push_back(std::move(all));
        } else {
            for (std::size_t g : group) merged.push_back(clusters[g]);
        }
    }

    for (const auto& c : merged) {
        EigenRecord rec;
        rec.value = mean_of(raw, c);
        rec.alg_mult = static_cast<int>(c.size());
        const Matrix a = shifted(t, rec.value);
        Matrix p = a;
        Eigen::Index prev_rank = numerical_rank(p, options.rank_rel_tol * norm2);
        rec.geom_mult = std::clamp(static_cast<int>(n - prev_rank), 1, rec.alg_mult);
        int index = rec.alg_mult;
        for (int k = 1; k <= rec.alg_mult; ++k) {
            p = p * a;
            Eigen::Index r = numerical_rank(p, options.rank_rel_tol * std::pow(norm2, k + 1));
            if (r == prev_rank) {
                index = k;
                break;
            }
            prev_rank = r;
        }
        rec.index = std::clamp(index, 1, rec.alg_mult - rec.geom_mult + 1);
        rep.records.push_back(rec);
    }

    for (const auto& r : rep.records) rep.spectral_radius = std::max(rep.spectral_radius, std::abs(r.value));
    for (auto& r : rep.records)
        r.is_peripheral = std::abs(r.value) >= rep.spectral_radius * (1.0 - options.peripheral_eps);

    std::sort(rep.records.begin(), rep.records.end(), [](const EigenRecord& a, const EigenRecord& b) {
        const double ma = std::abs(a.value), mb = std::abs(b.value);
        if (std::fabs(ma - mb) > 1e-12 * std::max(1.0, std::max(ma, mb))) return ma > mb;
        return wrap_angle(std::arg(a.value)) < wrap_angle(std::arg(b.value));
    });
    return rep;
}

std::vector<Scalar> peripheral_spectrum(const PositiveOperator& t, const SpectrumOptions& options) {
    std::vector<Scalar> out;
    for (const auto& r : spectrum(t, options).records)
        if (r.is_peripheral) out.push_back(r.value);
    return out;
}

Matrix eigenspace(const Matrix& t, Scalar lambda, double rel_cutoff) {
    const Eigen::Index n = t.rows();
    Eigen::JacobiSVD<Matrix> svd(shifted(t, lambda), Eigen::ComputeFullV);
    const double cutoff = rel_cutoff * std::max(1.0, operator_norm(t, Norm::two));
    const auto& s = svd.singularValues();
    Eigen::Index null_dim = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (s(i) <= cutoff) ++null_dim;
    null_dim = std::max<Eigen::Index>(null_dim, 1);
    return svd.matrixV().rightCols(null_dim);
}

RealMatrix real_eigenspace(const RealMatrix& t, double lambda, double rel_cutoff) {
    const Eigen::Index n = t.rows();
    RealMatrix a = RealMatrix::Identity(n, n) * lambda - t;
    Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
    const double cutoff = rel_cutoff * std::max(1.0, operator_norm(t, Norm::two));
    const auto& s = svd.singularValues();
    Eigen::Index null_dim = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (s(i) <= cutoff) ++null_dim;
    null_dim = std::max<Eigen::Index>(null_dim, 1);
    return svd.matrixV().rightCols(null_dim);
}

std::optional<std::pair<long long, long long>> rational_angle(double theta, int max_q, double tol) {
    const double x = wrap_angle(theta) / two_pi;
    for (long long q = 1; q <= max_q; ++q) {
        long long p = std::llround(x * static_cast<double>(q));
        double err = two_pi * std::fabs(x - static_cast<double>(p) / static_cast<double>(q));
        if (err <= tol) return std::make_pair(p % q, q);
    }
    return std::nullopt;
}

namespace {

bool matches(Scalar candidate, double r, double angle, const CyclicityOptions& o) {
    const double mod = std::abs(candidate);
    if (std::fabs(mod - r) > o.modulus_eps * std::max(r, 1e-300) && !(r == 0.0 && mod == 0.0)) return false;
    if (r == 0.0) return true;
    return angular_distance(std::arg(candidate), angle) <= o.angular_tol;
}

}  // namespace

CyclicityResult power_closure(Scalar base, const std::vector<Scalar>& candidates, const CyclicityOptions& o) {
    CyclicityResult res;
    const double r = std::abs(base);
    if (r == 0.0) {
        res.cyclic = std::any_of(candidates.begin(), candidates.end(), [](Scalar c) { return c == Scalar(0); }) ||
                     std::any_of(candidates.begin(), candidates.end(), [&](Scalar c) { return std::abs(c) <= o.modulus_eps; });
        if (!res.cyclic) res.missing.push_back({base, 0, Scalar(0)});
        return res;
    }
    const double theta = std::arg(base);
    const long long cap = 2LL * o.max_denominator * o.max_denominator;
    auto check = [&](long long k, double angle) {
        for (Scalar c : candidates)
            if (matches(c, r, angle, o)) return true;
        res.cyclic = false;
        res.missing.push_back({base, k, std::polar(r, angle)});
        return false;
    };
    if (auto pq = rational_angle(theta, o.max_denominator, o.angular_tol)) {
        const auto [p, q] = *pq;
        res.k_max = q;
        for (long long k = 0; k < q; ++k)
            if (!check(k, two_pi * static_cast<double>((k * p) % q) / static_cast<double>(q))) break;
    } else {
        res.k_max = cap;
        res.cap_hit = true;
        for (long long k = 0; k <= cap; ++k) {
            if (!check(k, theta * static_cast<double>(k))) break;
            if (k > 0 && !check(-k, -theta * static_cast<double>(k))) break;
        }
    }
    return res;
}

CyclicityResult is_cyclic_set(const std::vector<Scalar>& m, double r, const CyclicityOptions& o) {
    for (Scalar v : m) {
        const double mod = std::abs(v);
        if (std::fabs(mod - r) > o.modulus_eps * std::max(r, 1.0))
            throw PreconditionError("is_cyclic_set: element modulus " + std::to_string(mod) +
                                    " does not match r = " + std::to_string(r));
    }
    CyclicityResult res;
    long long lcm = 1;
    const long long cap = 2LL * o.max_denominator * o.max_denominator;
    for (Scalar v : m) {
        CyclicityResult one = power_closure(r == 0.0 ? Scalar(0) : std::polar(r, std::arg(v)), m, o);
        if (!one.cyclic) {
            res.cyclic = false;
            res.missing.push_back(one.missing.front());
        }
        if (one.cap_hit) res.cap_hit = true;
        else if (one.k_max > 0) lcm = std::min(cap, std::lcm(lcm, one.k_max));
    }
    res.k_max = res.cap_hit ? cap : lcm;
    if (lcm >= cap) res.cap_hit = true;
    return res;
}

ResolventResult resolvent(const PositiveOperator& op, Scalar mu, const SpectrumReport* spec,
                          const ResolventOptions& options) {
    const Matrix& t = op.matrix();
    const Eigen::Index n = t.rows();
    std::optional<SpectrumReport> own;
    if (!spec) {
        own = spectrum(op);
        spec = &*own;
    }
    for (const auto& r : spec->records) {
        if (std::abs(r.value - mu) <= spec->cluster_tol) {
            std::ostringstream os;
            os.precision(17);
            os << "resolvent: mu = " << mu << " lies within " << spec->cluster_tol << " of eigenvalue " << r.value;
            throw PreconditionError(os.str());
        }
    }

    ResolventResult res;
    if (n == 0) {
        res.within_bound = true;
        return res;
    }
    const Matrix a = shifted(t, mu);
    const Norm norm = op.norm_choice();
    const double a_norm = operator_norm(a, norm);
    Eigen::PartialPivLU<Matrix> lu(a);
    const Matrix id = Matrix::Identity(n, n);

    using LScalar = std::complex<long double>;
    using LMatrix = Eigen::Matrix<LScalar, Eigen::Dynamic, Eigen::Dynamic>;
    const LMatrix a_long = a.cast<LScalar>();
    const LMatrix id_long = LMatrix::Identity(n, n);
    auto residual_of = [&](const Matrix& x) -> Matrix { return (id_long - a_long * x.cast<LScalar>()).cast<Scalar>(); };

    res.value = lu.solve(id);
    Matrix r = residual_of(res.value);
    res.residual = operator_norm(r, norm);
    auto bound = [&] { return options.residual_rel_bound * operator_norm(res.value, norm) * a_norm; };
    // A small backward residual still leaves a forward error of order
    // cond * eps near the spectrum, so refine until the correction itself
    // is at rounding level.
    const double eps = std::numeric_limits<double>::epsilon();
    while (res.refinement_passes < options.max_refinements) {
        const Matrix d = lu.solve(r);
        Matrix candidate = res.value + d;
        Matrix r_new = residual_of(candidate);
        const double new_res = operator_norm(r_new, norm);
        ++res.refinement_passes;
        if (!std::isfinite(new_res) || new_res > 2.0 * res.residual) {
            res.stagnated = res.residual > bound();
            break;
        }
        const double step = operator_norm(d, norm);
        res.value = std::move(candidate);
        r = std::move(r_new);
        res.residual = new_res;
        if (step <= 4.0 * eps * operator_norm(res.value, norm)) break;
    }
    const double denom = operator_norm(res.value, norm) * a_norm;
    res.relative_residual = denom > 0 ? res.residual / denom : 0.0;
    res.within_bound = std::isfinite(res.residual) && res.residual <= bound();
    if (res.within_bound) res.stagnated = false;
    return res;
}

}  // namespace perron
