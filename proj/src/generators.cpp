#include "perron/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "perron/digraph.hpp"
#include "perron/spectrum.hpp"

namespace perron {

namespace {

std::vector<Scalar> roots_of_unity(int p) {
    std::vector<Scalar> out;
    for (int k = 0; k < p; ++k) out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / p));
    return out;
}

RealMatrix row_normalized(const RealMatrix& m) {
    RealMatrix out = m;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double s = m.row(i).sum();
        if (!(s > 0.0)) throw PreconditionError("row " + std::to_string(i + 1) + " of the block sums to zero");
        // entries are rounded to multiples of 2^-40 so the row sums to 1
        // exactly; otherwise r(T) can sit an ulp above 1
        const double unit = std::ldexp(1.0, -40);
        Eigen::Index big = 0;
        double rest = 1.0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) <= 0.0) continue;
            out(i, j) = std::max(unit, std::round(m(i, j) / s / unit) * unit);
            if (out(i, j) > out(i, big)) big = j;
        }
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (j != big) rest -= out(i, j);
        out(i, big) = rest;
    }
    return out;
}

RealMatrix random_pattern(Rng& rng, Eigen::Index rows, Eigen::Index cols, double density) {
    RealMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double keep = rng.uniform();
            const double value = rng.uniform();
            m(i, j) = keep < density ? value : 0.0;
        }
    return m;
}

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

}  // namespace

Generated cyclic_family(int p, const RealMatrix& block) {
    if (p < 1) throw PreconditionError("cyclic_family: p must be at least 1");
    if (block.rows() != block.cols() || block.rows() == 0) throw PreconditionError("cyclic_family: block must be square");
    if ((block.array() < 0.0).any()) throw PreconditionError("cyclic_family: block must be nonnegative");
    const RealMatrix b = row_normalized(block);
    const Eigen::Index s = b.rows();
    RealMatrix t = RealMatrix::Zero(p * s, p * s);
    for (int k = 0; k < p; ++k) t.block(k * s, ((k + 1) % p) * s, s, s) = b;

    Generated g{PositiveOperator::from_real(t), {}};
    g.spec.family = "cycle";
    g.spec.n = t.rows();
    g.spec.params = {{"p", p}, {"block", static_cast<double>(s)}};
    g.spec.expected.row_stochastic = true;
    if ((block.array() > 0.0).all()) {
        g.spec.expected.period = p;
        g.spec.expected.peripheral = roots_of_unity(p);
        g.spec.expected.irreducible = true;
        g.spec.expected.index_at_one = 1;
        g.spec.expected.growth_exponent = 1.0;
    }
    return g;
}

Generated cyclic_family(int p, Eigen::Index b, std::uint64_t seed) {
    Rng rng(seed);
    RealMatrix block(b, b);
    for (Eigen::Index i = 0; i < b; ++i)
        for (Eigen::Index j = 0; j < b; ++j) block(i, j) = 0.05 + rng.uniform();
    Generated g = cyclic_family(p, block);
    g.spec.seed = seed;
    return g;
}

Generated jordan_growth_family(int m, const std::vector<int>& decorations) {
    if (m < 1) throw PreconditionError("jordan_growth_family: m must be at least 1");
    Eigen::Index n = m;
    for (int c : decorations) {
        if (c < 1) throw PreconditionError("jordan_growth_family: cycle lengths must be at least 1");
        n += c;
    }
    RealMatrix t = RealMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < m; ++i) {
        t(i, i) = 1.0;
        if (i + 1 < m) t(i, i + 1) = 1.0;
    }
    Eigen::Index off = m;
    std::vector<Scalar> per = {Scalar(1)};
    for (int c : decorations) {
        for (int k = 0; k < c; ++k) t(off + k, off + (k + 1) % c) = 1.0;
        for (Scalar r : roots_of_unity(c))
            if (std::none_of(per.begin(), per.end(), [&](Scalar q) { return std::abs(q - r) < 1e-12; })) per.push_back(r);
        off += c;
    }
    Generated g{PositiveOperator::from_real(t), {}};
    g.spec.family = "jordan";
    g.spec.n = n;
    g.spec.params["m"] = m;
    for (std::size_t i = 0; i < decorations.size(); ++i)
        g.spec.params["cycle" + std::to_string(i + 1)] = decorations[i];
    g.spec.expected.index_at_one = m;
    g.spec.expected.growth_exponent = m;
    g.spec.expected.peripheral = per;
    g.spec.expected.irreducible = (n == 1);
    return g;
}

std::string to_string(RandomKind k) {
    switch (k) {
        case RandomKind::nonneg_dense: return "nonneg_dense";
        case RandomKind::irreducible_stochastic: return "irreducible_stochastic";
        case RandomKind::reducible_block: return "reducible_block";
    }
    return "nonneg_dense";
}

RandomKind random_kind_from_string(const std::string& s) {
    if (s == "nonneg_dense" || s == "dense") return RandomKind::nonneg_dense;
    if (s == "irreducible_stochastic" || s == "stochastic") return RandomKind::irreducible_stochastic;
    if (s == "reducible_block" || s == "reducible") return RandomKind::reducible_block;
    throw PreconditionError("unknown random family '" + s + "'");
}

Generated random_family(RandomKind kind, Eigen::Index n, std::uint64_t seed, const std::map<std::string, double>& params) {
    if (n < 1 || n > 64) throw PreconditionError("random_family: n must lie in 1..64");
    Rng rng(seed);
    Generated g;
    g.spec.family = to_string(kind);
    g.spec.n = n;
    g.spec.seed = seed;
    g.spec.params = params;

    switch (kind) {
        case RandomKind::nonneg_dense: {
            const double density = param(params, "density", 1.0);
            g.spec.params["density"] = density;
            g.op = PositiveOperator::from_real(random_pattern(rng, n, n, density));
            break;
        }
        case RandomKind::irreducible_stochastic: {
            const double density = param(params, "density", 0.5);
            g.spec.params["density"] = density;
            RealMatrix m;
            int attempts = 0;
            for (;;) {
                ++attempts;
                m = random_pattern(rng, n, n, density);
                const Condensation c = condense(Digraph::of_pattern(m));
                const bool strong = c.components.size() == 1 && c.internal_edge[0];
                if (strong) break;
                if (attempts > 100000) throw NumericalError("random_family: no strongly connected sample found");
            }
            g.spec.params["attempts"] = attempts;
            g.op = PositiveOperator::from_real(row_normalized(m));
            g.spec.expected.row_stochastic = true;
            g.spec.expected.irreducible = true;
            g.spec.expected.index_at_one = 1;
            break;
        }
        case RandomKind::reducible_block: {
            const double density = param(params, "density", 0.5);
            const auto k = static_cast<Eigen::Index>(param(params, "ideal_size", static_cast<double>(n / 2)));
            if (k < 1 || k >= n) throw PreconditionError("random_family: ideal_size must lie in 1..n-1");
            g.spec.params["density"] = density;
            g.spec.params["ideal_size"] = static_cast<double>(k);
            RealMatrix t = random_pattern(rng, n, n, density);
            t.bottomLeftCorner(n - k, k).setZero();
            // Keep the planted ideal from being trivially split further.
            for (Eigen::Index i = 0; i < n; ++i)
                if (t.row(i).sum() == 0.0) t(i, i) = 0.5 + 0.5 * rng.uniform();
            std::vector<std::size_t> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
            RealMatrix p(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    p(static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]),
                      static_cast<Eigen::Index>(perm[static_cast<std::size_t>(j)])) = t(i, j);
            std::vector<std::size_t> ideal;
            for (Eigen::Index i = 0; i < k; ++i) ideal.push_back(perm[static_cast<std::size_t>(i)]);
            std::sort(ideal.begin(), ideal.end());
            g.op = PositiveOperator::from_real(p);
            g.spec.expected.planted_ideal = CoordinateIdeal(ideal, static_cast<std::size_t>(n));
            g.spec.expected.irreducible = false;
            break;
        }
    }
    return g;
}

PositiveOperator rescaled_to_unit_radius(const PositiveOperator& t) {
    const SpectrumReport s = spectrum(t);
    if (!(s.spectral_radius > 0.0)) throw PreconditionError("rescaling requires r(T) > 0");
    return t.scaled(1.0 / s.spectral_radius);
}

}  // namespace perron
