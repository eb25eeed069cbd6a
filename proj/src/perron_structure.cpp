#include "perron/perron_structure.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "perron/digraph.hpp"
#include "perron/spectrum.hpp"

namespace perron {

int component_period(const Matrix& t, const std::vector<std::size_t>& component) {
    const std::size_t n = static_cast<std::size_t>(t.rows());
    constexpr long unreached = std::numeric_limits<long>::min();
    std::vector<long> level(n, unreached);
    std::vector<bool> inside(n, false);
    for (std::size_t v : component) inside[v] = true;

    std::deque<std::size_t> queue{component.front()};
    level[component.front()] = 0;
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < n; ++v) {
            if (!inside[v] || t(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) == Scalar(0)) continue;
            if (level[v] == unreached) {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    long g = 0;
    for (std::size_t u : component)
        for (std::size_t v : component)
            if (t(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) != Scalar(0))
                g = std::gcd(g, std::labs(level[u] + 1 - level[v]));
    return static_cast<int>(g);
}

IrreducibilityReport irreducibility(const PositiveOperator& t) {
    t.require_certified("irreducibility");
    IrreducibilityReport rep;
    const Condensation c = condense(Digraph::of_pattern(t.matrix()));
    rep.sccs = c.components;
    rep.condensation_order.resize(c.components.size());
    std::iota(rep.condensation_order.begin(), rep.condensation_order.end(), 0);
    const auto n = static_cast<std::size_t>(t.dim());
    // A 1x1 matrix is irreducible iff its entry is positive.
    rep.is_irreducible = n > 0 && c.components.size() == 1 && c.internal_edge[0];
    if (rep.is_irreducible) rep.period = component_period(t.matrix(), c.components[0]);
    return rep;
}

FrobeniusForm frobenius_normal_form(const PositiveOperator& t) {
    t.require_certified("frobenius_normal_form");
    const Condensation c = condense(Digraph::of_pattern(t.matrix()));
    FrobeniusForm f;
    for (const auto& comp : c.components) {
        f.permutation.insert(f.permutation.end(), comp.begin(), comp.end());
        f.block_sizes.push_back(comp.size());
    }
    const Eigen::Index n = t.dim();
    f.permuted.resize(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
            f.permuted(a, b) = t.matrix()(static_cast<Eigen::Index>(f.permutation[a]),
                                          static_cast<Eigen::Index>(f.permutation[b]));
    return f;
}

ZhangVerdict zhang_condition(const PositiveOperator& t, int horizon) {
    t.require_certified("zhang_condition");
    const SpectrumReport s = spectrum(t);
    if (std::fabs(s.spectral_radius - 1.0) > s.cluster_tol)
        throw PreconditionError("zhang_condition requires r(T) = 1 (got " + std::to_string(s.spectral_radius) + ")");
    ZhangVerdict v;
    RealMatrix p = RealMatrix::Identity(t.dim(), t.dim());
    const RealMatrix real = t.real();
    for (int k = 1; k <= horizon; ++k) {
        p = p * real;
        const double a = p.diagonal().minCoeff();
        v.diagonal_minima.push_back(a);
        if (a > 0) v.estimate = std::max(v.estimate, std::pow(a, 1.0 / k));
    }
    v.plausibly_holds = v.estimate >= 1.0 - 1e-6;
    return v;
}

}  // namespace perron
