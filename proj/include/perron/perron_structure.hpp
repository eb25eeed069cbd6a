#pragma once

#include <cstddef>
#include <vector>

#include "perron/lattice.hpp"

namespace perron {

struct IrreducibilityReport {
    std::vector<std::vector<std::size_t>> sccs;       // in condensation (topological) order
    std::vector<std::size_t> condensation_order;      // 0..k-1, kept for the report schema
    bool is_irreducible = false;
    int period = 0;                                   // 0 when reducible

    bool operator==(const IrreducibilityReport&) const = default;
};

/// Strong connectivity of the adjacency digraph and, when irreducible, the
/// index of imprimitivity computed as a gcd of BFS level differences.
IrreducibilityReport irreducibility(const PositiveOperator& t);

/// Period (gcd of cycle lengths) of the subgraph induced on `component`,
/// which must be strongly connected with at least one edge.
int component_period(const Matrix& t, const std::vector<std::size_t>& component);

struct FrobeniusForm {
    std::vector<std::size_t> permutation;             // new position -> original index
    std::vector<std::size_t> block_sizes;
    Matrix permuted;                                  // P^T T P, block upper triangular
};

FrobeniusForm frobenius_normal_form(const PositiveOperator& t);

struct ZhangVerdict {
    std::vector<double> diagonal_minima;   // a_n = min_i (T^n)_ii, n = 1..N
    double estimate = 0.0;                 // max_n a_n^{1/n}
    bool plausibly_holds = false;          // one-sided: estimate >= 1 - 1e-6
};

/// Finite-horizon lower estimate of limsup a_n^{1/n} for T^n >= a_n I.
/// Requires r(T) = 1.
ZhangVerdict zhang_condition(const PositiveOperator& t, int horizon);

}  // namespace perron
