#pragma once

#include <optional>

#include "perron/types.hpp"

namespace perron {

/// Linear feasibility over free real variables:
///   find x with  A_ub x <= b_ub  and  A_eq x = b_eq.
/// Dense two-phase simplex (phase one only) with Bland's rule. Returns
/// std::nullopt when the phase-one optimum exceeds `tol`.
std::optional<RealVector> find_feasible(const RealMatrix& a_ub, const RealVector& b_ub, const RealMatrix& a_eq,
                                        const RealVector& b_eq, double tol = 1e-9);

}  // namespace perron
