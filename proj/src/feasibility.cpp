#include "perron/feasibility.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace perron {

std::optional<RealVector> find_feasible(const RealMatrix& a_ub, const RealVector& b_ub, const RealMatrix& a_eq,
                                        const RealVector& b_eq, double tol) {
    const Eigen::Index nv = a_ub.rows() > 0 ? a_ub.cols() : a_eq.cols();
    const Eigen::Index m_ub = a_ub.rows(), m_eq = a_eq.rows();
    const Eigen::Index m = m_ub + m_eq;
    if (m == 0) return RealVector::Zero(nv);

    // Columns: u (nv), v (nv), slacks (m_ub), artificials (one per row that
    // needs one), then the right-hand side.
    std::vector<Eigen::Index> needs_art;
    for (Eigen::Index i = 0; i < m_ub; ++i)
        if (b_ub(i) < 0) needs_art.push_back(i);
    for (Eigen::Index i = 0; i < m_eq; ++i) needs_art.push_back(m_ub + i);
    const auto n_art = static_cast<Eigen::Index>(needs_art.size());
    const Eigen::Index n_cols = 2 * nv + m_ub + n_art;
    const Eigen::Index rhs = n_cols;

    RealMatrix tab = RealMatrix::Zero(m + 1, n_cols + 1);
    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m), -1);
    for (Eigen::Index i = 0; i < m; ++i) {
        const bool ub = i < m_ub;
        RealVector row = ub ? RealVector(a_ub.row(i).transpose()) : RealVector(a_eq.row(i - m_ub).transpose());
        double b = ub ? b_ub(i) : b_eq(i - m_ub);
        double sign = b < 0 ? -1.0 : 1.0;
        tab.block(i, 0, 1, nv) = sign * row.transpose();
        tab.block(i, nv, 1, nv) = -sign * row.transpose();
        if (ub) {
            tab(i, 2 * nv + i) = sign;
            if (sign > 0) basis[static_cast<std::size_t>(i)] = 2 * nv + i;
        }
        tab(i, rhs) = sign * b;
    }
    for (Eigen::Index k = 0; k < n_art; ++k) {
        const Eigen::Index i = needs_art[static_cast<std::size_t>(k)];
        const Eigen::Index col = 2 * nv + m_ub + k;
        tab(i, col) = 1.0;
        basis[static_cast<std::size_t>(i)] = col;
    }
    // Objective row: minimise the sum of artificials, expressed in the
    // non-basic variables (reduced costs).
    for (Eigen::Index k = 0; k < n_art; ++k) tab.row(m) -= tab.row(needs_art[static_cast<std::size_t>(k)]);
    for (Eigen::Index k = 0; k < n_art; ++k) tab(m, 2 * nv + m_ub + k) = 0.0;

    const double eps = 1e-12;
    const long max_iter = 50000;
    for (long iter = 0; iter < max_iter; ++iter) {
        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < n_cols; ++j)
            if (tab(m, j) < -eps) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        Eigen::Index leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m; ++i) {
            if (tab(i, enter) > eps) {
                double ratio = tab(i, rhs) / tab(i, enter);
                if (ratio < best - 1e-15 ||
                    (std::fabs(ratio - best) <= 1e-15 && leave >= 0 &&
                     basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) break;  // unbounded direction cannot occur in phase one
        tab.row(leave) /= tab(leave, enter);
        for (Eigen::Index i = 0; i <= m; ++i)
            if (i != leave && tab(i, enter) != 0.0) tab.row(i) -= tab(i, enter) * tab.row(leave);
        basis[static_cast<std::size_t>(leave)] = enter;
    }

    const double infeasibility = -tab(m, rhs);
    const double scale = std::max(1.0, std::max(b_ub.size() ? b_ub.cwiseAbs().maxCoeff() : 0.0,
                                                b_eq.size() ? b_eq.cwiseAbs().maxCoeff() : 0.0));
    if (infeasibility > tol * scale) return std::nullopt;

    RealVector x = RealVector::Zero(nv);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index col = basis[static_cast<std::size_t>(i)];
        if (col < 0) continue;
        if (col < nv) x(col) += tab(i, rhs);
        else if (col < 2 * nv) x(col - nv) -= tab(i, rhs);
    }
    // Verify against the original constraints.
    const double slack = 1e-7 * scale;
    if (m_ub > 0 && ((a_ub * x - b_ub).array() > slack).any()) return std::nullopt;
    if (m_eq > 0 && ((a_eq * x - b_eq).cwiseAbs().array() > slack).any()) return std::nullopt;
    return x;
}

}  // namespace perron
