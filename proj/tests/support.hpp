#pragma once

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "perron/lattice.hpp"

namespace testing {

using namespace perron;

inline RealMatrix rows(std::initializer_list<std::initializer_list<double>> r) {
    RealMatrix m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : r) {
        Eigen::Index j = 0;
        for (double x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

inline PositiveOperator op(const RealMatrix& m, Norm norm = Norm::inf) { return PositiveOperator::from_real(m, norm); }

inline RealMatrix cycle(int p) {
    RealMatrix m = RealMatrix::Zero(p, p);
    for (int k = 0; k < p; ++k) m(k, (k + 1) % p) = 1.0;
    return m;
}

inline RealMatrix jordan(int m) {
    RealMatrix j = RealMatrix::Identity(m, m);
    for (int k = 0; k + 1 < m; ++k) j(k, k + 1) = 1.0;
    return j;
}

inline RealMatrix direct_sum(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix m = RealMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

inline Scalar root_of_unity(int k, int p) { return std::polar(1.0, 2.0 * std::numbers::pi * k / p); }

// Boolean reachability by repeated squaring of (I + A); independent of any
// graph traversal in the library.
inline std::vector<std::vector<bool>> reachability(const RealMatrix& a) {
    const auto n = static_cast<std::size_t>(a.rows());
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r[i][j] = i == j || a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (r[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (r[k][j]) r[i][j] = true;
    return r;
}

// gcd of the lengths L <= 2n^2 of closed walks, read off the diagonals of
// boolean powers of the pattern.
inline int walk_period(const RealMatrix& a) {
    const Eigen::Index n = a.rows();
    using B = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
    const B pat = (a.array() != 0.0).cast<int>();
    B pw = pat;
    int g = 0;
    for (int len = 1; len <= 2 * n * n; ++len) {
        if ((pw.diagonal().array() > 0).any()) g = std::gcd(g, len);
        pw = ((pw * pat).array() > 0).cast<int>();
    }
    return g;
}

}  // namespace testing
