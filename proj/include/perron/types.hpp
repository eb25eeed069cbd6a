#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace perron {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// A vector of the lattice C^n. The order is coordinatewise on the real part.
using LatticeVector = Vector;

/// Lattice norms supported on C^n. The induced operator norms for `one` and
/// `inf` are exact (max column / row absolute sums).
enum class Norm { one, two, inf };

std::string to_string(Norm norm);
Norm norm_from_string(const std::string& text);

/// Thrown when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical kernel fails (no convergence, singular solve).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a matrix carries a negative or non-real entry where a
/// positive operator is required.
class NegativityError : public std::invalid_argument {
public:
    NegativityError(const std::string& what, Eigen::Index row, Eigen::Index col)
        : std::invalid_argument(what), row_(row), col_(col) {}
    Eigen::Index row() const { return row_; }
    Eigen::Index col() const { return col_; }

private:
    Eigen::Index row_;
    Eigen::Index col_;
};

template <typename Derived>
double vector_norm(const Eigen::MatrixBase<Derived>& v, Norm norm) {
    if (v.size() == 0) return 0.0;
    switch (norm) {
        case Norm::one: return v.template lpNorm<1>();
        case Norm::two: return v.norm();
        case Norm::inf: return v.template lpNorm<Eigen::Infinity>();
    }
    return 0.0;
}

/// Induced operator norm. Exact for p = 1 and p = inf; largest singular
/// value for p = 2.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& a, Norm norm) {
    if (a.size() == 0) return 0.0;
    switch (norm) {
        case Norm::one: return a.cwiseAbs().colwise().sum().maxCoeff();
        case Norm::inf: return a.cwiseAbs().rowwise().sum().maxCoeff();
        case Norm::two: {
            using Plain = typename Derived::PlainObject;
            Eigen::JacobiSVD<Plain> svd(a.eval());
            return svd.singularValues()(0);
        }
    }
    return 0.0;
}

}  // namespace perron
