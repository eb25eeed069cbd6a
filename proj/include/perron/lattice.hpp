#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "perron/types.hpp"

namespace perron {

/// Entrywise modulus |v|.
template <typename Derived>
RealVector modulus(const Eigen::MatrixBase<Derived>& v) {
    return v.cwiseAbs();
}

/// Positive and negative parts of a real vector: v = pos - neg, pos ^ neg = 0.
struct LatticeParts {
    RealVector pos;
    RealVector neg;
};

template <typename Derived>
LatticeParts real_lattice_parts(const Eigen::MatrixBase<Derived>& v) {
    RealVector x = v.template cast<double>();
    return {x.cwiseMax(0.0), (-x).cwiseMax(0.0)};
}

/// Lattice parts of a complex vector with zero imaginary parts; throws
/// PreconditionError otherwise.
LatticeParts lattice_parts(const LatticeVector& v);

/// A dense complex square matrix acting on C^n with a declared lattice norm.
/// `nonneg_certified()` is true iff every stored entry has imaginary part 0
/// and real part >= 0, compared exactly.
class PositiveOperator {
public:
    PositiveOperator() = default;
    explicit PositiveOperator(Matrix matrix, Norm norm = Norm::inf);

    /// Same as the constructor, but throws NegativityError naming the first
    /// offending entry if the matrix is not entrywise nonnegative.
    static PositiveOperator certified(Matrix matrix, Norm norm = Norm::inf);
    static PositiveOperator from_real(const RealMatrix& matrix, Norm norm = Norm::inf);

    const Matrix& matrix() const { return matrix_; }
    Eigen::Index dim() const { return matrix_.rows(); }
    Norm norm_choice() const { return norm_; }
    bool nonneg_certified() const { return certified_; }

    /// Real part of the matrix; meaningful when nonneg_certified().
    RealMatrix real() const { return matrix_.real(); }
    double norm() const { return operator_norm(matrix_, norm_); }

    Vector apply(const Vector& v) const { return matrix_ * v; }
    PositiveOperator with_norm(Norm norm) const { return PositiveOperator(matrix_, norm); }
    PositiveOperator scaled(double factor) const { return PositiveOperator(matrix_ * factor, norm_); }

    /// Conjugate transpose; certification is preserved.
    PositiveOperator adjoint() const { return PositiveOperator(matrix_.adjoint(), norm_); }

    void require_certified(const char* operation) const;

private:
    Matrix matrix_;
    Norm norm_ = Norm::inf;
    bool certified_ = true;
};

inline PositiveOperator adjoint(const PositiveOperator& t) { return t.adjoint(); }

/// First entry violating nonnegativity, if any (row, col).
std::optional<std::pair<Eigen::Index, Eigen::Index>> first_negative_entry(const Matrix& m);

/// Coordinate ideal {v : v_i = 0 for i not in indices} of C^n. Indices are
/// zero-based, sorted and unique.
class CoordinateIdeal {
public:
    CoordinateIdeal() = default;
    CoordinateIdeal(std::vector<std::size_t> indices, std::size_t ambient_dim);

    static CoordinateIdeal zero(std::size_t n) { return CoordinateIdeal({}, n); }
    static CoordinateIdeal whole(std::size_t n);

    const std::vector<std::size_t>& indices() const { return indices_; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    bool contains_index(std::size_t i) const;
    std::vector<std::size_t> complement() const;

    /// True iff every coordinate outside the ideal is below `tol` in modulus.
    bool contains(const Vector& v, double tol = 0.0) const;

    bool operator==(const CoordinateIdeal& other) const = default;
    std::string to_string() const;  // one-based, e.g. "{1,3}"

private:
    std::vector<std::size_t> indices_;
    std::size_t ambient_ = 0;
};

/// First (row, col) with row outside F, col inside F and a nonzero entry.
std::optional<std::pair<std::size_t, std::size_t>> invariance_violation(const Matrix& t, const CoordinateIdeal& f);
inline bool is_invariant(const Matrix& t, const CoordinateIdeal& f) { return !invariance_violation(t, f); }

struct IdealEnumeration {
    std::vector<CoordinateIdeal> ideals;  // sorted by size, then lexicographically
    bool complete = true;                 // false: only principal down-sets (n > 20)
};

/// All T-invariant coordinate ideals, i.e. the predecessor-closed unions of
/// strongly connected components. For n > 20 only {0}, E and the closures
/// of single components are returned and `complete` is false.
IdealEnumeration invariant_ideals(const PositiveOperator& t);

/// Restriction to a T-invariant ideal and the induced quotient operator on
/// the complementary coordinates.
struct InducedPair {
    PositiveOperator restriction;
    PositiveOperator quotient;
    std::vector<std::size_t> ideal_indices;
    std::vector<std::size_t> quotient_indices;
};

InducedPair induce(const PositiveOperator& t, const CoordinateIdeal& f);

/// Reassemble T from an induced pair and the coupling block; used by tests.
Matrix reassemble(const InducedPair& pair, const Matrix& coupling);

struct ClosureDiagnostic {
    bool support_oracle = false;        // supp(x) within supp(y), exact
    bool numeric_verdict = false;       // ||(y - s x)^-|| / s fell below the threshold
    bool agree = false;
    double threshold = 0.0;             // 1e-9 * ||x||
    std::vector<double> s_values;       // s = 2^-k, k = 1..30
    std::vector<double> ratios;         // ||(y - s x)^-|| / s
};

/// Membership of x in the closure of the principal ideal generated by y,
/// both nonnegative. Reports the support oracle and the o(s) criterion.
ClosureDiagnostic in_closure_principal_ideal(const RealVector& x, const RealVector& y, Norm norm = Norm::inf);

struct QuasiInteriorResult {
    bool quasi_interior = false;   // every coordinate strictly positive
    bool cross_check = false;      // every unit vector lies in the closure of E_y
    bool agree = false;
};

QuasiInteriorResult is_quasi_interior(const RealVector& y, Norm norm = Norm::inf);

}  // namespace perron
