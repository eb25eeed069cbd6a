#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "perron/lattice.hpp"
#include "perron/types.hpp"

namespace perron {

struct SpectrumOptions {
    double cluster_rel_tol = 1e-9;    // relative to max(1, ||T||)
    double peripheral_eps = 1e-8;     // |lambda| >= r(T) (1 - eps)
    double rank_rel_tol = 1e-10;      // singular-value cutoff, scaled by max(1, ||T||_2)^k
    double merge_rel_radius = 1e-4;   // defective-cluster merge radius, relative to max(1, ||T||)
};

struct EigenRecord {
    Scalar value;
    int alg_mult = 1;
    int geom_mult = 1;
    int index = 1;   // pole order of the resolvent at `value`
    bool is_peripheral = false;

    bool operator==(const EigenRecord&) const = default;
};

struct SpectrumReport {
    std::vector<EigenRecord> records;   // sorted by decreasing modulus, then argument in [0, 2pi)
    double spectral_radius = 0.0;
    double cluster_tol = 0.0;
    double peripheral_eps = 1e-8;
    Eigen::Index dim = 0;

    std::vector<EigenRecord> peripheral() const;
    std::vector<Scalar> values() const;
    /// Record whose value lies within `tol` of `lambda`, if any.
    const EigenRecord* find(Scalar lambda, double tol) const;
    /// Largest pole order over peripheral records.
    int max_peripheral_index() const;

    bool operator==(const SpectrumReport&) const = default;
};

/// Eigenvalues with multiplicities and pole orders. The structural block
/// triangular form (strongly connected components of the nonzero pattern)
/// is used to split the eigenproblem, so structurally triangular parts are
/// resolved exactly. Throws NumericalError when the QR iteration fails.
SpectrumReport spectrum(const PositiveOperator& t, const SpectrumOptions& options = {});

std::vector<Scalar> peripheral_spectrum(const PositiveOperator& t, const SpectrumOptions& options = {});

/// Numerical rank with singular values compared against `cutoff`.
Eigen::Index numerical_rank(const Matrix& a, double cutoff);

/// Orthonormal basis (2-norm) of ker(lambda - T), computed from the right
/// singular vectors below the cutoff. At least one column is returned.
Matrix eigenspace(const Matrix& t, Scalar lambda, double rel_cutoff = 1e-10);

/// Real orthonormal basis of ker(lambda - T) for real T and real lambda.
RealMatrix real_eigenspace(const RealMatrix& t, double lambda, double rel_cutoff = 1e-10);

struct CyclicityOptions {
    double angular_tol = 1e-6;
    double modulus_eps = 1e-8;
    int max_denominator = 64;   // rational-angle detection bound (dimension n)
};

struct MissingPower {
    Scalar element;
    long long k = 0;
    Scalar target;

    bool operator==(const MissingPower&) const = default;
};

struct CyclicityResult {
    bool cyclic = true;
    std::vector<MissingPower> missing;   // first missing power per element
    long long k_max = 0;                 // lcm of detected denominators, capped at 2 n^2
    bool cap_hit = false;

    bool operator==(const CyclicityResult&) const = default;
};

/// Tests whether M (all of modulus r) is cyclic: r e^{i theta} in M implies
/// r e^{i k theta} in M for every integer k. Rational angles 2 pi p / q with
/// q <= max_denominator are checked exactly over one period.
CyclicityResult is_cyclic_set(const std::vector<Scalar>& m, double r, const CyclicityOptions& options = {});

/// Checks base^k in `candidates` for all k, with base = r e^{i theta}.
/// Targets are matched by angular distance and modulus.
CyclicityResult power_closure(Scalar base, const std::vector<Scalar>& candidates, const CyclicityOptions& options = {});

/// Rational approximation p/q of theta / (2 pi) in [0, 1) with q <= max_q,
/// accepted when the angular error is within `tol`.
std::optional<std::pair<long long, long long>> rational_angle(double theta, int max_q, double tol);

struct ResolventOptions {
    double residual_rel_bound = 1e-12;   // ||(mu - T) X - I|| <= bound ||X|| ||mu - T||
    int max_refinements = 5;
};

struct ResolventResult {
    Matrix value;
    double residual = 0.0;            // ||(mu - T) X - I|| in the operator's norm
    double relative_residual = 0.0;   // residual / (||X|| ||mu - T||)
    int refinement_passes = 0;
    bool within_bound = false;
    bool stagnated = false;
};

/// R(mu, T) = (mu - T)^{-1} with iterative refinement. Rejects mu within the
/// clustering tolerance of an eigenvalue; pass the spectrum when available.
ResolventResult resolvent(const PositiveOperator& t, Scalar mu, const SpectrumReport* spectrum = nullptr,
                          const ResolventOptions& options = {});

}  // namespace perron
