#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perron/growth.hpp"
#include "perron/lattice.hpp"
#include "perron/schemes.hpp"
#include "perron/spectrum.hpp"

namespace perron {

enum class Status { holds, fails, one_sided, not_applicable };
std::string to_string(Status s);
Status status_from_string(const std::string& text);

struct Hypothesis {
    std::string name;
    Status status = Status::fails;
    std::string evidence;

    bool operator==(const Hypothesis&) const = default;
};

struct Conclusion {
    Status status = Status::not_applicable;
    std::string statement;
    std::vector<std::string> witnesses;

    bool operator==(const Conclusion&) const = default;
};

/// Result of checking one theorem on one instance. The conclusion is only
/// evaluated when no hypothesis fails; `one_sided` hypotheses (finite
/// horizon evidence) do not block it.
struct TheoremVerdict {
    std::string theorem_id;
    std::vector<Hypothesis> hypotheses;
    Conclusion conclusion;
    std::map<std::string, double> tolerances;
    std::map<std::string, double> grid;
    std::vector<TheoremVerdict> parts;   // sub-assertions, e.g. (a)..(g)
    std::string note;

    bool admissible() const;
    Hypothesis& add(std::string name, Status status, std::string evidence = {});
    bool operator==(const TheoremVerdict&) const = default;
};

struct HarnessOptions {
    GrowthGrid grid;
    int horizon = 256;                 // finite horizon for power sequences
    std::uint64_t seed = 1;            // sampling in Thm 5.8(a) and torsion checks
    int random_samples = 50;
    int phase_grid = 64;               // phase polygon for |z| <= x constraints
    CyclicityOptions cyclicity;
    double eigen_tol = 1e-8;           // ||Tz - lambda z|| relative to max(1, ||T||)
    double match_tol = 1e-6;           // matching a user-supplied lambda to the spectrum
};

enum class Variant { a, b, c };
std::string to_string(Variant v);

TheoremVerdict verify_thm_1_2(const PositiveOperator& t, Scalar lambda, const Vector& z, Variant variant,
                              const HarnessOptions& opt = {});

enum class Prop31Mode { power_bounded_orbit, dominating_fixed_vector };

TheoremVerdict verify_prop_3_1(const PositiveOperator& t, Scalar lambda, const Vector& z, Prop31Mode mode,
                               const HarnessOptions& opt = {});

/// Dominated eigenvector condition at exact-eigenvector scale.
TheoremVerdict verify_dae(const PositiveOperator& t, Scalar lambda, const HarnessOptions& opt = {});

TheoremVerdict verify_thm_4_1(const PositiveOperator& t, Scalar lambda, const HarnessOptions& opt = {});
TheoremVerdict verify_cor_4_2(const PositiveOperator& t, Scalar lambda, const HarnessOptions& opt = {});

/// Variant (c) uses `z` when given (else the first eigenspace vector) and
/// `functional` when given (else a linear feasibility search on T').
TheoremVerdict verify_kr_2_1(const PositiveOperator& t, Scalar lambda, Variant variant,
                             const std::optional<Vector>& z = std::nullopt,
                             const std::optional<RealVector>& functional = std::nullopt,
                             const HarnessOptions& opt = {});

TheoremVerdict verify_thm_5_8(const PositiveOperator& t, const WeightingSchemeSpec& scheme,
                              const HarnessOptions& opt = {});

struct TorsionResult {
    Vector u;               // diagonal of U, unimodular entries
    double defect = 0.0;    // ||U^{-1} T U - lambda T||
    bool preserves_modulus = false;   // |Uv| = |v| on sampled v
};

/// U = diag(z_i / |z_i|). Throws PreconditionError when some |z_i| is at or
/// below 1e-12 ||z||.
TorsionResult torsion_similarity(const PositiveOperator& t, Scalar lambda, const Vector& z,
                                 std::uint64_t seed = 1);

TheoremVerdict verify_appendix_A1(const PositiveOperator& t, const CoordinateIdeal& f, const HarnessOptions& opt = {});

TheoremVerdict verify_cor_5_6(const PositiveOperator& t, const WeightingSchemeSpec& scheme,
                              const HarnessOptions& opt = {});

/// Nonnegative eigenvector for a real eigenvalue: x in ker(mu - T), x >= 0,
/// sum x = 1. std::nullopt when none exists.
std::optional<RealVector> nonnegative_eigenvector(const RealMatrix& t, double mu);

/// Fixed vector x in ker(1 - T) with x >= |z| entrywise.
std::optional<RealVector> dominating_fixed_vector(const RealMatrix& t, const RealVector& modz);

struct DominatedPair {
    Vector z;          // in ker(lambda - T), some coordinate equal to 1
    RealVector x;      // in ker(|lambda| - T), x >= |z|
};

std::optional<DominatedPair> dominated_eigenpair(const RealMatrix& t, Scalar lambda, int phases = 64);

/// x' >= 0 with T' x' >= x' and <x', |z|> >= 1.
std::optional<RealVector> super_fixed_functional(const RealMatrix& t, const RealVector& modz);

}  // namespace perron
