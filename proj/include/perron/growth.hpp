#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perron/lattice.hpp"
#include "perron/spectrum.hpp"

namespace perron {

/// Dyadic grid r_n = 1 + 2^-n and the fit conventions used by every growth
/// verdict. The first `fit_skip` points are treated as transient.
struct GrowthGrid {
    int n_min = 2;
    int n_max = 26;
    int fit_skip = 3;
    int min_fit_points = 8;
    double exponent_tol = 0.1;    // agreement of fitted exponents
    double spread_factor = 10.0;  // max/min of a ratio counted as "bounded"
};

struct GrowthPoint {
    int n = 0;
    double r = 0.0;               // r_n
    double norm = 0.0;            // ||R(r_n lambda, T)||
    std::optional<double> directed;   // ||R(r_n, T)|z|||
    double residual = 0.0;        // max absolute solve residual of the point
    bool retained = false;
};

struct GrowthProfile {
    Scalar direction{1.0, 0.0};
    GrowthGrid grid;
    std::vector<GrowthPoint> points;
    std::optional<double> fitted_exponent;
    std::optional<double> directed_exponent;
    std::string note;

    std::vector<const GrowthPoint*> fit_points() const;   // retained points past the transient
};

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// log_log_slope over the points past the first `skip` (all points when
/// fewer than two remain).
double trend_slope(const std::vector<double>& index, const std::vector<double>& norms, std::size_t skip);

/// Ratio spread max(a_i / b_i) / min(a_i / b_i); infinity if any ratio is 0.
double ratio_spread(const std::vector<double>& a, const std::vector<double>& b);

/// Resolvent norms along the ray r_n lambda (|lambda| = 1) and, when z is
/// given, directed norms ||R(r_n, T)|z|||. Requires r(T) = 1.
GrowthProfile growth_profile(const PositiveOperator& t, Scalar lambda, const std::optional<Vector>& z = std::nullopt,
                             const GrowthGrid& grid = {});

struct EstimatePoint {
    int n = 0;
    double lower = 0.0;        // 1 / (r - 1)
    double along_lambda = 0.0; // ||R(r lambda, T)||
    double along_one = 0.0;    // ||R(r, T)||
    double slack = 0.0;        // 1e-8 + propagated residual
    bool lower_ok = false;
    bool upper_ok = false;
};

struct EstimateCheck {
    bool holds = false;
    int violations = 0;
    std::vector<EstimatePoint> points;   // retained points only
};

/// Pointwise check of 1/(r-1) <= ||R(r lambda, T)|| <= ||R(r, T)||.
EstimateCheck check_estimate_2_1(const PositiveOperator& t, Scalar lambda, const GrowthProfile& profile);

enum class GrowthClass { minimal, maximal, intermediate };
std::string to_string(GrowthClass c);

struct GrowthClassification {
    GrowthClass label = GrowthClass::intermediate;
    bool minimal = false;        // ||R(r_n,T)|z||| ~ 1/(r_n - 1)
    bool maximal = false;        // ||R(r_n,T)|z||| ~ ||R(r_n,T)||
    std::string note;
    GrowthProfile profile;       // along the ray 1 with directed norms
    double minimal_spread = 0.0;
    double maximal_spread = 0.0;
};

/// Requires Tz = lambda z, ||z|| = 1, |lambda| = r(T) = 1.
GrowthClassification classify_eigenvector_growth(const PositiveOperator& t, Scalar lambda, const Vector& z,
                                                 const GrowthGrid& grid = {});

enum class BoundednessKind { power, cesaro, abel, ws };
enum class BoundednessStatus { bounded_plausible, unbounded_detected, inconclusive };
std::string to_string(BoundednessKind k);
std::string to_string(BoundednessStatus s);

struct BoundednessVerdict {
    BoundednessKind kind = BoundednessKind::power;
    std::string scheme;                 // scheme name for kind == ws
    double sup_estimate = 0.0;
    int horizon = 0;
    double trend = 0.0;                 // slope of log-norm vs log-index
    BoundednessStatus verdict = BoundednessStatus::inconclusive;
    bool certified = true;              // ws: tail certification succeeded
    std::string note;
    std::vector<double> index_magnitudes;
    std::vector<double> norms;

    bool operator==(const BoundednessVerdict&) const = default;
};

/// trend >= 0.5 -> unbounded_detected; finite sup with trend <= 0.1 ->
/// bounded_plausible; otherwise inconclusive.
BoundednessStatus classify_trend(double sup, double trend);

/// sup over the dyadic grid n = 2..horizon of (r_n - 1) ||R(r_n, T)||.
BoundednessVerdict abel_bound(const PositiveOperator& t, int horizon = 26);

struct PowerCesaroResult {
    BoundednessVerdict power;
    BoundednessVerdict cesaro;
    double sup_power_over_j = 0.0;      // sup_j ||T^j|| / j, j = 1..horizon
};

PowerCesaroResult power_and_cesaro(const PositiveOperator& t, int horizon = 256);

}  // namespace perron
