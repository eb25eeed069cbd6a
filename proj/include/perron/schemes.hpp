#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perron/growth.hpp"
#include "perron/lattice.hpp"

namespace perron {

/// A weighting scheme given by its Taylor coefficients a_{j,k} over an
/// ordered prefix of its index set. `tail_bound(j, K)` bounds the sum of
/// a_{j,k} over k > K. `closed_form`, when present, evaluates f_j(T)
/// directly and is used where the coefficient series would be too long.
struct WeightingSchemeSpec {
    std::string name;
    std::vector<double> index_set;
    std::function<double(double j, long long k)> coeff;
    std::function<double(double j, long long K)> tail_bound;
    std::function<double(double j)> magnitude;   // abscissa for trend fits
    std::function<Matrix(const PositiveOperator& t, const SpectrumReport& spec, double j)> closed_form;
};

/// f_j(z) = (1 / (j + 1)) sum_{k <= j} z^k on j = 2^m - 1, m = 0..levels.
WeightingSchemeSpec cesaro_scheme(int levels = 40);
/// f_r(z) = (r - 1) / (r - z) on r = 1 + 2^-n, n = 2..n_max.
WeightingSchemeSpec abel_scheme(int n_max = 26);
/// f_j(z) = z^j on j = 2^m, m = 0..levels.
WeightingSchemeSpec power_scheme(int levels = 40);
/// f_j = 1 for every j (violates the decay condition).
WeightingSchemeSpec constant_scheme(int count = 16);

WeightingSchemeSpec scheme_by_name(const std::string& name);

struct SchemeValidation {
    bool sums_to_one = true;       // (a): partial sums plus tail within 1e-12
    bool nonnegative = true;       // (b): exact on the evaluated prefix
    bool decays = true;            // (c): one-sided over the index prefix
    bool valid() const { return sums_to_one && nonnegative && decays; }
    std::vector<double> sum_errors;    // per index
    std::string note;
};

SchemeValidation validate_scheme(const WeightingSchemeSpec& s, std::size_t j_prefix = 8, long long k_prefix = 64);

/// sum_{k < count} T^k by binary doubling.
Matrix geometric_power_sum(const Matrix& t, unsigned long long count);
/// T^j by repeated squaring.
Matrix matrix_power(const Matrix& t, unsigned long long j);

struct SchemeEvaluation {
    Matrix value;
    long long terms = 0;        // K + 1 when the series was summed, 0 for the closed form
    double tail_bound = 0.0;    // certified bound on the neglected tail
};

struct WsOptions {
    double tail_tol = 1e-9;
    long long term_budget = 65536;
    int envelope_probe = 64;
    double envelope_safety = 2.0;
};

struct WsResult {
    BoundednessVerdict verdict;
    std::vector<SchemeEvaluation> evaluations;
    int envelope_degree = 0;
    double envelope_constant = 0.0;
};

/// Norms of f_j(T) along the first j_prefix indices. Requires r(T) = 1.
/// Series are truncated where the polynomial envelope C (k+1)^d of
/// ||T^k|| (d = max peripheral index - 1) certifies the tail below
/// tail_tol; beyond the term budget the closed form is used.
WsResult ws_bound(const PositiveOperator& t, const WeightingSchemeSpec& s, std::size_t j_prefix,
                  const WsOptions& options = {});

struct WsIdeal {
    CoordinateIdeal ideal;
    bool converged = false;
    std::vector<std::size_t> non_convergent;    // coordinates without a stable limit
    std::vector<double> limit_norms;            // ||f_j(T) e_i|| at the last index
    bool invariant = false;                     // property (a)
    bool eigenvectors_ok = false;               // property (b)
    bool decaying_in_ideal = false;             // property (c)
    std::string note;
};

/// Coordinates i with f_j(T) e_i -> 0 along the prefix. Requires a
/// bounded_plausible ws_bound verdict for the same scheme.
WsIdeal ws_invariant_ideal(const PositiveOperator& t, const WeightingSchemeSpec& s, std::size_t j_prefix = 0);

}  // namespace perron
