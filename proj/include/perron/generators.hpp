#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "perron/lattice.hpp"

namespace perron {

/// Ground truth claimed by a generator. Tests re-derive every field with
/// the analysis pipeline instead of trusting it.
struct GroundTruth {
    std::optional<int> period;
    std::vector<Scalar> peripheral;             // expected peripheral values
    std::optional<int> index_at_one;            // pole order at 1
    std::optional<double> growth_exponent;      // of ||R(r,T)|| as r -> 1
    std::optional<CoordinateIdeal> planted_ideal;
    bool row_stochastic = false;
    std::optional<bool> irreducible;
};

struct GeneratorSpec {
    std::string family;
    Eigen::Index n = 0;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;
    GroundTruth expected;
};

struct Generated {
    PositiveOperator op;
    GeneratorSpec spec;
};

/// Uniform doubles in [0, 1) from the top 53 bits of a 64-bit Mersenne twister.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t bound) { return static_cast<std::size_t>(uniform() * static_cast<double>(bound)); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Block-cyclic matrix with p copies of the row-normalized block on the
/// superdiagonal (and one in the corner). Row-stochastic, r(T) = 1; period p
/// when the block is strictly positive.
Generated cyclic_family(int p, const RealMatrix& block);
/// cyclic_family with a random strictly positive b x b block.
Generated cyclic_family(int p, Eigen::Index b, std::uint64_t seed);

/// Jordan block J_m(1) (ones on the diagonal and superdiagonal) direct-summed
/// with cycle permutations of the given lengths.
Generated jordan_growth_family(int m, const std::vector<int>& decorations = {});

enum class RandomKind { nonneg_dense, irreducible_stochastic, reducible_block };
std::string to_string(RandomKind k);
RandomKind random_kind_from_string(const std::string& s);

/// Params: "density" (all kinds, default 1 for nonneg_dense and 0.5
/// otherwise), "ideal_size" (reducible_block, default n / 2).
Generated random_family(RandomKind kind, Eigen::Index n, std::uint64_t seed,
                        const std::map<std::string, double>& params = {});

/// Divide by r(T) so that the spectral radius becomes 1.
PositiveOperator rescaled_to_unit_radius(const PositiveOperator& t);

}  // namespace perron
