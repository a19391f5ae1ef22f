#pragma once

#include <cstdint>
#include <span>

#include "hashchem/core.hpp"
#include "hashchem/rng.hpp"

namespace hashchem {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xCBF29CE484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001B3ULL;

/// FNV-1a-64 over the sorted types, each serialized as 4 little-endian
/// bytes with no delimiter. `types` must be sorted ascending and non-empty.
std::uint64_t hash_multiset(std::span<const TypeId> types);
inline std::uint64_t hash_multiset(const MultisetKey& key) { return hash_multiset(key.types()); }

/// Universal fitness evaluator. The hash kind is a pure function of the
/// key; the random kinds draw a fresh value from the supplied stream on
/// every call and ignore the key.
class Evaluator {
public:
    static Evaluator hash(std::uint64_t modulus);
    static Evaluator uniform_random();
    static Evaluator biased_random(double lo = 0.2, double hi = 1.0);
    /// Always returns `value`, which must lie in [0, 1].
    static Evaluator constant(double value);
    /// Builds the evaluator selected in `params`.
    static Evaluator from_params(const Params& params);

    EvaluatorKind kind() const noexcept { return kind_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

    /// Fitness in [0,1). Only the random kinds advance `rng`.
    double operator()(std::span<const TypeId> sorted_types, RngStream& rng) const;

private:
    EvaluatorKind kind_ = EvaluatorKind::hash;
    std::uint64_t modulus_ = 100000;
    double lo_ = 0.0;
    double hi_ = 1.0;
};

double fitness_of(const Evaluator& evaluator, const MultisetKey& key, RngStream& rng);

/// Maps a hash value onto [0,1) as (h mod m) / m.
inline double hash_to_fitness(std::uint64_t h, std::uint64_t modulus) noexcept {
    return static_cast<double>(h % modulus) / static_cast<double>(modulus);
}

} // namespace hashchem
