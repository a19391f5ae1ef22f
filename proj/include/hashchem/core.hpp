#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hashchem/rng.hpp"

namespace hashchem {

/// Individual entity type, 1..K.
using TypeId = std::uint32_t;

/// Unique per-run particle identifier, never reused.
using ParticleId = std::uint64_t;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Particle {
    ParticleId id = 0;
    TypeId type = 1;
    Vec2 pos;

    friend bool operator==(const Particle&, const Particle&) = default;
};

/// Canonical name of a higher-order entity: the ascending list of its
/// members' types.
class MultisetKey {
public:
    MultisetKey() = default;

    /// Sorts `types`. Throws PreconditionError when empty.
    static MultisetKey from_types(std::vector<TypeId> types);

    std::span<const TypeId> types() const noexcept { return types_; }
    std::size_t size() const noexcept { return types_.size(); }

    friend bool operator==(const MultisetKey&, const MultisetKey&) = default;
    friend auto operator<=>(const MultisetKey&, const MultisetKey&) = default;

private:
    std::vector<TypeId> types_;
};

/// Throws PreconditionError when `particles` is empty.
MultisetKey multiset_key(std::span<const Particle> particles);

/// `constant` returns a fixed value; it is not selectable from configs and
/// exists for controlled experiments on the engine.
enum class EvaluatorKind { hash, uniform_random, biased_random, constant };

std::string_view to_string(EvaluatorKind kind);
/// Accepts "hash", "uniform" and "biased" (plus the long enum spellings).
EvaluatorKind parse_evaluator_kind(std::string_view text);

struct Params {
    std::int64_t types = 1000;     // K = |S|
    double sigma = 0.15;           // half-normal movement scale
    double radius = 0.05;          // interaction neighbourhood
    double mu = 0.01;              // per-particle mutation probability
    std::int64_t d_max = 100;      // density at which replication stops
    std::int64_t modulus = 100000; // m in (h mod m) / m
    std::int64_t init_pop = 10;
    std::int64_t steps = 2000;
    EvaluatorKind evaluator = EvaluatorKind::hash;
    double biased_lo = 0.2;
    double biased_hi = 1.0;

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    friend bool operator==(const Params&, const Params&) = default;
};

struct World {
    std::vector<Particle> particles;
    Params params;
    std::int64_t tick = 0;
    RngStream rng;
    ParticleId next_id = 0;

    ParticleId issue_id() noexcept { return next_id++; }

    friend bool operator==(const World&, const World&) = default;
};

World init_world(const Params& params, std::uint64_t seed);
World init_world(const Params& params, RngStream rng);

} // namespace hashchem
