#include "hashchem/core.hpp"

#include <algorithm>
#include <cmath>

#include "hashchem/error.hpp"

namespace hashchem {

MultisetKey MultisetKey::from_types(std::vector<TypeId> types) {
    if (types.empty()) {
        throw PreconditionError("multiset_key: empty multiset");
    }
    std::sort(types.begin(), types.end());
    MultisetKey key;
    key.types_ = std::move(types);
    return key;
}

MultisetKey multiset_key(std::span<const Particle> particles) {
    std::vector<TypeId> types;
    types.reserve(particles.size());
    for (const auto& p : particles) {
        types.push_back(p.type);
    }
    return MultisetKey::from_types(std::move(types));
}

std::string_view to_string(EvaluatorKind kind) {
    switch (kind) {
    case EvaluatorKind::hash: return "hash";
    case EvaluatorKind::uniform_random: return "uniform";
    case EvaluatorKind::biased_random: return "biased";
    case EvaluatorKind::constant: return "constant";
    }
    return "hash";
}

EvaluatorKind parse_evaluator_kind(std::string_view text) {
    if (text == "hash") return EvaluatorKind::hash;
    if (text == "uniform" || text == "uniform_random") return EvaluatorKind::uniform_random;
    if (text == "biased" || text == "biased_random") return EvaluatorKind::biased_random;
    throw ConfigError("evaluator", "expected hash, uniform or biased, got '" + std::string(text) + "'");
}

void Params::validate() const {
    if (types < 1 || types > std::int64_t{UINT32_MAX}) throw ConfigError("types", "K must be in [1, 2^32-1]");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma", "must be > 0");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("radius", "must be > 0");
    if (!(mu >= 0.0 && mu <= 1.0)) throw ConfigError("mu", "must be in [0, 1]");
    if (d_max < 1) throw ConfigError("dmax", "must be >= 1");
    if (modulus < 2) throw ConfigError("modulus", "must be >= 2");
    if (init_pop < 0) throw ConfigError("init_pop", "must be >= 0");
    if (steps < 0) throw ConfigError("steps", "must be >= 0");
    if (evaluator == EvaluatorKind::constant) throw ConfigError("evaluator", "constant is not a configurable evaluator");
    if (evaluator == EvaluatorKind::biased_random) {
        if (!(biased_lo >= 0.0 && biased_lo < biased_hi && biased_hi <= 1.0)) {
            throw ConfigError("biased.lo", "need 0 <= lo < hi <= 1");
        }
    }
}

World init_world(const Params& params, std::uint64_t seed) {
    return init_world(params, RngStream(seed));
}

World init_world(const Params& params, RngStream rng) {
    params.validate();
    World world;
    world.params = params;
    world.rng = rng;
    world.particles.reserve(static_cast<std::size_t>(params.init_pop));
    for (std::int64_t i = 0; i < params.init_pop; ++i) {
        Particle p;
        p.id = world.issue_id();
        p.type = static_cast<TypeId>(world.rng.uniform_int(1, params.types));
        p.pos.x = world.rng.uniform01();
        p.pos.y = world.rng.uniform01();
        world.particles.push_back(p);
    }
    return world;
}

} // namespace hashchem
