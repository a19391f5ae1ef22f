#include "hashchem/fitness.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "hashchem/error.hpp"

namespace hashchem {

std::uint64_t hash_multiset(std::span<const TypeId> types) {
    if (types.empty()) {
        throw PreconditionError("hash_multiset: empty key");
    }
    assert(std::is_sorted(types.begin(), types.end()) && "hash_multiset: key must be sorted");
    std::uint64_t h = kFnvOffsetBasis;
    for (const TypeId t : types) {
        for (int shift = 0; shift < 32; shift += 8) {
            h ^= (t >> shift) & 0xFFu;
            h *= kFnvPrime;
        }
    }
    return h;
}

Evaluator Evaluator::hash(std::uint64_t modulus) {
    if (modulus < 2) {
        throw ConfigError("modulus", "must be >= 2");
    }
    Evaluator e;
    e.kind_ = EvaluatorKind::hash;
    e.modulus_ = modulus;
    return e;
}

Evaluator Evaluator::uniform_random() {
    Evaluator e;
    e.kind_ = EvaluatorKind::uniform_random;
    return e;
}

Evaluator Evaluator::biased_random(double lo, double hi) {
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
        throw ConfigError("biased.lo", "need 0 <= lo < hi <= 1");
    }
    Evaluator e;
    e.kind_ = EvaluatorKind::biased_random;
    e.lo_ = lo;
    e.hi_ = hi;
    return e;
}

Evaluator Evaluator::constant(double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw PreconditionError("Evaluator::constant: value must be in [0, 1]");
    }
    Evaluator e;
    e.kind_ = EvaluatorKind::constant;
    e.lo_ = value;
    e.hi_ = value;
    return e;
}

Evaluator Evaluator::from_params(const Params& params) {
    switch (params.evaluator) {
    case EvaluatorKind::hash: return hash(static_cast<std::uint64_t>(params.modulus));
    case EvaluatorKind::uniform_random: return uniform_random();
    case EvaluatorKind::biased_random: return biased_random(params.biased_lo, params.biased_hi);
    case EvaluatorKind::constant: break;
    }
    return hash(static_cast<std::uint64_t>(params.modulus));
}

double Evaluator::operator()(std::span<const TypeId> sorted_types, RngStream& rng) const {
    switch (kind_) {
    case EvaluatorKind::hash:
        return hash_to_fitness(hash_multiset(sorted_types), modulus_);
    case EvaluatorKind::uniform_random:
        return rng.uniform01();
    case EvaluatorKind::biased_random:
    {
        const double f = lo_ + (hi_ - lo_) * rng.uniform01();
        return f < hi_ ? f : std::nextafter(hi_, lo_);
    }
    case EvaluatorKind::constant:
        return lo_;
    }
    return 0.0;
}

double fitness_of(const Evaluator& evaluator, const MultisetKey& key, RngStream& rng) {
    return evaluator(key.types(), rng);
}

} // namespace hashchem
