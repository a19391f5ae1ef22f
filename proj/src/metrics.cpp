#include "hashchem/metrics.hpp"

#include <algorithm>

#include "hashchem/fitness.hpp"

namespace hashchem {

std::size_t MultisetKeyHash::operator()(const MultisetKey& key) const noexcept {
    return static_cast<std::size_t>(hash_multiset(key.types()));
}

void NoveltyRegistry::absorb_world(const World& world) {
    for (const auto& p : world.particles) {
        types_.insert(p.type);
    }
}

void NoveltyRegistry::absorb_type(TypeId type) { types_.insert(type); }

void NoveltyRegistry::absorb_key(const MultisetKey& key) { keys_.insert(key); }

StepRecord record_step(NoveltyRegistry& registry, const StepOutcome& outcome, const World& world) {
    registry.absorb_world(world);
    for (const TypeId t : outcome.mutated_types) {
        registry.absorb_type(t);
    }

    StepRecord rec;
    rec.tick = outcome.tick;
    rec.population = static_cast<std::int64_t>(outcome.population);

    const auto& events = outcome.replication_events;
    if (!events.empty()) {
        double max_f = 0.0;
        double sum_f = 0.0;
        std::size_t max_size = 0;
        std::size_t total = 0;
        for (const auto& e : events) {
            registry.absorb_key(e.key);
            max_f = std::max(max_f, e.fitness);
            sum_f += e.fitness * static_cast<double>(e.size());
            max_size = std::max(max_size, e.size());
            total += e.size();
        }
        const auto count = static_cast<double>(events.size());
        rec.replicated_individuals = static_cast<std::int64_t>(total);
        rec.max_event_fitness = max_f;
        rec.mean_event_fitness = sum_f / static_cast<double>(total);
        rec.max_event_size = static_cast<std::int64_t>(max_size);
        rec.mean_event_size = static_cast<double>(total) / count;
    }
    rec.cum_unique_individual_types = registry.individual_types();
    rec.cum_unique_higher_order_types = registry.higher_order_types();
    return rec;
}

StepRecord extinct_record(const StepRecord& last, std::int64_t tick) {
    StepRecord rec;
    rec.tick = tick;
    rec.cum_unique_individual_types = last.cum_unique_individual_types;
    rec.cum_unique_higher_order_types = last.cum_unique_higher_order_types;
    return rec;
}

std::optional<double> field_value(const StepRecord& r, Field field) {
    switch (field) {
    case Field::population: return static_cast<double>(r.population);
    case Field::replicated: return static_cast<double>(r.replicated_individuals);
    case Field::max_fitness: return r.max_event_fitness;
    case Field::mean_fitness: return r.mean_event_fitness;
    case Field::max_size:
        if (r.max_event_size) return static_cast<double>(*r.max_event_size);
        return std::nullopt;
    case Field::mean_size: return r.mean_event_size;
    case Field::cum_individual_types: return static_cast<double>(r.cum_unique_individual_types);
    case Field::cum_higher_order_types: return static_cast<double>(r.cum_unique_higher_order_types);
    }
    return std::nullopt;
}

std::optional<double> Series::at(std::int64_t tick) const {
    if (tick < first_tick || tick > last_tick()) {
        return std::nullopt;
    }
    return values[static_cast<std::size_t>(tick - first_tick)];
}

Series extract_series(std::span<const StepRecord> records, Field field) {
    Series s;
    if (!records.empty()) {
        s.first_tick = records.front().tick;
    }
    s.values.reserve(records.size());
    for (const auto& r : records) {
        s.values.push_back(field_value(r, field));
    }
    return s;
}

Series max_replicated_fitness(std::span<const StepRecord> records) {
    return extract_series(records, Field::max_fitness);
}

} // namespace hashchem
