#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "hashchem/core.hpp"
#include "hashchem/engine.hpp"

namespace hashchem {

/// One row of the per-run time series.
///
/// A replicated individual carries the fitness of the event that copied it,
/// so mean_event_fitness averages over replicated individuals (events
/// weighted by size), while mean_event_size averages over events.
struct StepRecord {
    std::int64_t tick = 0;
    std::int64_t population = 0;
    std::int64_t replicated_individuals = 0;
    std::optional<double> max_event_fitness;
    std::optional<double> mean_event_fitness;
    std::optional<std::int64_t> max_event_size;
    std::optional<double> mean_event_size;
    std::int64_t cum_unique_individual_types = 0;
    std::int64_t cum_unique_higher_order_types = 0;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct MultisetKeyHash {
    std::size_t operator()(const MultisetKey& key) const noexcept;
};

/// Insert-only registries of every individual type that has appeared and
/// every multiset that has successfully replicated.
class NoveltyRegistry {
public:
    NoveltyRegistry() = default;

    /// Seeds the individual-type registry with the types alive in `world`.
    void absorb_world(const World& world);
    void absorb_type(TypeId type);
    void absorb_key(const MultisetKey& key);

    std::int64_t individual_types() const noexcept { return static_cast<std::int64_t>(types_.size()); }
    std::int64_t higher_order_types() const noexcept { return static_cast<std::int64_t>(keys_.size()); }

private:
    std::unordered_set<TypeId> types_;
    std::unordered_set<MultisetKey, MultisetKeyHash> keys_;
};

/// Folds one step into the registry and summarizes it. `world` is the state
/// right after the step that produced `outcome`.
StepRecord record_step(NoveltyRegistry& registry, const StepOutcome& outcome, const World& world);

/// Row emitted for ticks after a run went extinct: nobody alive, nothing
/// replicated, counters frozen at `last`.
StepRecord extinct_record(const StepRecord& last, std::int64_t tick);

/// Named numeric columns of StepRecord, in CSV order after `tick`.
enum class Field {
    population,
    replicated,
    max_fitness,
    mean_fitness,
    max_size,
    mean_size,
    cum_individual_types,
    cum_higher_order_types,
};

inline constexpr Field kAllFields[] = {
    Field::population,   Field::replicated, Field::max_fitness,          Field::mean_fitness,
    Field::max_size,     Field::mean_size,  Field::cum_individual_types, Field::cum_higher_order_types,
};

std::optional<double> field_value(const StepRecord& record, Field field);

/// Time series of one field; `values[i]` belongs to tick `first_tick + i`.
struct Series {
    std::int64_t first_tick = 1;
    std::vector<std::optional<double>> values;

    std::int64_t last_tick() const noexcept { return first_tick + static_cast<std::int64_t>(values.size()) - 1; }
    std::optional<double> at(std::int64_t tick) const;
};

Series extract_series(std::span<const StepRecord> records, Field field);

/// Maximum replicated fitness per tick; ticks without replication are empty.
Series max_replicated_fitness(std::span<const StepRecord> records);

} // namespace hashchem
