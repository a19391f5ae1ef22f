#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hashchem/core.hpp"
#include "hashchem/fitness.hpp"
#include "hashchem/spatial.hpp"

namespace hashchem {

struct ReplicationEvent {
    std::int64_t tick = 0;
    MultisetKey key;
    double fitness = 0.0;

    std::size_t size() const noexcept { return key.size(); }
};

struct StepOutcome {
    std::int64_t tick = 0; // tick reached after the step
    std::size_t population_before = 0;
    std::size_t population = 0;
    std::vector<ReplicationEvent> replication_events;
    std::size_t deaths = 0;
    std::size_t mutations = 0;
    /// Types assigned by this step's mutations, in particle order.
    std::vector<TypeId> mutated_types;

    std::size_t replicated_individuals() const noexcept;
};

/// Owns the per-run scratch state of the update rule: the neighbour index
/// and buffers reused across steps.
class Stepper {
public:
    Stepper() = default;
    explicit Stepper(const Params& params);

    /// One update: movement, interaction, mutation, shuffle. On an extinct
    /// world returns an empty outcome without advancing the tick.
    StepOutcome step(World& world, const Evaluator& evaluator);

    const GridIndex& index() const noexcept { return index_; }
    void set_grid_fault(GridIndex::Fault fault) noexcept { index_.set_fault(fault); }

private:
    void move(World& world);
    void interact(World& world, const Evaluator& evaluator, StepOutcome& out);
    void mutate(World& world, StepOutcome& out);
    void shuffle(World& world);

    GridIndex index_;
    std::vector<char> alive_;
    std::vector<std::uint32_t> neighbours_;
    std::vector<TypeId> types_;
};

/// Convenience single step with a freshly built index.
StepOutcome step(World& world, const Evaluator& evaluator);

struct RunSummary {
    bool extinct = false;
    std::optional<std::int64_t> extinction_tick;
    std::int64_t steps_completed = 0;
};

using StepObserver = std::function<void(const StepOutcome&, const World&)>;

/// Steps `world` until params.steps ticks have elapsed or the population
/// reaches zero. `observer` sees every outcome together with the world
/// state after that step.
RunSummary run_world(World& world, const StepObserver& observer = {});
RunSummary run_world(World& world, const Evaluator& evaluator, const StepObserver& observer = {});

} // namespace hashchem
