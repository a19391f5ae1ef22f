#include "hashchem/engine.hpp"

#include <algorithm>

#include "hashchem/error.hpp"

namespace hashchem {

std::size_t StepOutcome::replicated_individuals() const noexcept {
    std::size_t total = 0;
    for (const auto& e : replication_events) {
        total += e.size();
    }
    return total;
}

Stepper::Stepper(const Params& params) : index_(params.radius) {}

StepOutcome Stepper::step(World& world, const Evaluator& evaluator) {
    StepOutcome out;
    out.tick = world.tick;
    out.population_before = world.particles.size();
    if (world.particles.empty()) {
        return out;
    }
    if (world.tick >= world.params.steps) {
        throw PreconditionError("step: world already completed params.steps ticks");
    }
    if (index_.radius() != world.params.radius) {
        index_ = GridIndex(world.params.radius);
    }

    move(world);
    interact(world, evaluator, out);
    mutate(world, out);
    shuffle(world);

    ++world.tick;
    out.tick = world.tick;
    out.population = world.particles.size();
    return out;
}

void Stepper::move(World& world) {
    const double sigma = world.params.sigma;
    for (auto& p : world.particles) {
        const auto [dx, dy] = world.rng.half_normal_step(sigma);
        p.pos.x = std::clamp(p.pos.x + dx, 0.0, 1.0);
        p.pos.y = std::clamp(p.pos.y + dy, 0.0, 1.0);
    }
}

// Focal points are the particles present when the phase starts, visited in
// their current order. A focal particle removed earlier in the phase is
// skipped. Offspring are indexed immediately, so later queries see them,
// but they are never focal points in the tick they are born.
void Stepper::interact(World& world, const Evaluator& evaluator, StepOutcome& out) {
    auto& particles = world.particles;
    auto& rng = world.rng;
    const std::size_t focal_count = particles.size();
    const auto d_max = static_cast<double>(world.params.d_max);

    index_.clear();
    for (std::size_t i = 0; i < focal_count; ++i) {
        index_.insert(static_cast<std::uint32_t>(i), particles[i].pos);
    }
    alive_.assign(focal_count, 1);

    for (std::size_t focal = 0; focal < focal_count; ++focal) {
        if (!alive_[focal]) {
            continue;
        }
        neighbours_.clear();
        index_.query(particles[focal].pos, neighbours_);
        const std::size_t n = neighbours_.size();

        const auto k = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(n)));
        // Evaluation gate, probability 1/|s|. Drawn before the subset
        // because it depends on k alone.
        if (!(rng.uniform01() * static_cast<double>(k) < 1.0)) {
            continue;
        }
        // Uniform k-subset: partial Fisher-Yates over the neighbour list.
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t r = j + static_cast<std::size_t>(rng.below(n - j));
            std::swap(neighbours_[j], neighbours_[r]);
        }
        types_.clear();
        for (std::size_t j = 0; j < k; ++j) {
            types_.push_back(particles[neighbours_[j]].type);
        }
        std::sort(types_.begin(), types_.end());

        const double f = evaluator(types_, rng);
        if (rng.uniform01() < 1.0 - f) {
            for (std::size_t j = 0; j < k; ++j) {
                const std::uint32_t slot = neighbours_[j];
                alive_[slot] = 0;
                index_.remove(slot, particles[slot].pos);
            }
            out.deaths += k;
            continue;
        }
        const double room = std::clamp(1.0 - static_cast<double>(n) / d_max, 0.0, 1.0);
        if (rng.uniform01() < room) {
            for (std::size_t j = 0; j < k; ++j) {
                Particle copy = particles[neighbours_[j]];
                copy.id = world.issue_id();
                const auto slot = static_cast<std::uint32_t>(particles.size());
                particles.push_back(copy);
                alive_.push_back(1);
                index_.insert(slot, copy.pos);
            }
            ReplicationEvent event;
            event.tick = world.tick + 1;
            event.key = MultisetKey::from_types(types_);
            event.fitness = f;
            out.replication_events.push_back(std::move(event));
        }
    }

    if (out.deaths > 0) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < particles.size(); ++i) {
            if (alive_[i]) {
                particles[w++] = particles[i];
            }
        }
        particles.resize(w);
    }
}

void Stepper::mutate(World& world, StepOutcome& out) {
    const double mu = world.params.mu;
    if (mu <= 0.0) {
        return;
    }
    const std::int64_t k = world.params.types;
    for (auto& p : world.particles) {
        if (world.rng.uniform01() < mu) {
            p.type = static_cast<TypeId>(world.rng.uniform_int(1, k));
            out.mutated_types.push_back(p.type);
            ++out.mutations;
        }
    }
}

void Stepper::shuffle(World& world) {
    auto& particles = world.particles;
    for (std::size_t i = particles.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(world.rng.below(i));
        std::swap(particles[i - 1], particles[j]);
    }
}

StepOutcome step(World& world, const Evaluator& evaluator) {
    Stepper stepper(world.params);
    return stepper.step(world, evaluator);
}

RunSummary run_world(World& world, const StepObserver& observer) {
    return run_world(world, Evaluator::from_params(world.params), observer);
}

RunSummary run_world(World& world, const Evaluator& evaluator, const StepObserver& observer) {
    RunSummary summary;
    Stepper stepper(world.params);
    if (world.particles.empty()) {
        summary.extinct = true;
        summary.extinction_tick = world.tick;
        return summary;
    }
    while (world.tick < world.params.steps) {
        StepOutcome outcome = stepper.step(world, evaluator);
        if (observer) {
            observer(outcome, world);
        }
        ++summary.steps_completed;
        if (world.particles.empty()) {
            summary.extinct = true;
            summary.extinction_tick = world.tick;
            break;
        }
    }
    return summary;
}

} // namespace hashchem
