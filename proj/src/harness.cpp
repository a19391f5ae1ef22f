#include "hashchem/harness.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <thread>

#include "hashchem/engine.hpp"
#include "hashchem/error.hpp"

namespace hashchem {

RunResult simulate_run(const Params& params, std::uint64_t master_seed, std::uint64_t attempt_index,
                       const std::vector<std::int64_t>& snapshot_ticks) {
    RunResult result;
    result.attempt_index = attempt_index;

    World world = init_world(params, derive_run_stream(master_seed, attempt_index));
    NoveltyRegistry registry;
    registry.absorb_world(world);

    auto wants_snapshot = [&](std::int64_t tick) {
        return std::find(snapshot_ticks.begin(), snapshot_ticks.end(), tick) != snapshot_ticks.end();
    };
    if (wants_snapshot(0)) {
        result.snapshots.push_back({0, world.particles});
    }

    result.records.reserve(static_cast<std::size_t>(params.steps));
    const RunSummary summary = run_world(world, [&](const StepOutcome& outcome, const World& w) {
        result.records.push_back(record_step(registry, outcome, w));
        if (wants_snapshot(w.tick)) {
            result.snapshots.push_back({w.tick, w.particles});
        }
    });
    result.extinct = summary.extinct;
    result.extinction_tick = summary.extinction_tick;
    return result;
}

std::int64_t CampaignSpec::effective_max_attempts() const noexcept {
    if (mode == CampaignMode::fixed_attempts) {
        return target_runs;
    }
    return max_attempts > 0 ? max_attempts : 10 * target_runs;
}

std::int64_t CampaignSpec::effective_parallelism() const noexcept {
    if (parallelism > 0) {
        return parallelism;
    }
    return std::max<std::int64_t>(1, std::thread::hardware_concurrency());
}

void CampaignSpec::validate() const {
    params.validate();
    if (target_runs < 1) throw ConfigError("target_runs", "must be >= 1");
    if (max_attempts < 0) throw ConfigError("max_attempts", "must be >= 0");
    if (max_attempts > 0 && max_attempts < target_runs) {
        throw ConfigError("max_attempts", "must be >= target_runs");
    }
    if (parallelism < 0) throw ConfigError("parallelism", "must be >= 0");
}

namespace {

// Attempts are handed out in index order. Once the finished attempts hold
// `target` survivors no new index is issued; the survivors with the lowest
// indices are then the same set a sequential loop would have accepted.
class AttemptScheduler {
public:
    AttemptScheduler(const CampaignSpec& spec) : spec_(spec), limit_(spec.effective_max_attempts()) {}

    std::optional<std::uint64_t> claim() {
        std::lock_guard lock(mutex_);
        if (next_ >= limit_) return std::nullopt;
        if (spec_.mode == CampaignMode::filter_extinct && survivors_ >= spec_.target_runs) return std::nullopt;
        return static_cast<std::uint64_t>(next_++);
    }

    void finish(RunResult run) {
        std::lock_guard lock(mutex_);
        if (!run.extinct) ++survivors_;
        finished_.emplace(run.attempt_index, std::move(run));
    }

    std::map<std::uint64_t, RunResult> take() { return std::move(finished_); }

private:
    const CampaignSpec& spec_;
    const std::int64_t limit_;
    std::mutex mutex_;
    std::int64_t next_ = 0;
    std::int64_t survivors_ = 0;
    std::map<std::uint64_t, RunResult> finished_;
};

} // namespace

CampaignResult run_campaign(const CampaignSpec& spec) {
    spec.validate();
    AttemptScheduler scheduler(spec);

    auto worker = [&] {
        while (auto index = scheduler.claim()) {
            scheduler.finish(simulate_run(spec.params, spec.master_seed, *index, spec.snapshot_ticks));
        }
    };
    const std::int64_t threads = std::min(spec.effective_parallelism(), spec.effective_max_attempts());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (std::int64_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    CampaignResult result;
    auto finished = scheduler.take();
    for (auto& [index, run] : finished) {
        if (spec.mode == CampaignMode::filter_extinct &&
            static_cast<std::int64_t>(result.accepted_runs.size()) >= spec.target_runs) {
            break;
        }
        ++result.attempts;
        if (run.extinct) {
            ++result.extinct_attempts;
            result.extinction_ticks.push_back(run.extinction_tick.value_or(0));
            if (spec.mode == CampaignMode::filter_extinct) {
                continue;
            }
        }
        result.accepted_runs.push_back(std::move(run));
    }
    if (result.attempts > 0) {
        result.extinction_probability =
            static_cast<double>(result.extinct_attempts) / static_cast<double>(result.attempts);
    }
    result.complete = spec.mode == CampaignMode::fixed_attempts ||
                      static_cast<std::int64_t>(result.accepted_runs.size()) >= spec.target_runs;
    return result;
}

} // namespace hashchem
