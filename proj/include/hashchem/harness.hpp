#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hashchem/core.hpp"
#include "hashchem/metrics.hpp"

namespace hashchem {

struct Snapshot {
    std::int64_t tick = 0;
    std::vector<Particle> particles;
};

struct RunResult {
    std::uint64_t attempt_index = 0;
    bool extinct = false;
    std::optional<std::int64_t> extinction_tick;
    std::vector<StepRecord> records; // one per completed step, ticks 1..n
    std::vector<Snapshot> snapshots;
};

/// Runs one simulation on the stream derived from (master_seed,
/// attempt_index), recording every step. Snapshots are taken after the
/// steps whose tick is listed (tick 0 means the initial world).
RunResult simulate_run(const Params& params, std::uint64_t master_seed, std::uint64_t attempt_index,
                       const std::vector<std::int64_t>& snapshot_ticks = {});

enum class CampaignMode {
    /// Keep launching attempts until `target_runs` survive; extinct runs are
    /// rejected.
    filter_extinct,
    /// Run exactly `target_runs` attempts and keep every one.
    fixed_attempts,
};

struct CampaignSpec {
    Params params;
    std::uint64_t master_seed = 1;
    std::int64_t target_runs = 50;
    std::int64_t max_attempts = 0; // 0 selects 10 * target_runs
    std::int64_t parallelism = 0;  // 0 selects the hardware concurrency
    CampaignMode mode = CampaignMode::filter_extinct;
    std::vector<std::int64_t> snapshot_ticks;

    std::int64_t effective_max_attempts() const noexcept;
    std::int64_t effective_parallelism() const noexcept;
    void validate() const;
};

struct CampaignResult {
    std::vector<RunResult> accepted_runs; // ordered by attempt index
    std::int64_t attempts = 0;
    std::int64_t extinct_attempts = 0;
    double extinction_probability = 0.0;
    /// False when filter mode ran out of attempts before reaching the target.
    bool complete = true;
    std::vector<std::int64_t> extinction_ticks; // of every extinct attempt counted
};

/// Result depends only on the fields of `spec` other than `parallelism`.
CampaignResult run_campaign(const CampaignSpec& spec);

} // namespace hashchem
