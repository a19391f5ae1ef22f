#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hashchem/analysis.hpp"
#include "hashchem/harness.hpp"

namespace hashchem {

enum class FitSampling { every_tick, log_spaced, both };

/// Everything a `run` invocation needs. Defaults reproduce the main
/// experiment.
struct Config {
    CampaignSpec campaign;
    std::string output_dir = "out";
    bool plot = false;
    std::vector<std::int64_t> snapshot_ticks{30, 100, 300, 1000};
    FitSampling fit_sampling = FitSampling::both;
    std::size_t fit_log_points = 100;
};

/// Names accepted by apply_preset: "main", "control-uniform",
/// "control-biased".
std::vector<std::string> preset_names();

/// Resets the campaign to the named experiment. Throws ConfigError.
void apply_preset(Config& config, std::string_view name);

/// Sets one option from its textual value. Keys: seed, steps, target_runs,
/// max_attempts, mode, evaluator, biased.lo, biased.hi, sigma, radius, mu,
/// dmax, modulus, types, init_pop, parallelism, out, plot, snapshot_ticks,
/// fit_sampling, fit_log_points, preset. Dashes and underscores are
/// interchangeable. Unknown keys throw ConfigError.
void set_option(Config& config, std::string_view key, std::string_view value);

/// Applies a JSON object of options. A "preset" key is applied first;
/// nested objects are flattened with '.' ("biased": {"lo": 0.3}).
void apply_json(Config& config, std::string_view json_text);
void load_config_file(Config& config, const std::string& path);

/// Textual value of one option as it would be accepted by set_option.
std::string get_option(const Config& config, std::string_view key);

/// Echo of every option, as a JSON object string.
std::string config_to_json(const Config& config);

/// Full validation, including the campaign spec.
void validate(const Config& config);

} // namespace hashchem
