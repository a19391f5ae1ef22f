// hashchem command-line driver. Talks to the simulator only through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hashchem/hashchem.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitOracle = 2;
constexpr int kExitIncomplete = 3;

struct ConfigDeleter {
    void operator()(hc_config* c) const { hc_config_free(c); }
};
struct CampaignDeleter {
    void operator()(hc_campaign* c) const { hc_campaign_free(c); }
};

int report_error(hc_status status, const char* what) {
    std::cerr << "hashchem: " << what << ": " << hc_last_error() << '\n';
    switch (status) {
    case HC_ERR_ORACLE: return kExitOracle;
    case HC_ERR_INCOMPLETE: return kExitIncomplete;
    default: return kExitConfig;
    }
}

// Creates the directory and proves it is writable before any long campaign.
bool ensure_writable(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir, ec)) {
        return false;
    }
    const fs::path probe = fs::path(dir) / ".hashchem_write_probe";
    {
        std::ofstream out(probe);
        if (!(out << "ok")) {
            return false;
        }
    }
    fs::remove(probe, ec);
    return true;
}

struct RunOptions {
    std::string preset;
    std::string config_file;
    std::optional<std::string> seed;
    std::vector<std::pair<std::string, std::string>> overrides;
};

void print_oracle(const char* oracle, int passed, const char* detail, double seconds, void*) {
    std::printf("[%s] %s (%s, %.2fs)\n", passed ? "PASS" : "FAIL", oracle, detail, seconds);
    std::fflush(stdout);
}

int cmd_run(const RunOptions& opts) {
    hc_config* raw = nullptr;
    if (auto s = hc_config_new(&raw); s != HC_OK) return report_error(s, "config");
    std::unique_ptr<hc_config, ConfigDeleter> config(raw);

    if (!opts.preset.empty()) {
        if (auto s = hc_config_apply_preset(config.get(), opts.preset.c_str()); s != HC_OK) {
            return report_error(s, "preset");
        }
    }
    if (!opts.config_file.empty()) {
        if (auto s = hc_config_load_file(config.get(), opts.config_file.c_str()); s != HC_OK) {
            return report_error(s, "config file");
        }
    }
    std::optional<std::string> seed = opts.seed;
    if (!seed) {
        if (const char* env = std::getenv("HASHCHEM_SEED"); env && *env) {
            seed = env;
        }
    }
    if (seed) {
        if (auto s = hc_config_set(config.get(), "seed", seed->c_str()); s != HC_OK) return report_error(s, "seed");
    }
    for (const auto& [key, value] : opts.overrides) {
        if (auto s = hc_config_set(config.get(), key.c_str(), value.c_str()); s != HC_OK) {
            return report_error(s, "option");
        }
    }
    if (auto s = hc_config_validate(config.get()); s != HC_OK) return report_error(s, "config");

    size_t needed = 0;
    hc_config_get(config.get(), "out", nullptr, 0, &needed);
    std::string out_dir(needed, '\0');
    hc_config_get(config.get(), "out", out_dir.data(), out_dir.size(), &needed);
    out_dir.resize(needed - 1);
    if (!ensure_writable(out_dir)) {
        std::cerr << "hashchem: output directory '" << out_dir << "' is not writable\n";
        return kExitConfig;
    }

    hc_campaign* raw_campaign = nullptr;
    if (auto s = hc_campaign_run(config.get(), &raw_campaign); s != HC_OK) return report_error(s, "campaign");
    std::unique_ptr<hc_campaign, CampaignDeleter> campaign(raw_campaign);

    if (auto s = hc_campaign_write(campaign.get(), nullptr); s != HC_OK) return report_error(s, "write");

    hc_campaign_info info{};
    hc_campaign_info_get(campaign.get(), &info);
    std::printf("attempts=%lld accepted=%lld extinct=%lld extinction_probability=%.4f wall=%.2fs out=%s\n",
                static_cast<long long>(info.attempts), static_cast<long long>(info.accepted),
                static_cast<long long>(info.extinct_attempts), info.extinction_probability, info.wall_seconds,
                out_dir.c_str());
    if (!info.complete) {
        std::cerr << "hashchem: warning: max attempts exhausted before reaching the target run count\n";
        return kExitIncomplete;
    }
    return kExitOk;
}

int cmd_verify(bool inject_fault) {
    const hc_status s = hc_verify(inject_fault ? 1 : 0, print_oracle, nullptr);
    if (s == HC_OK) {
        std::printf("all oracles passed\n");
        return kExitOk;
    }
    if (s == HC_ERR_ORACLE) {
        std::printf("oracle failure\n");
        return kExitOracle;
    }
    return report_error(s, "verify");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hash Chemistry simulator and experiment harness"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hc_version()));

    RunOptions run_opts;
    auto* run = app.add_subcommand("run", "Run a Monte Carlo campaign and write CSV/JSON/SVG outputs");
    run->add_option("--preset", run_opts.preset, "main | control-uniform | control-biased")
        ->check(CLI::IsMember({"main", "control-uniform", "control-biased"}));
    run->add_option("--config", run_opts.config_file, "JSON config file (applied after --preset)");
    run->add_option_function<std::string>(
        "--seed", [&](const std::string& v) { run_opts.seed = v; },
        "Master seed, decimal or 0x-hex (fallback: $HASHCHEM_SEED)");

    struct Flag {
        const char* flag;
        const char* key;
        const char* help;
    };
    const Flag flags[] = {
        {"--steps", "steps", "Time steps per run"},
        {"--target-runs", "target_runs", "Non-extinct runs wanted (attempt count in fixed mode)"},
        {"--max-attempts", "max_attempts", "Attempt cap in filter mode (default 10x target)"},
        {"--mode", "mode", "filter | fixed"},
        {"--evaluator", "evaluator", "hash | uniform | biased"},
        {"--biased-lo", "biased.lo", "Lower bound of the biased evaluator"},
        {"--biased-hi", "biased.hi", "Upper bound of the biased evaluator"},
        {"--sigma", "sigma", "Half-normal movement scale"},
        {"--radius", "radius", "Interaction radius"},
        {"--mu", "mu", "Mutation probability"},
        {"--dmax", "dmax", "Maximum local density"},
        {"--modulus", "modulus", "Fitness modulus m"},
        {"--types", "types", "Number of individual types K"},
        {"--init-pop", "init_pop", "Initial particle count"},
        {"--parallelism", "parallelism", "Concurrent runs (0 = all cores)"},
        {"-o,--out", "out", "Output directory"},
        {"--snapshot-ticks", "snapshot_ticks", "Comma-separated ticks for scatter snapshots"},
        {"--fit-sampling", "fit_sampling", "every_tick | log_spaced | both"},
        {"--fit-log-points", "fit_log_points", "Points in the log-spaced fit grid"},
    };
    for (const auto& f : flags) {
        const std::string key = f.key;
        run->add_option_function<std::string>(
            f.flag, [&run_opts, key](const std::string& v) { run_opts.overrides.emplace_back(key, v); }, f.help);
    }
    run->add_flag_callback(
        "--plot", [&] { run_opts.overrides.emplace_back("plot", "true"); }, "Emit SVG charts and snapshots");

    bool inject_fault = false;
    auto* verify = app.add_subcommand("verify", "Run the built-in oracle checks");
    verify->add_flag("--inject-grid-fault", inject_fault, "Negative control: break the grid query");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        return cmd_run(run_opts);
    }
    if (verify->parsed()) {
        return cmd_verify(inject_fault);
    }
    return kExitConfig;
}
