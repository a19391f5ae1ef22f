#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hashchem/config.hpp"
#include "hashchem/error.hpp"
#include "hashchem/output.hpp"

using namespace hashchem;
namespace fs = std::filesystem;

TEST_CASE("presets") {
    Config c;
    set_option(c, "seed", "99");
    set_option(c, "parallelism", "3");

    apply_preset(c, "control-uniform");
    CHECK(c.campaign.params.evaluator == EvaluatorKind::uniform_random);
    CHECK(c.campaign.target_runs == 100);
    CHECK(c.campaign.mode == CampaignMode::fixed_attempts);

    apply_preset(c, "control-biased");
    CHECK(c.campaign.params.evaluator == EvaluatorKind::biased_random);
    CHECK(c.campaign.params.biased_lo == 0.2);
    CHECK(c.campaign.params.biased_hi == 1.0);
    CHECK(c.campaign.target_runs == 30);
    CHECK(c.campaign.mode == CampaignMode::filter_extinct);

    apply_preset(c, "main");
    CHECK(c.campaign.params == Params{});
    CHECK(c.campaign.target_runs == 50);
    // Seed and parallelism survive a preset.
    CHECK(c.campaign.master_seed == 99);
    CHECK(c.campaign.parallelism == 3);

    CHECK_THROWS_AS(apply_preset(c, "bogus"), ConfigError);
}

TEST_CASE("set_option") {
    Config c;
    set_option(c, "target-runs", "7");
    set_option(c, "init_pop", "12");
    set_option(c, "seed", "0x10");
    set_option(c, "snapshot_ticks", "0,5,9");
    set_option(c, "mode", "fixed");
    CHECK(c.campaign.target_runs == 7);
    CHECK(c.campaign.params.init_pop == 12);
    CHECK(c.campaign.master_seed == 16);
    CHECK(c.snapshot_ticks == std::vector<std::int64_t>{0, 5, 9});
    CHECK(get_option(c, "target_runs") == "7");

    try {
        set_option(c, "frobnicate", "1");
        FAIL("unknown key accepted");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "frobnicate");
    }
    CHECK_THROWS_AS(set_option(c, "steps", "ten"), ConfigError);
    CHECK_THROWS_AS(set_option(c, "mode", "sometimes"), ConfigError);
}

TEST_CASE("JSON configuration") {
    Config c;
    apply_json(c, R"({"steps": 20, "preset": "control-biased", "biased": {"lo": 0.3}, "mu": 0.02})");
    CHECK(c.campaign.params.evaluator == EvaluatorKind::biased_random);
    CHECK(c.campaign.params.steps == 20);
    CHECK(c.campaign.params.biased_lo == 0.3);
    CHECK(c.campaign.params.mu == 0.02);

    CHECK_THROWS_AS(apply_json(c, "[1,2]"), ConfigError);
    CHECK_THROWS_AS(apply_json(c, "{"), ConfigError);
    CHECK_THROWS_AS(apply_json(c, R"({"mu": null})"), ConfigError);
    CHECK_THROWS_AS(apply_json(c, R"({"colour": "red"})"), ConfigError);

    // The echo reloads to the same configuration.
    Config reloaded;
    apply_json(reloaded, config_to_json(c));
    CHECK(config_to_json(reloaded) == config_to_json(c));
    CHECK(reloaded.campaign.params == c.campaign.params);
}

TEST_CASE("validation") {
    Config c;
    set_option(c, "sigma", "-1");
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    set_option(c, "max_attempts", "3");
    CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("CSV rows") {
    StepRecord r;
    r.tick = 3;
    r.population = 12;
    r.cum_unique_individual_types = 10;
    r.cum_unique_higher_order_types = 0;
    CHECK(csv_row(r) == "3,12,0,,,,,10,0");

    r.replicated_individuals = 3;
    r.max_event_fitness = 0.63254;
    r.mean_event_fitness = 0.5;
    r.max_event_size = 2;
    r.mean_event_size = 1.5;
    r.cum_unique_higher_order_types = 2;
    CHECK(csv_row(r) == "3,12,3,0.63254,0.5,2,1.5,10,2");

    std::ostringstream out;
    write_records_csv(out, std::vector<StepRecord>{r});
    CHECK(out.str() == std::string(kCsvHeader) + "\n3,12,3,0.63254,0.5,2,1.5,10,2\n");

    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(2.0) == "2");
}

TEST_CASE("padding past extinction") {
    RunResult run;
    run.extinct = true;
    StepRecord last;
    last.tick = 2;
    last.cum_unique_individual_types = 5;
    run.records = {StepRecord{.tick = 1}, last};
    const auto padded = padded_records(run, 5);
    REQUIRE(padded.size() == 5);
    CHECK(padded[4].tick == 5);
    CHECK(padded[4].population == 0);
    CHECK(padded[4].cum_unique_individual_types == 5);
}

TEST_CASE("campaign outputs on disk") {
    Config c;
    set_option(c, "steps", "120");
    set_option(c, "target_runs", "2");
    set_option(c, "plot", "true");
    const fs::path dir = fs::temp_directory_path() / "hashchem_test_outputs";
    fs::remove_all(dir);
    c.output_dir = dir.string();
    CampaignSpec spec = c.campaign;
    spec.snapshot_ticks = c.snapshot_ticks;
    const CampaignResult result = run_campaign(spec);
    write_campaign_outputs(c, result, 0.5);

    for (const char* name : {"run_0.csv", "run_1.csv", "average.csv", "campaign.json", "fits.json",
                             "fig2_max_fitness.svg", "fig3_mean_size.svg", "fig5_higher_order_types.svg",
                             "snapshot_t30.svg", "snapshot_t100.svg"}) {
        CHECK_MESSAGE(fs::exists(dir / name), name);
    }
    std::ifstream csv(dir / "run_0.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == kCsvHeader);
    std::size_t rows = 0;
    for (std::string line; std::getline(csv, line);) ++rows;
    CHECK(rows == 120);

    std::ifstream campaign(dir / "campaign.json");
    const auto doc = nlohmann::json::parse(campaign);
    CHECK(doc["status"] == "ok");
    CHECK(doc["accepted"] == 2);
    CHECK(doc["config"]["steps"] == 120);

    std::ifstream fits(dir / "fits.json");
    const auto fdoc = nlohmann::json::parse(fits);
    CHECK(fdoc["series"]["mean_size"].contains("every_tick"));
    CHECK(fdoc["series"]["mean_size"].contains("log_spaced"));
    fs::remove_all(dir);
}
