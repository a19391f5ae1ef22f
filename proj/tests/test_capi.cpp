// Exercises the shared library through its C header only.
#include <doctest.h>

#include <string>
#include <vector>

#include "hashchem/hashchem.h"

namespace {

std::string config_get(const hc_config* c, const char* key) {
    size_t needed = 0;
    REQUIRE(hc_config_get(c, key, nullptr, 0, &needed) == HC_OK);
    std::string text(needed, '\0');
    REQUIRE(hc_config_get(c, key, text.data(), text.size(), &needed) == HC_OK);
    text.resize(needed - 1);
    return text;
}

} // namespace

TEST_CASE("C API: hashing") {
    const uint32_t types[] = {7, 3, 7};
    uint64_t h = 0;
    REQUIRE(hc_hash_multiset(types, 3, &h) == HC_OK);
    CHECK(h == 0xCEAAAD76F03ED976ULL);
    double f = 0;
    REQUIRE(hc_hash_fitness(types, 3, 100000, &f) == HC_OK);
    CHECK(f == 0.63254);
    CHECK(hc_hash_multiset(types, 0, &h) == HC_ERR_ARGUMENT);
    CHECK(std::string(hc_last_error()).find("non-empty") != std::string::npos);
    CHECK(hc_hash_fitness(types, 3, 1, &f) == HC_ERR_ARGUMENT);
}

TEST_CASE("C API: configuration") {
    hc_config* c = nullptr;
    REQUIRE(hc_config_new(&c) == HC_OK);
    CHECK(hc_config_apply_preset(c, "control-biased") == HC_OK);
    CHECK(config_get(c, "evaluator") == "biased");
    CHECK(hc_config_set(c, "steps", "12") == HC_OK);
    CHECK(config_get(c, "steps") == "12");
    CHECK(hc_config_set(c, "nonsense", "1") == HC_ERR_CONFIG);
    CHECK(hc_config_load_json(c, "{\"mu\": 0.5}") == HC_OK);
    CHECK(hc_config_load_json(c, "not json") == HC_ERR_CONFIG);
    CHECK(hc_config_load_file(c, "/nonexistent/config.json") == HC_ERR_CONFIG);
    CHECK(hc_config_validate(c) == HC_OK);

    char small[4];
    size_t needed = 0;
    CHECK(hc_config_to_json(c, small, sizeof small, &needed) == HC_ERR_ARGUMENT);
    CHECK(needed > sizeof small);
    CHECK(small[3] == '\0');
    CHECK(hc_config_apply_preset(nullptr, "main") == HC_ERR_ARGUMENT);
    hc_config_free(c);
}

TEST_CASE("C API: world stepping") {
    hc_config* c = nullptr;
    REQUIRE(hc_config_new(&c) == HC_OK);
    REQUIRE(hc_config_set(c, "steps", "30") == HC_OK);
    hc_world* w = nullptr;
    REQUIRE(hc_world_new(c, 42, &w) == HC_OK);
    CHECK(hc_world_tick(w) == 0);
    CHECK(hc_world_population(w) == 10);
    for (int i = 0; i < 30 && hc_world_population(w) > 0; ++i) {
        const uint64_t before = hc_world_population(w);
        hc_step_info info{};
        REQUIRE(hc_world_step(w, &info) == HC_OK);
        CHECK(info.population == before + info.replicated_individuals - info.deaths);
    }
    std::vector<hc_particle> ps(hc_world_population(w));
    size_t written = 0;
    CHECK(hc_world_particles(w, ps.data(), ps.size(), &written) == HC_OK);
    CHECK(written == ps.size());
    if (hc_world_tick(w) == 30) {
        CHECK(hc_world_step(w, nullptr) == HC_ERR_ARGUMENT);
    }
    hc_world_free(w);
    hc_config_free(c);
}

TEST_CASE("C API: campaign") {
    hc_config* c = nullptr;
    REQUIRE(hc_config_new(&c) == HC_OK);
    REQUIRE(hc_config_set(c, "steps", "40") == HC_OK);
    REQUIRE(hc_config_set(c, "target_runs", "2") == HC_OK);
    hc_campaign* run = nullptr;
    REQUIRE(hc_campaign_run(c, &run) == HC_OK);
    hc_campaign_info info{};
    REQUIRE(hc_campaign_info_get(run, &info) == HC_OK);
    CHECK(info.accepted == 2);
    CHECK(info.complete == 1);
    size_t len = 0;
    REQUIRE(hc_campaign_run_length(run, 0, &len) == HC_OK);
    CHECK(len == 40);
    std::vector<hc_step_record> recs(len);
    size_t written = 0;
    REQUIRE(hc_campaign_run_records(run, 0, recs.data(), recs.size(), &written) == HC_OK);
    CHECK(written == 40);
    CHECK(recs[0].tick == 1);
    CHECK(recs[39].tick == 40);
    CHECK(hc_campaign_run_length(run, 2, &len) == HC_ERR_ARGUMENT);
    CHECK(hc_campaign_write(run, "/proc/hashchem-not-writable") == HC_ERR_IO);
    hc_campaign_free(run);
    hc_config_free(c);
}

TEST_CASE("C API: version") { CHECK(std::string(hc_version()) == "0.1.0"); }
