#include "hashchem/hashchem.h"

#include <chrono>
#include <cstring>
#include <string>

#include "hashchem/config.hpp"
#include "hashchem/engine.hpp"
#include "hashchem/error.hpp"
#include "hashchem/fitness.hpp"
#include "hashchem/harness.hpp"
#include "hashchem/output.hpp"
#include "hashchem/verify.hpp"

struct hc_config {
    hashchem::Config config;
};

struct hc_campaign {
    hashchem::Config config;
    hashchem::CampaignResult result;
    double wall_seconds = 0.0;
};

struct hc_world {
    hashchem::World world;
    hashchem::Evaluator evaluator;
    hashchem::Stepper stepper;
};

namespace {

thread_local std::string g_last_error;

hc_status fail(hc_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <class F>
hc_status guarded(F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const hashchem::ConfigError& e) {
        return fail(HC_ERR_CONFIG, e.what());
    } catch (const hashchem::IoError& e) {
        return fail(HC_ERR_IO, e.what());
    } catch (const hashchem::PreconditionError& e) {
        return fail(HC_ERR_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(HC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(HC_ERR_INTERNAL, "unknown error");
    }
}

#define HC_REQUIRE(cond, msg)                                                                                          \
    do {                                                                                                               \
        if (!(cond)) return fail(HC_ERR_ARGUMENT, msg);                                                                \
    } while (0)

} // namespace

extern "C" {

const char* hc_version(void) { return "0.1.0"; }

const char* hc_last_error(void) { return g_last_error.c_str(); }

hc_status hc_config_new(hc_config** out) {
    HC_REQUIRE(out, "hc_config_new: null output");
    return guarded([&] {
        *out = new hc_config{};
        return HC_OK;
    });
}

void hc_config_free(hc_config* config) { delete config; }

hc_status hc_config_apply_preset(hc_config* config, const char* name) {
    HC_REQUIRE(config && name, "hc_config_apply_preset: null argument");
    return guarded([&] {
        hashchem::apply_preset(config->config, name);
        return HC_OK;
    });
}

hc_status hc_config_set(hc_config* config, const char* key, const char* value) {
    HC_REQUIRE(config && key && value, "hc_config_set: null argument");
    return guarded([&] {
        hashchem::set_option(config->config, key, value);
        return HC_OK;
    });
}

hc_status hc_config_load_file(hc_config* config, const char* path) {
    HC_REQUIRE(config && path, "hc_config_load_file: null argument");
    return guarded([&] {
        hashchem::load_config_file(config->config, path);
        return HC_OK;
    });
}

hc_status hc_config_load_json(hc_config* config, const char* json_text) {
    HC_REQUIRE(config && json_text, "hc_config_load_json: null argument");
    return guarded([&] {
        hashchem::apply_json(config->config, json_text);
        return HC_OK;
    });
}

static hc_status copy_out(const std::string& text, char* buf, size_t capacity, size_t* needed) {
    if (needed) *needed = text.size() + 1;
    if (buf && capacity > 0) {
        const size_t n = std::min(capacity - 1, text.size());
        std::memcpy(buf, text.data(), n);
        buf[n] = '\0';
        if (n < text.size()) return fail(HC_ERR_ARGUMENT, "buffer too small");
    }
    return HC_OK;
}

hc_status hc_config_to_json(const hc_config* config, char* buf, size_t capacity, size_t* needed) {
    HC_REQUIRE(config, "hc_config_to_json: null config");
    return guarded([&] { return copy_out(hashchem::config_to_json(config->config), buf, capacity, needed); });
}

hc_status hc_config_get(const hc_config* config, const char* key, char* buf, size_t capacity, size_t* needed) {
    HC_REQUIRE(config && key, "hc_config_get: null argument");
    return guarded([&] { return copy_out(hashchem::get_option(config->config, key), buf, capacity, needed); });
}

hc_status hc_config_validate(const hc_config* config) {
    HC_REQUIRE(config, "hc_config_validate: null config");
    return guarded([&] {
        hashchem::validate(config->config);
        return HC_OK;
    });
}

hc_status hc_campaign_run(const hc_config* config, hc_campaign** out) {
    HC_REQUIRE(config && out, "hc_campaign_run: null argument");
    return guarded([&] {
        hashchem::validate(config->config);
        auto campaign = std::make_unique<hc_campaign>();
        campaign->config = config->config;
        hashchem::CampaignSpec spec = campaign->config.campaign;
        if (campaign->config.plot) {
            spec.snapshot_ticks = campaign->config.snapshot_ticks;
        }
        const auto start = std::chrono::steady_clock::now();
        campaign->result = hashchem::run_campaign(spec);
        campaign->wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        *out = campaign.release();
        return HC_OK;
    });
}

void hc_campaign_free(hc_campaign* campaign) { delete campaign; }

hc_status hc_campaign_info_get(const hc_campaign* campaign, hc_campaign_info* out) {
    HC_REQUIRE(campaign && out, "hc_campaign_info_get: null argument");
    const auto& r = campaign->result;
    out->attempts = r.attempts;
    out->accepted = static_cast<int64_t>(r.accepted_runs.size());
    out->extinct_attempts = r.extinct_attempts;
    out->extinction_probability = r.extinction_probability;
    out->complete = r.complete ? 1 : 0;
    out->wall_seconds = campaign->wall_seconds;
    return HC_OK;
}

hc_status hc_campaign_write(const hc_campaign* campaign, const char* output_dir) {
    HC_REQUIRE(campaign, "hc_campaign_write: null campaign");
    return guarded([&] {
        hashchem::Config config = campaign->config;
        if (output_dir) {
            config.output_dir = output_dir;
        }
        hashchem::write_campaign_outputs(config, campaign->result, campaign->wall_seconds);
        return HC_OK;
    });
}

hc_status hc_campaign_run_length(const hc_campaign* campaign, size_t run, size_t* out) {
    HC_REQUIRE(campaign && out, "hc_campaign_run_length: null argument");
    HC_REQUIRE(run < campaign->result.accepted_runs.size(), "hc_campaign_run_length: run index out of range");
    *out = campaign->result.accepted_runs[run].records.size();
    return HC_OK;
}

hc_status hc_campaign_run_records(const hc_campaign* campaign, size_t run, hc_step_record* buf, size_t capacity,
                                  size_t* written) {
    HC_REQUIRE(campaign && (buf || capacity == 0), "hc_campaign_run_records: null argument");
    HC_REQUIRE(run < campaign->result.accepted_runs.size(), "hc_campaign_run_records: run index out of range");
    const auto& records = campaign->result.accepted_runs[run].records;
    const size_t n = std::min(capacity, records.size());
    for (size_t i = 0; i < n; ++i) {
        const auto& r = records[i];
        hc_step_record& o = buf[i];
        o.tick = r.tick;
        o.population = r.population;
        o.replicated = r.replicated_individuals;
        o.has_events = r.max_event_size ? 1 : 0;
        o.max_fitness = r.max_event_fitness.value_or(0.0);
        o.mean_fitness = r.mean_event_fitness.value_or(0.0);
        o.max_size = r.max_event_size.value_or(0);
        o.mean_size = r.mean_event_size.value_or(0.0);
        o.cum_individual_types = r.cum_unique_individual_types;
        o.cum_higher_order_types = r.cum_unique_higher_order_types;
    }
    if (written) *written = n;
    return HC_OK;
}

hc_status hc_verify(int inject_grid_fault, hc_report_fn report, void* user) {
    return guarded([&] {
        hashchem::VerifyOptions options;
        options.inject_grid_fault = inject_grid_fault != 0;
        const bool ok = hashchem::run_verification(options, [&](const hashchem::OracleReport& r) {
            if (report) {
                report(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds, user);
            }
        });
        return ok ? HC_OK : fail(HC_ERR_ORACLE, "one or more oracles failed");
    });
}

hc_status hc_world_new(const hc_config* config, uint64_t seed, hc_world** out) {
    HC_REQUIRE(config && out, "hc_world_new: null argument");
    return guarded([&] {
        const auto& params = config->config.campaign.params;
        auto w = std::make_unique<hc_world>(hc_world{hashchem::init_world(params, seed),
                                                     hashchem::Evaluator::from_params(params),
                                                     hashchem::Stepper(params)});
        *out = w.release();
        return HC_OK;
    });
}

void hc_world_free(hc_world* world) { delete world; }

hc_status hc_world_step(hc_world* world, hc_step_info* out) {
    HC_REQUIRE(world, "hc_world_step: null world");
    return guarded([&] {
        const auto outcome = world->stepper.step(world->world, world->evaluator);
        if (out) {
            out->tick = outcome.tick;
            out->population = outcome.population;
            out->replication_events = outcome.replication_events.size();
            out->replicated_individuals = outcome.replicated_individuals();
            out->deaths = outcome.deaths;
            out->mutations = outcome.mutations;
        }
        return HC_OK;
    });
}

int64_t hc_world_tick(const hc_world* world) { return world ? world->world.tick : -1; }

uint64_t hc_world_population(const hc_world* world) { return world ? world->world.particles.size() : 0; }

hc_status hc_world_particles(const hc_world* world, hc_particle* buf, size_t capacity, size_t* written) {
    HC_REQUIRE(world && (buf || capacity == 0), "hc_world_particles: null argument");
    const auto& ps = world->world.particles;
    const size_t n = std::min(capacity, ps.size());
    for (size_t i = 0; i < n; ++i) {
        buf[i] = hc_particle{ps[i].id, ps[i].type, ps[i].pos.x, ps[i].pos.y};
    }
    if (written) *written = n;
    return HC_OK;
}

hc_status hc_hash_multiset(const uint32_t* types, size_t count, uint64_t* out) {
    HC_REQUIRE(types && out && count > 0, "hc_hash_multiset: need a non-empty type list");
    return guarded([&] {
        const auto key = hashchem::MultisetKey::from_types(std::vector<hashchem::TypeId>(types, types + count));
        *out = hashchem::hash_multiset(key);
        return HC_OK;
    });
}

hc_status hc_hash_fitness(const uint32_t* types, size_t count, uint64_t modulus, double* out) {
    HC_REQUIRE(types && out && count > 0, "hc_hash_fitness: need a non-empty type list");
    HC_REQUIRE(modulus >= 2, "hc_hash_fitness: modulus must be >= 2");
    return guarded([&] {
        const auto key = hashchem::MultisetKey::from_types(std::vector<hashchem::TypeId>(types, types + count));
        *out = hashchem::hash_to_fitness(hashchem::hash_multiset(key), modulus);
        return HC_OK;
    });
}

} // extern "C"
