/*
 * hashchem C API.
 *
 * Every function returns an hc_status; on failure hc_last_error() holds a
 * message for the calling thread. Handles are opaque and owned by the
 * caller, who releases them with the matching *_free function.
 */
#ifndef HASHCHEM_H
#define HASHCHEM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HASHCHEM_BUILDING)
#    define HC_API __declspec(dllexport)
#  else
#    define HC_API __declspec(dllimport)
#  endif
#else
#  define HC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as the CLI exit codes. */
typedef enum hc_status {
    HC_OK = 0,
    HC_ERR_CONFIG = 1,
    HC_ERR_ORACLE = 2,
    HC_ERR_INCOMPLETE = 3,
    HC_ERR_IO = 4,
    HC_ERR_ARGUMENT = 5,
    HC_ERR_INTERNAL = 6
} hc_status;

typedef struct hc_config hc_config;
typedef struct hc_campaign hc_campaign;
typedef struct hc_world hc_world;

typedef struct hc_particle {
    uint64_t id;
    uint32_t type;
    double x;
    double y;
} hc_particle;

typedef struct hc_step_info {
    int64_t tick;
    uint64_t population;
    uint64_t replication_events;
    uint64_t replicated_individuals;
    uint64_t deaths;
    uint64_t mutations;
} hc_step_info;

typedef struct hc_campaign_info {
    int64_t attempts;
    int64_t accepted;
    int64_t extinct_attempts;
    double extinction_probability;
    int complete; /* 0 when attempts ran out before the target was met */
    double wall_seconds;
} hc_campaign_info;

/* One CSV row worth of per-step metrics; has_* flags mark present cells. */
typedef struct hc_step_record {
    int64_t tick;
    int64_t population;
    int64_t replicated;
    int has_events;
    double max_fitness;
    double mean_fitness;
    int64_t max_size;
    double mean_size;
    int64_t cum_individual_types;
    int64_t cum_higher_order_types;
} hc_step_record;

typedef void (*hc_report_fn)(const char* oracle, int passed, const char* detail, double seconds, void* user);

HC_API const char* hc_version(void);
HC_API const char* hc_last_error(void);

/* Configuration: defaults reproduce the main experiment. */
HC_API hc_status hc_config_new(hc_config** out);
HC_API void hc_config_free(hc_config* config);
HC_API hc_status hc_config_apply_preset(hc_config* config, const char* name);
HC_API hc_status hc_config_set(hc_config* config, const char* key, const char* value);
HC_API hc_status hc_config_load_file(hc_config* config, const char* path);
HC_API hc_status hc_config_load_json(hc_config* config, const char* json_text);
/* Copies the JSON echo into buf (if capacity allows); *needed gets the
 * length including the terminating NUL. */
HC_API hc_status hc_config_to_json(const hc_config* config, char* buf, size_t capacity, size_t* needed);
/* Same buffer protocol as hc_config_to_json, for a single option. */
HC_API hc_status hc_config_get(const hc_config* config, const char* key, char* buf, size_t capacity, size_t* needed);
HC_API hc_status hc_config_validate(const hc_config* config);

/* Campaigns */
HC_API hc_status hc_campaign_run(const hc_config* config, hc_campaign** out);
HC_API void hc_campaign_free(hc_campaign* campaign);
HC_API hc_status hc_campaign_info_get(const hc_campaign* campaign, hc_campaign_info* out);
HC_API hc_status hc_campaign_write(const hc_campaign* campaign, const char* output_dir);
HC_API hc_status hc_campaign_run_length(const hc_campaign* campaign, size_t run, size_t* out);
HC_API hc_status hc_campaign_run_records(const hc_campaign* campaign, size_t run, hc_step_record* buf,
                                         size_t capacity, size_t* written);

/* Oracle self-check. inject_grid_fault != 0 runs the negative control. */
HC_API hc_status hc_verify(int inject_grid_fault, hc_report_fn report, void* user);

/* Single-run stepping */
HC_API hc_status hc_world_new(const hc_config* config, uint64_t seed, hc_world** out);
HC_API void hc_world_free(hc_world* world);
HC_API hc_status hc_world_step(hc_world* world, hc_step_info* out);
HC_API int64_t hc_world_tick(const hc_world* world);
HC_API uint64_t hc_world_population(const hc_world* world);
HC_API hc_status hc_world_particles(const hc_world* world, hc_particle* buf, size_t capacity, size_t* written);

/* Fitness landscape. types need not be sorted. */
HC_API hc_status hc_hash_multiset(const uint32_t* types, size_t count, uint64_t* out);
HC_API hc_status hc_hash_fitness(const uint32_t* types, size_t count, uint64_t modulus, double* out);

#ifdef __cplusplus
}
#endif

#endif /* HASHCHEM_H */
