#ifndef CROWDSHIP_CROWDSHIP_H
#define CROWDSHIP_CROWDSHIP_H

/* C interface to the crowdshipping dispatch simulator. All objects are opaque
 * handles; every fallible call returns a status code and leaves a message for
 * crowdship_last_error() on failure. */

#include <stddef.h>
#include <stdint.h>

#if defined(CROWDSHIP_BUILDING_LIBRARY)
#define CROWDSHIP_API __attribute__((visibility("default")))
#else
#define CROWDSHIP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crowdship_status {
  CROWDSHIP_OK = 0,
  CROWDSHIP_ERR_INVALID_ARGUMENT = 1, /* null handle, bad index, bad numeric argument */
  CROWDSHIP_ERR_CONFIG = 2,           /* unknown key, malformed value, invalid scenario */
  CROWDSHIP_ERR_IO = 3,               /* file could not be read or written */
  CROWDSHIP_ERR_RUNTIME = 4,          /* failure while simulating */
  CROWDSHIP_ERR_NOT_FOUND = 5,        /* unknown metric, preset or file kind */
  CROWDSHIP_ERR_BUFFER_TOO_SMALL = 6
} crowdship_status;

typedef struct crowdship_config crowdship_config;
typedef struct crowdship_report crowdship_report;

/* Message of the last failed call on this thread; empty when none. */
CROWDSHIP_API const char* crowdship_last_error(void);
CROWDSHIP_API const char* crowdship_status_name(crowdship_status status);

/* Configuration. A new config holds the "paper-small" defaults. */
CROWDSHIP_API crowdship_status crowdship_config_create(crowdship_config** out);
CROWDSHIP_API crowdship_status crowdship_config_preset(const char* name, crowdship_config** out);
CROWDSHIP_API crowdship_status crowdship_config_clone(const crowdship_config* config,
                                                      crowdship_config** out);
CROWDSHIP_API void crowdship_config_destroy(crowdship_config* config);
/* Applies a key = value scenario file on top of the current values. */
CROWDSHIP_API crowdship_status crowdship_config_load(crowdship_config* config, const char* path);
CROWDSHIP_API crowdship_status crowdship_config_load_string(crowdship_config* config,
                                                            const char* text);
CROWDSHIP_API crowdship_status crowdship_config_set(crowdship_config* config, const char* key,
                                                    const char* value);
/* Copies the value of `key` into `buffer`; `needed` (optional) receives the
 * size including the terminator. */
CROWDSHIP_API crowdship_status crowdship_config_get(const crowdship_config* config,
                                                    const char* key, char* buffer, size_t size,
                                                    size_t* needed);
/* Keeps the request rate and scales the courier rate to the given
 * request-to-courier ratio. */
CROWDSHIP_API crowdship_status crowdship_config_set_ratio(crowdship_config* config, double ratio);
CROWDSHIP_API crowdship_status crowdship_config_validate(const crowdship_config* config);

CROWDSHIP_API size_t crowdship_config_key_count(void);
CROWDSHIP_API const char* crowdship_config_key(size_t index);
CROWDSHIP_API size_t crowdship_preset_count(void);
CROWDSHIP_API const char* crowdship_preset_name(size_t index);

/* Simulation. */
typedef struct crowdship_run_options {
  int trace;   /* record memory-search convergence traces */
  int timings; /* record per-epoch wall-clock timings */
} crowdship_run_options;

CROWDSHIP_API crowdship_status crowdship_run(const crowdship_config* config,
                                             const crowdship_run_options* options,
                                             crowdship_report** out);
CROWDSHIP_API void crowdship_report_destroy(crowdship_report* report);

CROWDSHIP_API size_t crowdship_report_seed_count(const crowdship_report* report);
CROWDSHIP_API crowdship_status crowdship_report_seed(const crowdship_report* report, size_t index,
                                                     uint64_t* seed);
/* Hash of every request and courier generated for the seed. */
CROWDSHIP_API crowdship_status crowdship_report_arrival_checksum(const crowdship_report* report,
                                                                 size_t index, uint64_t* out);
/* Scalar metric of one seed, e.g. "tsc", "fulfilled_fraction", "identity_gap". */
CROWDSHIP_API crowdship_status crowdship_report_metric(const crowdship_report* report, size_t index,
                                                       const char* metric, double* out);
CROWDSHIP_API crowdship_status crowdship_report_mean(const crowdship_report* report,
                                                     const char* metric, double* out);
CROWDSHIP_API size_t crowdship_metric_count(void);
CROWDSHIP_API const char* crowdship_metric_name(size_t index);

/* Writes every CSV into `directory` (created if missing). */
CROWDSHIP_API crowdship_status crowdship_report_write(const crowdship_report* report,
                                                      const char* directory,
                                                      const crowdship_run_options* options);
/* Writes one CSV: kind is report, events, zones, availability,
 * relocation_flows, relocation_summary, trace or timings. */
CROWDSHIP_API crowdship_status crowdship_report_write_file(const crowdship_report* report,
                                                           const char* kind, const char* path);

/* Longest assignment interval for arrival rate `lambda` per minute. */
CROWDSHIP_API crowdship_status crowdship_recommend_timestep(double lambda, double epsilon,
                                                            double* out);

/* Property suites. */
typedef struct crowdship_suite_result {
  char name[48];
  int cases;
  int failures;
  double seconds;
  char first_failure[256];
} crowdship_suite_result;

/* Runs every property suite; `count` receives the number of suites, of which
 * at most `capacity` are written to `results`. */
CROWDSHIP_API crowdship_status crowdship_validate(uint64_t seed, crowdship_suite_result* results,
                                                  size_t capacity, size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* CROWDSHIP_CROWDSHIP_H */
