#include "crowdship/crowdship.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "core/report.hpp"
#include "core/scenario.hpp"
#include "core/simulation.hpp"
#include "oracles/property_suites.hpp"

struct crowdship_config {
  crowdship::ScenarioConfig value;
};

struct crowdship_report {
  crowdship::sim::RunReport value;
};

namespace {

thread_local std::string last_error;

crowdship_status fail(crowdship_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
crowdship_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const crowdship::ConfigError& e) {
    return fail(CROWDSHIP_ERR_CONFIG, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(CROWDSHIP_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CROWDSHIP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CROWDSHIP_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(CROWDSHIP_ERR_RUNTIME, e.what());
  }
}

crowdship_status null_argument(const char* what) {
  return fail(CROWDSHIP_ERR_INVALID_ARGUMENT, std::string(what) + " must not be null");
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& m : crowdship::report::seed_metrics({})) out.push_back(m.name);
    return out;
  }();
  return names;
}

const std::vector<std::string>& key_names() {
  static const std::vector<std::string> names = crowdship::setting_keys();
  return names;
}

const std::vector<std::string>& presets() {
  static const std::vector<std::string> names = crowdship::preset_names();
  return names;
}

bool find_metric(const crowdship::sim::SeedReport& seed, const char* metric, double* out) {
  for (const auto& m : crowdship::report::seed_metrics(seed)) {
    if (m.name == metric) {
      *out = m.value;
      return true;
    }
  }
  return false;
}

using Writer = void (*)(std::ostream&, const crowdship::sim::RunReport&);

Writer writer_for(std::string_view kind) {
  namespace r = crowdship::report;
  if (kind == "report") return r::write_report;
  if (kind == "events") return r::write_events;
  if (kind == "zones") return r::write_zones;
  if (kind == "availability") return r::write_availability;
  if (kind == "relocation_flows") return r::write_flows;
  if (kind == "relocation_summary") return r::write_relocation_summary;
  if (kind == "trace") return r::write_trace;
  if (kind == "timings") return r::write_timings;
  return nullptr;
}

void copy_text(char* dst, std::size_t size, const std::string& src) {
  std::strncpy(dst, src.c_str(), size - 1);
  dst[size - 1] = '\0';
}

}  // namespace

extern "C" {

const char* crowdship_last_error(void) { return last_error.c_str(); }

const char* crowdship_status_name(crowdship_status status) {
  switch (status) {
    case CROWDSHIP_OK: return "ok";
    case CROWDSHIP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CROWDSHIP_ERR_CONFIG: return "configuration error";
    case CROWDSHIP_ERR_IO: return "i/o error";
    case CROWDSHIP_ERR_RUNTIME: return "runtime error";
    case CROWDSHIP_ERR_NOT_FOUND: return "not found";
    case CROWDSHIP_ERR_BUFFER_TOO_SMALL: return "buffer too small";
  }
  return "unknown status";
}

crowdship_status crowdship_config_create(crowdship_config** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new crowdship_config{};
    return CROWDSHIP_OK;
  });
}

crowdship_status crowdship_config_preset(const char* name, crowdship_config** out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  return guarded([&] {
    for (const auto& p : presets()) {
      if (p == name) {
        *out = new crowdship_config{crowdship::preset(name)};
        return CROWDSHIP_OK;
      }
    }
    return fail(CROWDSHIP_ERR_NOT_FOUND, std::string("unknown preset '") + name + "'");
  });
}

crowdship_status crowdship_config_clone(const crowdship_config* config, crowdship_config** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new crowdship_config{config->value};
    return CROWDSHIP_OK;
  });
}

void crowdship_config_destroy(crowdship_config* config) { delete config; }

crowdship_status crowdship_config_load(crowdship_config* config, const char* path) {
  if (!config) return null_argument("config");
  if (!path) return null_argument("path");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) return fail(CROWDSHIP_ERR_IO, std::string("cannot open scenario file '") + path + "'");
    config->value = crowdship::load_scenario(in, config->value);
    return CROWDSHIP_OK;
  });
}

crowdship_status crowdship_config_load_string(crowdship_config* config, const char* text) {
  if (!config) return null_argument("config");
  if (!text) return null_argument("text");
  return guarded([&] {
    std::istringstream in(text);
    config->value = crowdship::load_scenario(in, config->value);
    return CROWDSHIP_OK;
  });
}

crowdship_status crowdship_config_set(crowdship_config* config, const char* key, const char* value) {
  if (!config) return null_argument("config");
  if (!key) return null_argument("key");
  if (!value) return null_argument("value");
  return guarded([&] {
    crowdship::apply_setting(config->value, key, value);
    return CROWDSHIP_OK;
  });
}

crowdship_status crowdship_config_get(const crowdship_config* config, const char* key, char* buffer,
                                      size_t size, size_t* needed) {
  if (!config) return null_argument("config");
  if (!key) return null_argument("key");
  return guarded([&] {
    for (const auto& [k, v] : crowdship::describe(config->value)) {
      if (k != key) continue;
      if (needed) *needed = v.size() + 1;
      if (!buffer || size < v.size() + 1) {
        return fail(CROWDSHIP_ERR_BUFFER_TOO_SMALL, "buffer too small for value of '" + k + "'");
      }
      std::memcpy(buffer, v.c_str(), v.size() + 1);
      return CROWDSHIP_OK;
    }
    return fail(CROWDSHIP_ERR_CONFIG, std::string("unknown key '") + key + "'");
  });
}

crowdship_status crowdship_config_set_ratio(crowdship_config* config, double ratio) {
  if (!config) return null_argument("config");
  return guarded([&] {
    crowdship::set_request_courier_ratio(config->value, ratio);
    return CROWDSHIP_OK;
  });
}

crowdship_status crowdship_config_validate(const crowdship_config* config) {
  if (!config) return null_argument("config");
  return guarded([&] {
    config->value.validate();
    return CROWDSHIP_OK;
  });
}

size_t crowdship_config_key_count(void) { return key_names().size(); }

const char* crowdship_config_key(size_t index) {
  return index < key_names().size() ? key_names()[index].c_str() : nullptr;
}

size_t crowdship_preset_count(void) { return presets().size(); }

const char* crowdship_preset_name(size_t index) {
  return index < presets().size() ? presets()[index].c_str() : nullptr;
}

crowdship_status crowdship_run(const crowdship_config* config, const crowdship_run_options* options,
                               crowdship_report** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  return guarded([&] {
    crowdship::sim::RunOptions run;
    if (options) {
      run.trace = options->trace != 0;
      run.timings = options->timings != 0;
    }
    auto report = std::make_unique<crowdship_report>();
    report->value = crowdship::sim::run_day(config->value, run);
    *out = report.release();
    return CROWDSHIP_OK;
  });
}

void crowdship_report_destroy(crowdship_report* report) { delete report; }

size_t crowdship_report_seed_count(const crowdship_report* report) {
  return report ? report->value.seeds.size() : 0;
}

crowdship_status crowdship_report_seed(const crowdship_report* report, size_t index, uint64_t* seed) {
  if (!report) return null_argument("report");
  if (!seed) return null_argument("seed");
  if (index >= report->value.seeds.size()) return fail(CROWDSHIP_ERR_INVALID_ARGUMENT, "seed index out of range");
  *seed = report->value.seeds[index].seed;
  return CROWDSHIP_OK;
}

crowdship_status crowdship_report_arrival_checksum(const crowdship_report* report, size_t index,
                                                   uint64_t* out) {
  if (!report) return null_argument("report");
  if (!out) return null_argument("out");
  if (index >= report->value.seeds.size()) return fail(CROWDSHIP_ERR_INVALID_ARGUMENT, "seed index out of range");
  *out = report->value.seeds[index].arrival_checksum;
  return CROWDSHIP_OK;
}

crowdship_status crowdship_report_metric(const crowdship_report* report, size_t index,
                                         const char* metric, double* out) {
  if (!report) return null_argument("report");
  if (!metric) return null_argument("metric");
  if (!out) return null_argument("out");
  if (index >= report->value.seeds.size()) return fail(CROWDSHIP_ERR_INVALID_ARGUMENT, "seed index out of range");
  if (!find_metric(report->value.seeds[index], metric, out)) {
    return fail(CROWDSHIP_ERR_NOT_FOUND, std::string("unknown metric '") + metric + "'");
  }
  return CROWDSHIP_OK;
}

crowdship_status crowdship_report_mean(const crowdship_report* report, const char* metric, double* out) {
  if (!report) return null_argument("report");
  if (!metric) return null_argument("metric");
  if (!out) return null_argument("out");
  const auto& seeds = report->value.seeds;
  if (seeds.empty()) return fail(CROWDSHIP_ERR_INVALID_ARGUMENT, "report has no seeds");
  double sum = 0.0;
  for (const auto& s : seeds) {
    double v = 0.0;
    if (!find_metric(s, metric, &v)) {
      return fail(CROWDSHIP_ERR_NOT_FOUND, std::string("unknown metric '") + metric + "'");
    }
    sum += v;
  }
  *out = sum / static_cast<double>(seeds.size());
  return CROWDSHIP_OK;
}

size_t crowdship_metric_count(void) { return metric_names().size(); }

const char* crowdship_metric_name(size_t index) {
  return index < metric_names().size() ? metric_names()[index].c_str() : nullptr;
}

crowdship_status crowdship_report_write(const crowdship_report* report, const char* directory,
                                        const crowdship_run_options* options) {
  if (!report) return null_argument("report");
  if (!directory) return null_argument("directory");
  return guarded([&] {
    crowdship::report::WriteOptions w;
    if (options) {
      w.trace = options->trace != 0;
      w.timings = options->timings != 0;
    }
    try {
      crowdship::report::write_all(directory, report->value, w);
    } catch (const std::runtime_error& e) {
      return fail(CROWDSHIP_ERR_IO, e.what());
    }
    return CROWDSHIP_OK;
  });
}

crowdship_status crowdship_report_write_file(const crowdship_report* report, const char* kind,
                                             const char* path) {
  if (!report) return null_argument("report");
  if (!kind) return null_argument("kind");
  if (!path) return null_argument("path");
  const Writer writer = writer_for(kind);
  if (!writer) return fail(CROWDSHIP_ERR_NOT_FOUND, std::string("unknown file kind '") + kind + "'");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) return fail(CROWDSHIP_ERR_IO, std::string("cannot open '") + path + "' for writing");
    writer(out, report->value);
    if (!out) return fail(CROWDSHIP_ERR_IO, std::string("failed writing '") + path + "'");
    return CROWDSHIP_OK;
  });
}

crowdship_status crowdship_recommend_timestep(double lambda, double epsilon, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = crowdship::sim::recommend_timestep(lambda, epsilon);
    return CROWDSHIP_OK;
  });
}

crowdship_status crowdship_validate(uint64_t seed, crowdship_suite_result* results, size_t capacity,
                                    size_t* count) {
  if (!count) return null_argument("count");
  if (capacity > 0 && !results) return null_argument("results");
  return guarded([&] {
    const auto suites = crowdship::oracle::run_property_suites(seed);
    *count = suites.size();
    for (std::size_t i = 0; i < suites.size() && i < capacity; ++i) {
      crowdship_suite_result& r = results[i];
      copy_text(r.name, sizeof r.name, suites[i].name);
      copy_text(r.first_failure, sizeof r.first_failure, suites[i].first_failure);
      r.cases = suites[i].cases;
      r.failures = suites[i].failures;
      r.seconds = suites[i].seconds;
    }
    return CROWDSHIP_OK;
  });
}

}  // extern "C"
