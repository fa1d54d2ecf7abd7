// Command-line driver: run scenarios, compare solvers, sweep parameters,
// validate the property suites and recommend a time step.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "crowdship/crowdship.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitScenario = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int code;
  std::string message;
};

void check(crowdship_status status, int code) {
  if (status != CROWDSHIP_OK) throw Failure{code, crowdship_last_error()};
}

using Config = std::unique_ptr<crowdship_config, decltype(&crowdship_config_destroy)>;
using Report = std::unique_ptr<crowdship_report, decltype(&crowdship_report_destroy)>;

struct ScenarioFlags {
  std::string scenario;
  std::string preset;
  std::vector<std::string> set;
  int seeds = 0;
  std::string solver;
  std::string relocation;
  std::string iterations;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f, bool with_solver) {
  cmd->add_option("--preset", f.preset, "Start from a named preset")
      ->check(CLI::IsMember({"paper-small", "paper-large"}));
  cmd->add_option("--scenario", f.scenario, "Scenario file (key = value lines)")->check(CLI::ExistingFile);
  cmd->add_option("--set", f.set, "Override a setting, key=value (repeatable)");
  cmd->add_option("--seeds", f.seeds, "Number of seeds")->check(CLI::PositiveNumber);
  if (with_solver) {
    cmd->add_option("--solver", f.solver, "Assignment solver")
        ->check(CLI::IsMember({"mtamp", "insertion", "insertion-intra", "sa", "rts"}));
  }
  cmd->add_option("--relocation", f.relocation, "Idle-courier relocation")->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--iterations", f.iterations,
                  "Neighbour evaluations per epoch for sa/rts, or 'matched'");
}

Config build_config(const ScenarioFlags& f) {
  crowdship_config* raw = nullptr;
  if (!f.preset.empty()) check(crowdship_config_preset(f.preset.c_str(), &raw), kExitUsage);
  else check(crowdship_config_create(&raw), kExitUsage);
  Config config(raw, crowdship_config_destroy);
  if (!f.scenario.empty()) {
    check(crowdship_config_load(config.get(), f.scenario.c_str()), kExitUsage);
  }
  for (const std::string& s : f.set) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Failure{kExitUsage, "--set expects key=value, got '" + s + "'"};
    check(crowdship_config_set(config.get(), s.substr(0, eq).c_str(), s.substr(eq + 1).c_str()), kExitUsage);
  }
  if (f.seeds > 0) check(crowdship_config_set(config.get(), "seeds", std::to_string(f.seeds).c_str()), kExitUsage);
  if (!f.solver.empty()) check(crowdship_config_set(config.get(), "solver", f.solver.c_str()), kExitUsage);
  if (!f.relocation.empty()) {
    check(crowdship_config_set(config.get(), "relocation", f.relocation.c_str()), kExitUsage);
  }
  if (!f.iterations.empty()) {
    check(crowdship_config_set(config.get(), "baseline_iterations", f.iterations.c_str()), kExitUsage);
  }
  check(crowdship_config_validate(config.get()), kExitUsage);
  return config;
}

Config clone(const Config& config) {
  crowdship_config* raw = nullptr;
  check(crowdship_config_clone(config.get(), &raw), kExitScenario);
  return Config(raw, crowdship_config_destroy);
}

Report run(const Config& config, const crowdship_run_options& options) {
  crowdship_report* raw = nullptr;
  check(crowdship_run(config.get(), &options, &raw), kExitScenario);
  return Report(raw, crowdship_report_destroy);
}

double metric(const Report& r, std::size_t seed, const char* name) {
  double v = 0.0;
  check(crowdship_report_metric(r.get(), seed, name, &v), kExitScenario);
  return v;
}

double mean(const Report& r, const char* name) {
  double v = 0.0;
  if (crowdship_report_seed_count(r.get()) == 0) return 0.0;
  check(crowdship_report_mean(r.get(), name, &v), kExitScenario);
  return v;
}

std::string num(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitScenario, "cannot open " + path.string() + " for writing"};
  return out;
}

const char* const kSummaryMetrics[] = {"tsc", "courier_pay", "relocation_pay", "backup_cost",
                                       "fulfilled_fraction", "relocation_orders"};

void write_summary_row(std::ostream& out, const std::string& prefix, const Report& r, std::size_t seed) {
  std::uint64_t s = 0;
  std::uint64_t checksum = 0;
  check(crowdship_report_seed(r.get(), seed, &s), kExitScenario);
  check(crowdship_report_arrival_checksum(r.get(), seed, &checksum), kExitScenario);
  out << prefix << s << ',' << hex(checksum);
  for (const char* m : kSummaryMetrics) out << ',' << num(metric(r, seed, m));
  out << '\n';
}

std::string summary_header() {
  std::string h = "seed,arrival_checksum";
  for (const char* m : kSummaryMetrics) h += std::string(",") + m;
  return h;
}

int cmd_run(const ScenarioFlags& flags, const std::string& out, const crowdship_run_options& options) {
  const Config config = build_config(flags);
  const Report report = run(config, options);
  check(crowdship_report_write(report.get(), out.c_str(), &options), kExitScenario);
  std::printf("seeds: %zu\n", crowdship_report_seed_count(report.get()));
  std::printf("mean tsc: %s\n", num(mean(report, "tsc")).c_str());
  std::printf("mean fulfilled fraction: %s\n", num(mean(report, "fulfilled_fraction")).c_str());
  std::printf("output: %s\n", out.c_str());
  return kExitOk;
}

struct Variant {
  std::string label;
  std::string solver;
  bool relocation;
};

int cmd_compare(const ScenarioFlags& flags, const std::string& out, const crowdship_run_options& options) {
  const Config base = build_config(flags);
  const std::vector<Variant> variants = {
      {"insertion", "insertion", false}, {"insertion-intra", "insertion-intra", false},
      {"sa", "sa", false},               {"rts", "rts", false},
      {"mtamp", "mtamp", false},         {"mtamp+relocation", "mtamp", true},
  };
  std::ofstream csv = open_csv(std::filesystem::path(out) / "compare.csv");
  csv << "method," << summary_header() << '\n';
  std::vector<std::vector<std::uint64_t>> checksums;
  std::printf("%-18s %12s %10s\n", "method", "mean_tsc", "fulfilled");
  for (const Variant& v : variants) {
    Config config = clone(base);
    check(crowdship_config_set(config.get(), "solver", v.solver.c_str()), kExitScenario);
    check(crowdship_config_set(config.get(), "relocation", v.relocation ? "on" : "off"), kExitScenario);
    const Report report = run(config, options);
    check(crowdship_report_write(report.get(), (std::filesystem::path(out) / v.label).c_str(), &options),
          kExitScenario);
    std::vector<std::uint64_t> sums;
    for (std::size_t i = 0; i < crowdship_report_seed_count(report.get()); ++i) {
      write_summary_row(csv, v.label + ",", report, i);
      std::uint64_t c = 0;
      check(crowdship_report_arrival_checksum(report.get(), i, &c), kExitScenario);
      sums.push_back(c);
    }
    checksums.push_back(std::move(sums));
    std::printf("%-18s %12s %10s\n", v.label.c_str(), num(mean(report, "tsc")).c_str(),
                num(mean(report, "fulfilled_fraction")).c_str());
  }
  bool shared = true;
  for (const auto& sums : checksums) shared = shared && sums == checksums.front();
  for (std::size_t i = 0; i < checksums.front().size(); ++i) {
    std::printf("seed %zu arrival checksum %s\n", i, hex(checksums.front()[i]).c_str());
  }
  std::printf("arrival streams identical across methods: %s\n", shared ? "yes" : "no");
  return shared ? kExitOk : kExitScenario;
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_sweep(const ScenarioFlags& flags, const std::string& param, const std::string& values,
              bool both, const std::string& out, const crowdship_run_options& options) {
  const Config base = build_config(flags);
  const auto list = split_values(values);
  if (list.empty()) throw Failure{kExitUsage, "--values needs at least one value"};
  std::ofstream csv = open_csv(std::filesystem::path(out) / "sweep.csv");
  csv << "param,value,relocation," << summary_header() << '\n';
  std::printf("%-10s %-10s %-10s %12s\n", param.c_str(), "value", "relocation", "mean_tsc");
  for (const std::string& value : list) {
    std::vector<std::string> modes;
    if (both) modes = {"off", "on"};
    else {
      char buf[8] = {};
      check(crowdship_config_get(base.get(), "relocation", buf, sizeof buf, nullptr), kExitScenario);
      modes = {buf};
    }
    for (const std::string& mode : modes) {
      Config config = clone(base);
      if (param == "ratio") {
        double ratio = 0.0;
        try {
          ratio = std::stod(value);
        } catch (const std::exception&) {
          throw Failure{kExitUsage, "ratio value '" + value + "' is not a number"};
        }
        check(crowdship_config_set_ratio(config.get(), ratio), kExitUsage);
      } else {
        check(crowdship_config_set(config.get(), param.c_str(), value.c_str()), kExitUsage);
      }
      check(crowdship_config_set(config.get(), "relocation", mode.c_str()), kExitScenario);
      check(crowdship_config_validate(config.get()), kExitUsage);
      const Report report = run(config, options);
      for (std::size_t i = 0; i < crowdship_report_seed_count(report.get()); ++i) {
        write_summary_row(csv, param + "," + value + "," + mode + ",", report, i);
      }
      std::printf("%-10s %-10s %-10s %12s\n", param.c_str(), value.c_str(), mode.c_str(),
                  num(mean(report, "tsc")).c_str());
    }
  }
  return kExitOk;
}

int cmd_validate(std::uint64_t seed) {
  std::vector<crowdship_suite_result> results(16);
  std::size_t count = 0;
  check(crowdship_validate(seed, results.data(), results.size(), &count), kExitScenario);
  int failed = 0;
  for (std::size_t i = 0; i < count && i < results.size(); ++i) {
    const auto& r = results[i];
    const bool ok = r.cases > 0 && r.failures == 0;
    failed += ok ? 0 : 1;
    std::printf("%s %-20s cases=%d failures=%d seconds=%.2f%s%s\n", ok ? "PASS" : "FAIL", r.name,
                r.cases, r.failures, r.seconds, ok ? "" : " first: ", ok ? "" : r.first_failure);
  }
  std::printf("%zu suites, %d passed, %d failed\n", count, static_cast<int>(count) - failed, failed);
  return failed == 0 ? kExitOk : kExitScenario;
}

int cmd_timestep(double lambda, double epsilon) {
  double minutes = 0.0;
  check(crowdship_recommend_timestep(lambda, epsilon, &minutes), kExitUsage);
  std::printf("%s\n", num(minutes).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crowdshipping dispatch simulator"};
  app.require_subcommand(1);

  ScenarioFlags flags;
  std::string out = "results";
  bool trace = false;
  bool timings = false;

  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write CSV reports");
  add_scenario_flags(run_cmd, flags, true);
  run_cmd->add_option("--out", out, "Output directory");
  run_cmd->add_flag("--trace", trace, "Write memory-search convergence traces");
  run_cmd->add_flag("--timings", timings, "Write per-epoch wall-clock timings");

  auto* compare_cmd = app.add_subcommand("compare", "Run every solver on shared seeds");
  add_scenario_flags(compare_cmd, flags, false);
  compare_cmd->add_option("--out", out, "Output directory");
  compare_cmd->add_flag("--timings", timings, "Write per-epoch wall-clock timings");

  std::string param;
  std::string values;
  bool both = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario over a list of parameter values");
  add_scenario_flags(sweep_cmd, flags, true);
  sweep_cmd->add_option("--param", param, "Setting key, or 'ratio' for the request-to-courier ratio")
      ->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
  sweep_cmd->add_flag("--paired", both, "Run each value with relocation off and on");
  sweep_cmd->add_option("--out", out, "Output directory");

  std::uint64_t seed = 1;
  auto* validate_cmd = app.add_subcommand("validate", "Run the property suites");
  validate_cmd->add_option("--seed", seed, "Seed for the random instances");

  double lambda = 0.0;
  double epsilon = 0.1;
  auto* timestep_cmd = app.add_subcommand("timestep", "Recommend an assignment interval");
  timestep_cmd->add_option("--lambda", lambda, "Arrival rate per minute")->required();
  timestep_cmd->add_option("--epsilon", epsilon, "Tolerated probability of a sparse epoch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const crowdship_run_options options{trace ? 1 : 0, timings ? 1 : 0};
  try {
    if (*run_cmd) return cmd_run(flags, out, options);
    if (*compare_cmd) return cmd_compare(flags, out, options);
    if (*sweep_cmd) return cmd_sweep(flags, param, values, both, out, options);
    if (*validate_cmd) return cmd_validate(seed);
    if (*timestep_cmd) return cmd_timestep(lambda, epsilon);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  }
  return kExitUsage;
}
