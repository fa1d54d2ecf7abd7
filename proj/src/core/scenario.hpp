#pragma once

// Scenario configuration: a flat key = value text format, named presets and
// command-line style overrides.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core/domain.hpp"
#include "core/geometry.hpp"
#include "core/relocation_flow.hpp"
#include "core/relocation_virtual.hpp"

namespace crowdship {

enum class SolverKind { mtamp, insertion, insertion_intra, simulated_annealing, reactive_tabu };
enum class ArrivalLaw { poisson, uniform };
enum class WeightLaw { normal, uniform };
// flat: every zone shares the mean rate. radial: rates fall off with distance
// from the area centre as a Gaussian bump whose top is the peak rate.
enum class ArrivalProfile { flat, radial };

std::string_view to_string(SolverKind solver);
std::optional<SolverKind> parse_solver(std::string_view name);

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ScenarioConfig {
  double area_width = 6.0;   // miles
  double area_height = 6.0;
  double zone_edge = 0.5;
  double depot_x = 3.0;
  double depot_y = 3.0;
  double horizon = 480.0;  // minutes
  double step = 10.0;      // minutes between assignment epochs

  double request_rate = 0.0575;  // expected requests per zone per step
  double courier_rate = 0.0142;  // expected couriers per zone per step
  ArrivalLaw arrival_law = ArrivalLaw::poisson;
  ArrivalProfile arrival_profile = ArrivalProfile::flat;
  double request_peak_rate = 0.15;  // busiest zone under the radial profile
  double courier_peak_rate = 0.04;

  double courier_speed = 10.0;     // mph
  double courier_capacity = 10.0;  // pounds
  double courier_budget = 120.0;   // minutes of availability after entry

  WeightLaw weight_law = WeightLaw::normal;
  double weight_mean = 4.5;
  double weight_sd = 1.0;
  double weight_min = 2.0;
  double weight_max = 7.0;
  double guarantee = 120.0;  // minutes from release to latest delivery

  CostParams params;

  bool relocation = false;
  relocation::Objective relocation_objective = relocation::Objective::benefit;
  double cluster_threshold = 0.95;  // miles
  relocation::Rounding rounding = relocation::Rounding::half_up;
  int max_extensions = 500;

  SolverKind solver = SolverKind::mtamp;
  int seeds = 10;
  std::uint64_t seed_base = 1;
  double epsilon = 0.1;

  // Local-search budget for sa/rts: 0 matches the evaluation count M-TAMP uses
  // on the same epoch, otherwise a fixed number of neighbour evaluations.
  std::uint64_t baseline_iterations = 0;
  double baseline_time_cap = 0.0;  // seconds, 0 = off

  ServiceArea area() const;
  int epochs() const;
  // Throws ConfigError describing the first invalid value.
  void validate() const;
};

// Expected arrivals per step in each zone; the mean over zones equals the
// configured rate.
std::vector<double> zone_request_rates(const ScenarioConfig& config, const ServiceArea& area);
std::vector<double> zone_courier_rates(const ScenarioConfig& config, const ServiceArea& area);

// Known presets: "paper-small" (default values) and "paper-large".
ScenarioConfig preset(std::string_view name);
std::vector<std::string> preset_names();

// Applies one key = value setting; throws ConfigError on unknown keys or bad values.
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);
// Applies "key=value".
void apply_override(ScenarioConfig& config, std::string_view assignment);

// Reads settings line by line on top of `base`. '#' starts a comment; a
// "preset = name" line resets to that preset. Errors carry line numbers.
ScenarioConfig load_scenario(std::istream& in, ScenarioConfig base = {});
ScenarioConfig load_scenario_file(const std::string& path, ScenarioConfig base = {});

// Every key with its current value, in documentation order.
std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& config);
std::vector<std::string> setting_keys();

// Keeps the request rate and sets the courier rate so that the expected
// request-to-courier ratio equals `ratio`.
void set_request_courier_ratio(ScenarioConfig& config, double ratio);

}  // namespace crowdship
