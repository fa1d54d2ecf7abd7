#include "core/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>

namespace crowdship {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
  }
  return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("'" + std::string(key) + "' expects an integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_switch(std::string_view key, std::string_view text) {
  if (text == "on" || text == "true" || text == "1") return true;
  if (text == "off" || text == "false" || text == "0") return false;
  throw ConfigError("'" + std::string(key) + "' expects on or off, got '" + std::string(text) + "'");
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Setting {
  const char* key;
  std::function<void(ScenarioConfig&, std::string_view)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

template <typename T>
Setting real(const char* key, T ScenarioConfig::*field) {
  return {key, [key, field](ScenarioConfig& c, std::string_view v) { c.*field = parse_double(key, v); },
          [field](const ScenarioConfig& c) { return number(c.*field); }};
}

template <typename T>
Setting real_param(const char* key, T CostParams::*field) {
  return {key,
          [key, field](ScenarioConfig& c, std::string_view v) { c.params.*field = parse_double(key, v); },
          [field](const ScenarioConfig& c) { return number(c.params.*field); }};
}

Setting int_param(const char* key, int CostParams::*field) {
  return {key,
          [key, field](ScenarioConfig& c, std::string_view v) {
            c.params.*field = static_cast<int>(parse_integer(key, v));
          },
          [field](const ScenarioConfig& c) { return std::to_string(c.params.*field); }};
}

template <typename E>
Setting choice(const char* key, E ScenarioConfig::*field,
               std::vector<std::pair<const char*, E>> names) {
  return {key,
          [key, field, names](ScenarioConfig& c, std::string_view v) {
            for (const auto& [n, e] : names) {
              if (v == n) {
                c.*field = e;
                return;
              }
            }
            std::string allowed;
            for (const auto& [n, e] : names) allowed += (allowed.empty() ? "" : "|") + std::string(n);
            throw ConfigError("'" + std::string(key) + "' expects " + allowed + ", got '" +
                              std::string(v) + "'");
          },
          [field, names](const ScenarioConfig& c) {
            for (const auto& [n, e] : names) {
              if (c.*field == e) return std::string(n);
            }
            return std::string("?");
          }};
}

const std::vector<Setting>& settings() {
  static const std::vector<Setting> table = {
      real("area_width", &ScenarioConfig::area_width),
      real("area_height", &ScenarioConfig::area_height),
      real("zone_edge", &ScenarioConfig::zone_edge),
      real("depot_x", &ScenarioConfig::depot_x),
      real("depot_y", &ScenarioConfig::depot_y),
      real("horizon", &ScenarioConfig::horizon),
      real("step", &ScenarioConfig::step),
      real("request_rate", &ScenarioConfig::request_rate),
      real("courier_rate", &ScenarioConfig::courier_rate),
      choice("arrival_law", &ScenarioConfig::arrival_law,
             {{"poisson", ArrivalLaw::poisson}, {"uniform", ArrivalLaw::uniform}}),
      choice("arrival_profile", &ScenarioConfig::arrival_profile,
             {{"flat", ArrivalProfile::flat}, {"radial", ArrivalProfile::radial}}),
      real("request_peak_rate", &ScenarioConfig::request_peak_rate),
      real("courier_peak_rate", &ScenarioConfig::courier_peak_rate),
      real("courier_speed", &ScenarioConfig::courier_speed),
      real("courier_capacity", &ScenarioConfig::courier_capacity),
      real("courier_budget", &ScenarioConfig::courier_budget),
      choice("weight_law", &ScenarioConfig::weight_law,
             {{"normal", WeightLaw::normal}, {"uniform", WeightLaw::uniform}}),
      real("weight_mean", &ScenarioConfig::weight_mean),
      real("weight_sd", &ScenarioConfig::weight_sd),
      real("weight_min", &ScenarioConfig::weight_min),
      real("weight_max", &ScenarioConfig::weight_max),
      real("guarantee", &ScenarioConfig::guarantee),
      real_param("lateness_penalty", &CostParams::lateness_penalty),
      real_param("availability_penalty", &CostParams::availability_penalty),
      real_param("capacity_penalty", &CostParams::capacity_penalty),
      real_param("alpha", &CostParams::alpha),
      int_param("eta", &CostParams::eta),
      real_param("pickup_threshold", &CostParams::pickup_threshold),
      real_param("discard_ratio", &CostParams::discard_ratio),
      int_param("tabu_count", &CostParams::tabu_count),
      int_param("max_memory", &CostParams::max_memory),
      real_param("courier_pay", &CostParams::courier_rate),
      real_param("backup_pay", &CostParams::backup_rate),
      real_param("backup_speed", &CostParams::backup_speed),
      {"capacity_measure",
       [](ScenarioConfig& c, std::string_view v) {
         if (v == "excess_weight") c.params.capacity_measure = CapacityMeasure::excess_weight;
         else if (v == "request_count") c.params.capacity_measure = CapacityMeasure::request_count;
         else throw ConfigError("'capacity_measure' expects excess_weight|request_count, got '" +
                                std::string(v) + "'");
       },
       [](const ScenarioConfig& c) {
         return std::string(c.params.capacity_measure == CapacityMeasure::excess_weight
                                ? "excess_weight"
                                : "request_count");
       }},
      {"relocation", [](ScenarioConfig& c, std::string_view v) { c.relocation = parse_switch("relocation", v); },
       [](const ScenarioConfig& c) { return std::string(c.relocation ? "on" : "off"); }},
      choice("relocation_objective", &ScenarioConfig::relocation_objective,
             {{"benefit", relocation::Objective::benefit}, {"count", relocation::Objective::count}}),
      real("cluster_threshold", &ScenarioConfig::cluster_threshold),
      choice("expected_rounding", &ScenarioConfig::rounding,
             {{"half_up", relocation::Rounding::half_up}, {"floor", relocation::Rounding::floor}}),
      {"max_extensions",
       [](ScenarioConfig& c, std::string_view v) {
         c.max_extensions = static_cast<int>(parse_integer("max_extensions", v));
       },
       [](const ScenarioConfig& c) { return std::to_string(c.max_extensions); }},
      {"solver",
       [](ScenarioConfig& c, std::string_view v) {
         auto s = parse_solver(v);
         if (!s) throw ConfigError("'solver' expects mtamp|insertion|insertion-intra|sa|rts, got '" +
                                   std::string(v) + "'");
         c.solver = *s;
       },
       [](const ScenarioConfig& c) { return std::string(to_string(c.solver)); }},
      {"seeds", [](ScenarioConfig& c, std::string_view v) { c.seeds = static_cast<int>(parse_integer("seeds", v)); },
       [](const ScenarioConfig& c) { return std::to_string(c.seeds); }},
      {"seed_base",
       [](ScenarioConfig& c, std::string_view v) {
         const long long s = parse_integer("seed_base", v);
         if (s < 0) throw ConfigError("'seed_base' must be non-negative");
         c.seed_base = static_cast<std::uint64_t>(s);
       },
       [](const ScenarioConfig& c) { return std::to_string(c.seed_base); }},
      real("epsilon", &ScenarioConfig::epsilon),
      {"baseline_iterations",
       [](ScenarioConfig& c, std::string_view v) {
         if (v == "matched") {
           c.baseline_iterations = 0;
           return;
         }
         const long long n = parse_integer("baseline_iterations", v);
         if (n < 0) throw ConfigError("'baseline_iterations' must be non-negative");
         c.baseline_iterations = static_cast<std::uint64_t>(n);
       },
       [](const ScenarioConfig& c) {
         return c.baseline_iterations == 0 ? std::string("matched") : std::to_string(c.baseline_iterations);
       }},
      real("baseline_time_cap", &ScenarioConfig::baseline_time_cap),
  };
  return table;
}

}  // namespace

std::string_view to_string(SolverKind solver) {
  switch (solver) {
    case SolverKind::mtamp: return "mtamp";
    case SolverKind::insertion: return "insertion";
    case SolverKind::insertion_intra: return "insertion-intra";
    case SolverKind::simulated_annealing: return "sa";
    case SolverKind::reactive_tabu: return "rts";
  }
  return "unknown";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
  for (SolverKind s : {SolverKind::mtamp, SolverKind::insertion, SolverKind::insertion_intra,
                       SolverKind::simulated_annealing, SolverKind::reactive_tabu}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

ServiceArea ScenarioConfig::area() const {
  return ServiceArea(area_width, area_height, zone_edge, {depot_x, depot_y});
}

int ScenarioConfig::epochs() const { return static_cast<int>(std::llround(horizon / step)); }

void ScenarioConfig::validate() const {
  try {
    (void)area();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(step > 0)) throw ConfigError("step must be positive");
  if (horizon < 0) throw ConfigError("horizon must be non-negative");
  if (std::abs(horizon / step - std::round(horizon / step)) > 1e-9) {
    throw ConfigError("horizon must be a multiple of step");
  }
  if (request_rate < 0 || courier_rate < 0) throw ConfigError("arrival rates must be non-negative");
  if (arrival_profile == ArrivalProfile::radial &&
      (request_peak_rate < request_rate || courier_peak_rate < courier_rate)) {
    throw ConfigError("peak arrival rates must be at least the mean rates");
  }
  if (!(courier_speed > 0) || !(courier_capacity > 0) || !(courier_budget > 0)) {
    throw ConfigError("courier speed, capacity and budget must be positive");
  }
  if (!(weight_min > 0) || weight_max < weight_min) throw ConfigError("weight range is invalid");
  if (weight_law == WeightLaw::normal && !(weight_sd > 0)) throw ConfigError("weight_sd must be positive");
  if (!(guarantee > 0)) throw ConfigError("guarantee must be positive");
  if (!(depot_x >= 0 && depot_x <= area_width && depot_y >= 0 && depot_y <= area_height)) {
    throw ConfigError("depot must lie inside the service area");
  }
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(cluster_threshold >= 0)) throw ConfigError("cluster_threshold must be non-negative");
  if (max_extensions < 0) throw ConfigError("max_extensions must be non-negative");
  if (seeds < 0) throw ConfigError("seeds must be non-negative");
  if (!(epsilon > 0 && epsilon < 1)) throw ConfigError("epsilon must lie in (0, 1)");
  if (baseline_time_cap < 0) throw ConfigError("baseline_time_cap must be non-negative");
}

ScenarioConfig preset(std::string_view name) {
  ScenarioConfig c;
  if (name == "paper-small") return c;
  if (name == "paper-large") {
    // 1325 requests and 328 couriers per day over 144 zones and 48 steps.
    c.request_rate = 0.1917;
    c.courier_rate = 0.0475;
    return c;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"paper-small", "paper-large"}; }

void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value) {
  for (const Setting& s : settings()) {
    if (key == s.key) {
      s.set(config, value);
      return;
    }
  }
  throw ConfigError("unknown key '" + std::string(key) + "'");
}

void apply_override(ScenarioConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  }
  apply_setting(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

ScenarioConfig load_scenario(std::istream& in, ScenarioConfig base) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value", number);
    const std::string_view key = trim(text.substr(0, eq));
    const std::string_view value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key", number);
    if (value.empty()) throw ConfigError("missing value for '" + std::string(key) + "'", number);
    try {
      if (key == "preset") {
        base = preset(value);
      } else {
        apply_setting(base, key, value);
      }
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), number);
    }
  }
  return base;
}

ScenarioConfig load_scenario_file(const std::string& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  return load_scenario(in, std::move(base));
}

std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Setting& s : settings()) out.emplace_back(s.key, s.get(config));
  return out;
}

std::vector<std::string> setting_keys() {
  std::vector<std::string> out;
  for (const Setting& s : settings()) out.emplace_back(s.key);
  return out;
}

void set_request_courier_ratio(ScenarioConfig& config, double ratio) {
  if (!(ratio > 0)) throw ConfigError("request-to-courier ratio must be positive");
  const double rate = config.request_rate / ratio;
  if (config.courier_rate > 0) {
    config.courier_peak_rate *= rate / config.courier_rate;
  } else {
    config.courier_peak_rate = rate;
  }
  config.courier_rate = rate;
}

namespace {

std::vector<double> radial_rates(const ServiceArea& area, double mean, double peak) {
  const int n = area.zone_count();
  std::vector<double> squared(n);
  const Point centre{area.width() / 2.0, area.height() / 2.0};
  for (ZoneId z = 0; z < n; ++z) {
    const Point c = area.centroid(z);
    squared[z] = (c.x - centre.x) * (c.x - centre.x) + (c.y - centre.y) * (c.y - centre.y);
  }
  auto shape = [&](double sigma) {
    std::vector<double> w(n);
    for (int z = 0; z < n; ++z) w[z] = std::exp(-squared[z] / (2.0 * sigma * sigma));
    return w;
  };
  auto mean_of = [&](const std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) s += v;
    return s / n;
  };
  // The zone mean of the bump grows with its width; bisect for the target.
  const double goal = mean / peak;
  double lo = 1e-6;
  double hi = 1e6;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (mean_of(shape(mid)) < goal) lo = mid; else hi = mid;
  }
  std::vector<double> w = shape(hi);
  // Rescale so the mean is exact; the top moves by well under a percent.
  const double scale = mean / mean_of(w);
  for (double& v : w) v *= scale;
  return w;
}

std::vector<double> profile_rates(const ScenarioConfig& config, const ServiceArea& area, double mean,
                                  double peak) {
  if (config.arrival_profile == ArrivalProfile::flat || mean <= 0.0 || peak <= mean) {
    return std::vector<double>(area.zone_count(), mean);
  }
  return radial_rates(area, mean, peak);
}

}  // namespace

std::vector<double> zone_request_rates(const ScenarioConfig& config, const ServiceArea& area) {
  return profile_rates(config, area, config.request_rate, config.request_peak_rate);
}

std::vector<double> zone_courier_rates(const ScenarioConfig& config, const ServiceArea& area) {
  return profile_rates(config, area, config.courier_rate, config.courier_peak_rate);
}

}  // namespace crowdship
