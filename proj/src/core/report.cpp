#include "core/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace crowdship::report {

namespace {

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

template <typename F>
void write_file(const std::filesystem::path& path, F&& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  body(out);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<MetricValue> seed_metrics(const sim::SeedReport& s) {
  return {
      {"tsc", s.tsc},
      {"courier_pay", s.courier_pay},
      {"relocation_pay", s.relocation_pay},
      {"backup_cost", s.backup_cost},
      {"requests", static_cast<double>(s.requests)},
      {"couriers", static_cast<double>(s.couriers)},
      {"delivered_by_courier", static_cast<double>(s.delivered_by_courier)},
      {"delivered_by_backup", static_cast<double>(s.delivered_by_backup)},
      {"expired_to_backup", static_cast<double>(s.expired_to_backup)},
      {"fulfilled_fraction", s.fulfilled_fraction},
      {"relocation_orders", static_cast<double>(s.relocation_orders)},
      {"solver_evaluations", static_cast<double>(s.solver_evaluations)},
      {"unterminated", static_cast<double>(s.unterminated)},
      {"multiply_terminated", static_cast<double>(s.multiply_terminated)},
      {"late_deliveries", static_cast<double>(s.late_deliveries)},
      {"infeasible_commits", static_cast<double>(s.infeasible_commits)},
      {"identity_gap", s.identity_gap},
  };
}

void write_report(std::ostream& out, const sim::RunReport& report) {
  out << "seed,metric,value\n";
  for (const auto& s : report.seeds) {
    for (const auto& m : seed_metrics(s)) {
      out << s.seed << ',' << m.name << ',' << format_number(m.value) << '\n';
    }
    out << s.seed << ",arrival_checksum," << hex(s.arrival_checksum) << '\n';
  }
  if (report.seeds.empty()) return;
  const auto names = seed_metrics(report.seeds.front());
  const std::pair<const char*, double> stats[] = {
      {"min", 0.0}, {"q1", 0.25}, {"median", 0.5}, {"q3", 0.75}, {"max", 1.0}};
  for (std::size_t m = 0; m < names.size(); ++m) {
    std::vector<double> values;
    for (const auto& s : report.seeds) values.push_back(seed_metrics(s)[m].value);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    out << "mean," << names[m].name << ',' << format_number(mean) << '\n';
    for (const auto& [label, q] : stats) {
      out << label << ',' << names[m].name << ',' << format_number(quantile(values, q)) << '\n';
    }
  }
}

void write_events(std::ostream& out, const sim::RunReport& report) {
  out << "seed,t,event_type,request_id,courier_id,zone_from,zone_to,cost_delta_usd\n";
  for (const auto& s : report.seeds) {
    for (const auto& e : s.events) {
      out << s.seed << ',' << format_number(e.t) << ',' << sim::to_string(e.type) << ','
          << e.request_id << ',' << e.courier_id << ',' << e.zone_from << ',' << e.zone_to << ','
          << format_number(e.cost) << '\n';
    }
  }
}

void write_zones(std::ostream& out, const sim::RunReport& report) {
  out << "seed,zone,requests,courier_fulfilled,fulfilled_fraction\n";
  for (const auto& s : report.seeds) {
    for (std::size_t z = 0; z < s.zones.size(); ++z) {
      const auto& st = s.zones[z];
      const double frac = st.requests > 0 ? static_cast<double>(st.courier_fulfilled) / st.requests : 0.0;
      out << s.seed << ',' << z << ',' << st.requests << ',' << st.courier_fulfilled << ','
          << format_number(frac) << '\n';
    }
  }
}

void write_availability(std::ostream& out, const sim::RunReport& report) {
  out << "seed,t,couriers_per_request\n";
  for (const auto& s : report.seeds) {
    for (const auto& a : s.availability) {
      out << s.seed << ',' << format_number(a.t) << ',' << format_number(a.couriers_per_request) << '\n';
    }
  }
}

void write_flows(std::ostream& out, const sim::RunReport& report) {
  out << "seed,t,from_zone,to_zone,couriers\n";
  for (const auto& s : report.seeds) {
    for (const auto& f : s.flows) {
      out << s.seed << ',' << format_number(f.t) << ',' << f.from << ',' << f.to << ',' << f.count << '\n';
    }
  }
}

void write_relocation_summary(std::ostream& out, const sim::RunReport& report) {
  out << "seed,t,skipped,reason,pending,flow_total,relocatable,clusters,jobs,objective,orders\n";
  for (const auto& s : report.seeds) {
    for (const auto& r : s.relocation) {
      out << s.seed << ',' << format_number(r.t) << ',' << (r.skipped ? 1 : 0) << ',' << r.reason << ','
          << r.pending << ',' << r.flow_total << ',' << r.relocatable << ',' << r.clusters << ',' << r.jobs << ',' << format_number(r.objective) << ','
          << r.orders << '\n';
    }
  }
}

void write_trace(std::ostream& out, const sim::RunReport& report) {
  out << "seed,t,start,wave,phase,memory_size,candidate_size,best_cost\n";
  for (const auto& s : report.seeds) {
    for (const auto& row : s.trace) {
      const auto& r = row.record;
      out << s.seed << ',' << format_number(row.t) << ',' << r.start << ',' << r.wave << ','
          << r.phase << ',' << r.memory_size << ',' << r.candidate_size << ','
          << format_number(r.best_cost) << '\n';
    }
  }
}

void write_timings(std::ostream& out, const sim::RunReport& report) {
  out << "seed,t,assignment_seconds,relocation_seconds\n";
  for (const auto& s : report.seeds) {
    for (const auto& e : s.timings) {
      out << s.seed << ',' << format_number(e.t) << ',' << format_number(e.assignment_seconds) << ','
          << format_number(e.relocation_seconds) << '\n';
    }
  }
}

std::vector<std::string> write_all(const std::filesystem::path& dir, const sim::RunReport& report,
                                   const WriteOptions& options) {
  std::filesystem::create_directories(dir);
  using Writer = void (*)(std::ostream&, const sim::RunReport&);
  std::vector<std::pair<std::string, Writer>> files = {
      {"report.csv", write_report},
      {"events.csv", write_events},
      {"zones.csv", write_zones},
      {"availability.csv", write_availability},
      {"relocation_flows.csv", write_flows},
      {"relocation_summary.csv", write_relocation_summary},
  };
  if (options.trace) files.emplace_back("trace.csv", write_trace);
  if (options.timings) files.emplace_back("timings.csv", write_timings);
  std::vector<std::string> names;
  for (const auto& [name, writer] : files) {
    write_file(dir / name, [&](std::ostream& out) { writer(out, report); });
    names.push_back(name);
  }
  return names;
}

}  // namespace crowdship::report
