#pragma once

// CSV writers for run reports. Floats carry 6 significant digits so repeated
// runs produce byte-identical files.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/simulation.hpp"

namespace crowdship::report {

std::string format_number(double value);

// Linear-interpolation quantile of `values` (sorted copy taken internally).
double quantile(std::vector<double> values, double q);

struct MetricValue {
  std::string name;
  double value = 0.0;
};

// Scalar metrics of one seed in stable order.
std::vector<MetricValue> seed_metrics(const sim::SeedReport& seed);

// seed,metric,value rows followed by an aggregate block whose seed column
// names the statistic (mean, min, q1, median, q3, max).
void write_report(std::ostream& out, const sim::RunReport& report);
void write_events(std::ostream& out, const sim::RunReport& report);
void write_zones(std::ostream& out, const sim::RunReport& report);
void write_availability(std::ostream& out, const sim::RunReport& report);
void write_flows(std::ostream& out, const sim::RunReport& report);
void write_relocation_summary(std::ostream& out, const sim::RunReport& report);
void write_trace(std::ostream& out, const sim::RunReport& report);
void write_timings(std::ostream& out, const sim::RunReport& report);

struct WriteOptions {
  bool trace = false;
  bool timings = false;
};

// Writes every CSV into `dir` (created if missing) and returns the file names.
std::vector<std::string> write_all(const std::filesystem::path& dir, const sim::RunReport& report,
                                   const WriteOptions& options = {});

}  // namespace crowdship::report
