#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/report.hpp"

using namespace crowdship;
using namespace crowdship::report;

namespace {

sim::RunReport small_run() {
  ScenarioConfig c = preset("paper-small");
  c.horizon = 40.0;
  c.seeds = 2;
  c.relocation = true;
  return sim::run_day(c, {true, true});
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.5) == "1.5");
  CHECK(format_number(123456789.0) == "1.23457e+08");
  CHECK(format_number(2.0 / 3.0) == "0.666667");
}

TEST_CASE("quantiles interpolate linearly") {
  const std::vector<double> v = {4, 1, 3, 2};
  CHECK(quantile(v, 0.0) == 1.0);
  CHECK(quantile(v, 1.0) == 4.0);
  CHECK(quantile(v, 0.5) == doctest::Approx(2.5));
  CHECK(quantile(v, 0.25) == doctest::Approx(1.75));
  CHECK(quantile({7.0}, 0.3) == 7.0);
}

TEST_CASE("report layout") {
  const sim::RunReport run = small_run();
  std::ostringstream out;
  write_report(out, run);
  const auto rows = lines(out.str());
  REQUIRE_FALSE(rows.empty());
  CHECK(rows[0] == "seed,metric,value");
  const std::size_t metrics = seed_metrics(run.seeds[0]).size();
  // Per seed: metrics plus the checksum row; then six statistics per metric.
  CHECK(rows.size() == 1 + 2 * (metrics + 1) + 6 * metrics);
  CHECK(rows[1].rfind("1,tsc,", 0) == 0);
  CHECK(out.str().find("\nmean,tsc,") != std::string::npos);
  CHECK(out.str().find("\nmedian,tsc,") != std::string::npos);
}

TEST_CASE("csv headers") {
  const sim::RunReport run = small_run();
  auto header = [&](void (*writer)(std::ostream&, const sim::RunReport&)) {
    std::ostringstream out;
    writer(out, run);
    return lines(out.str()).at(0);
  };
  CHECK(header(write_events) == "seed,t,event_type,request_id,courier_id,zone_from,zone_to,cost_delta_usd");
  CHECK(header(write_zones) == "seed,zone,requests,courier_fulfilled,fulfilled_fraction");
  CHECK(header(write_availability) == "seed,t,couriers_per_request");
  CHECK(header(write_flows) == "seed,t,from_zone,to_zone,couriers");
  CHECK(header(write_relocation_summary) ==
        "seed,t,skipped,reason,pending,flow_total,relocatable,clusters,jobs,objective,orders");
  CHECK(header(write_trace) == "seed,t,start,wave,phase,memory_size,candidate_size,best_cost");
  CHECK(header(write_timings) == "seed,t,assignment_seconds,relocation_seconds");

  std::ostringstream zones;
  write_zones(zones, run);
  CHECK(lines(zones.str()).size() == 1 + 2 * 144);
}

TEST_CASE("write_all creates the requested files") {
  const sim::RunReport run = small_run();
  const auto dir = std::filesystem::temp_directory_path() / "crowdship_report_test";
  std::filesystem::remove_all(dir);
  const auto names = write_all(dir, run);
  CHECK(names.size() == 6);
  for (const auto& n : names) CHECK(std::filesystem::exists(dir / n));
  CHECK_FALSE(std::filesystem::exists(dir / "trace.csv"));
  const auto all = write_all(dir, run, {true, true});
  CHECK(all.size() == 8);
  CHECK(std::filesystem::exists(dir / "timings.csv"));
  std::filesystem::remove_all(dir);
}
