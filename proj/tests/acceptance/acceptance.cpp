// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when the set of failing criteria equals --expect-fail
// (empty by default), so a known, documented failure does not hide a new one.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/report.hpp"
#include "core/scenario.hpp"
#include "core/simulation.hpp"
#include "oracles/property_suites.hpp"

using namespace crowdship;

namespace {

struct Outcome {
  int id = 0;
  bool pass = false;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

// Collects the self-checks of every simulated seed for the conservation criterion.
struct Conservation {
  int seeds = 0;
  int unterminated = 0;
  int multiply_terminated = 0;
  int late = 0;
  int infeasible = 0;
  double worst_gap = 0.0;

  void add(const sim::SeedReport& r) {
    ++seeds;
    unterminated += r.unterminated;
    multiply_terminated += r.multiply_terminated;
    late += r.late_deliveries;
    infeasible += r.infeasible_commits;
    worst_gap = std::max(worst_gap, r.identity_gap);
  }
  bool ok() const {
    return seeds > 0 && unterminated == 0 && multiply_terminated == 0 && late == 0 &&
           infeasible == 0 && worst_gap < 0.01;
  }
};

Outcome suite(int id, const oracle::SuiteResult& r, double limit_seconds) {
  Outcome o;
  o.id = id;
  o.pass = r.passed() && r.seconds < limit_seconds;
  std::ostringstream s;
  s << r.name << ": " << r.cases << " cases, " << r.failures << " failures, "
    << fmt("%.2f", r.seconds) << " s (limit " << limit_seconds << " s)";
  if (!r.first_failure.empty()) s << "; " << r.first_failure;
  o.detail = s.str();
  return o;
}

double mean_tsc(const std::vector<sim::SeedReport>& seeds) {
  double sum = 0.0;
  for (const auto& s : seeds) sum += s.tsc;
  return seeds.empty() ? 0.0 : sum / static_cast<double>(seeds.size());
}

std::vector<sim::SeedReport> run_seeds(const ScenarioConfig& config, int seeds, Conservation& check) {
  std::vector<sim::SeedReport> out;
  for (int i = 0; i < seeds; ++i) {
    out.push_back(sim::run_seed(config, config.seed_base + static_cast<std::uint64_t>(i)));
    check.add(out.back());
  }
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string out_dir = "acceptance_runs";
  std::vector<int> expect_fail;
  int seeds = 10;
  std::uint64_t suite_seed = 1;
  app.add_option("--out", out_dir, "Directory for the CSV files of the acceptance runs");
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail")->delimiter(',');
  app.add_option("--seeds", seeds, "Paired seeds for the simulation criteria")->check(CLI::PositiveNumber);
  app.add_option("--suite-seed", suite_seed, "Seed of the property suites");
  CLI11_PARSE(app, argc, argv);

  const Clock total;
  std::filesystem::create_directories(out_dir);
  std::vector<Outcome> outcomes;
  auto report = [&](Outcome o) {
    std::printf("%s %d %s\n", o.pass ? "PASS" : "FAIL", o.id, o.detail.c_str());
    std::fflush(stdout);
    outcomes.push_back(std::move(o));
  };

  report(suite(1, oracle::check_relocation_remarks(1000, suite_seed), 10.0));
  report(suite(2, oracle::check_lp_integrality(500, suite_seed), 60.0));
  report(suite(3, oracle::check_knapsack(300, suite_seed), 60.0));
  {
    const oracle::MicroResult m = oracle::run_micro_optimality(100, suite_seed);
    Outcome o;
    o.id = 4;
    o.pass = m.cases == 100 && m.near_optimal >= 90 && m.worse_than_initial == 0 && m.infeasible == 0 &&
             m.beats_oracle == 0;
    std::ostringstream s;
    s << "micro optimality: " << m.near_optimal << "/" << m.cases << " within 5% of the optimum, "
      << m.worse_than_initial << " worse than the best initial solution, " << m.infeasible
      << " infeasible, " << m.beats_oracle << " below the optimum";
    o.detail = s.str();
    report(o);
  }
  report(suite(5, oracle::check_schedule(1000, suite_seed), 60.0));
  {
    const double step = sim::recommend_timestep(0.15, 0.1);
    const double expected = std::sqrt(0.9) / 0.15;
    Outcome o;
    o.id = 6;
    o.pass = std::abs(step - expected) < 1e-9;
    o.detail = "time step " + fmt("%.9f", step) + " min, expected " + fmt("%.9f", expected);
    report(o);
  }

  Conservation conservation;
  const ScenarioConfig small = preset("paper-small");
  std::ofstream summary(std::filesystem::path(out_dir) / "acceptance.csv");
  summary << "criterion,variant,mean_tsc\n";

  {
    const Clock clock;
    struct Variant {
      const char* name;
      SolverKind solver;
      bool relocation;
    };
    const std::vector<Variant> variants = {
        {"insertion", SolverKind::insertion, false},
        {"insertion-intra", SolverKind::insertion_intra, false},
        {"sa", SolverKind::simulated_annealing, false},
        {"rts", SolverKind::reactive_tabu, false},
        {"mtamp", SolverKind::mtamp, false},
        {"mtamp+relocation", SolverKind::mtamp, true},
    };
    std::vector<double> means;
    std::vector<std::uint64_t> checksums;
    bool shared_arrivals = true;
    int requests = 0;
    int couriers = 0;
    for (const Variant& v : variants) {
      ScenarioConfig c = small;
      c.solver = v.solver;
      c.baseline_iterations = 0;
      c.relocation = v.relocation;
      const auto runs = run_seeds(c, seeds, conservation);
      means.push_back(mean_tsc(runs));
      summary << "7," << v.name << "," << report::format_number(means.back()) << "\n";
      std::uint64_t h = 0;
      requests = couriers = 0;
      for (const auto& r : runs) {
        h = h * 1099511628211ULL ^ r.arrival_checksum;
        requests += r.requests;
        couriers += r.couriers;
      }
      if (!checksums.empty() && checksums.front() != h) shared_arrivals = false;
      checksums.push_back(h);
    }
    const double insertion = means[0];
    const double intra = means[1];
    const double sa = means[2];
    const double rts = means[3];
    const double mtamp = means[4];
    const double relocated = means[5];
    const double gain = (mtamp - relocated) / mtamp;
    Outcome o;
    o.id = 7;
    o.pass = shared_arrivals && insertion > intra && intra > rts && rts >= mtamp && relocated < mtamp &&
             gain >= 0.02;
    std::ostringstream s;
    s << "mean TSC over " << seeds << " seeds (" << requests / seeds << " requests, "
      << couriers / seeds << " couriers per day): insertion " << fmt("%.1f", insertion)
      << " > insertion-intra " << fmt("%.1f", intra) << " > rts " << fmt("%.1f", rts)
      << " >= mtamp " << fmt("%.1f", mtamp) << " > mtamp+relocation " << fmt("%.1f", relocated)
      << "; relocation saves " << fmt("%.2f", 100 * gain) << "% (need >= 2%); sa "
      << fmt("%.1f", sa) << "; sa and rts on the evaluation budget of mtamp; shared arrivals "
      << (shared_arrivals ? "yes" : "no") << "; "
      << fmt("%.0f", clock.seconds()) << " s";
    o.detail = s.str();
    report(o);
  }

  {
    const Clock clock;
    const std::vector<double> ratios = {2, 3, 4, 5};
    std::vector<double> gaps;
    for (double ratio : ratios) {
      ScenarioConfig off = small;
      set_request_courier_ratio(off, ratio);
      ScenarioConfig on = off;
      on.relocation = true;
      const double without = mean_tsc(run_seeds(off, seeds, conservation));
      const double with = mean_tsc(run_seeds(on, seeds, conservation));
      gaps.push_back((without - with) / without);
      summary << "8,ratio " << ratio << " off," << report::format_number(without) << "\n";
      summary << "8,ratio " << ratio << " on," << report::format_number(with) << "\n";
    }
    int steps_ok = 0;
    for (std::size_t i = 1; i < gaps.size(); ++i) steps_ok += gaps[i] <= gaps[i - 1];
    Outcome o;
    o.id = 8;
    o.pass = steps_ok == static_cast<int>(gaps.size()) - 1;
    std::ostringstream s;
    s << "relative TSC gap from relocation at ratios 2,3,4,5:";
    for (double g : gaps) s << " " << fmt("%.2f", 100 * g) << "%";
    s << "; " << steps_ok << " of " << gaps.size() - 1 << " steps non-increasing; "
      << fmt("%.0f", clock.seconds()) << " s";
    o.detail = s.str();
    report(o);
  }

  {
    const Clock clock;
    ScenarioConfig c = small;
    c.seeds = 3;
    c.relocation = true;
    const std::filesystem::path a = std::filesystem::path(out_dir) / "determinism_a";
    const std::filesystem::path b = std::filesystem::path(out_dir) / "determinism_b";
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
    const sim::RunReport first = sim::run_day(c, {true, false});
    const sim::RunReport second = sim::run_day(c, {true, false});
    for (const auto& s : first.seeds) conservation.add(s);
    for (const auto& s : second.seeds) conservation.add(s);
    const auto files = report::write_all(a, first, {true, false});
    report::write_all(b, second, {true, false});
    int differing = 0;
    for (const auto& f : files) differing += read_file(a / f) != read_file(b / f);

    ScenarioConfig baseline = small;
    baseline.seeds = 2;
    baseline.horizon = 240;
    baseline.solver = SolverKind::reactive_tabu;
    const sim::RunReport r1 = sim::run_day(baseline);
    const sim::RunReport r2 = sim::run_day(baseline);
    std::ostringstream x1;
    std::ostringstream x2;
    report::write_report(x1, r1);
    report::write_events(x1, r1);
    report::write_report(x2, r2);
    report::write_events(x2, r2);
    differing += x1.str() != x2.str();

    Outcome o;
    o.id = 10;
    o.pass = differing == 0 && !files.empty();
    o.detail = std::to_string(files.size() + 1) + " outputs compared across repeated runs, " +
               std::to_string(differing) + " differ; " + fmt("%.0f", clock.seconds()) + " s";
    // Criterion 9 covers every seed simulated above, so it is reported last.
    Outcome nine;
    nine.id = 9;
    nine.pass = conservation.ok();
    std::ostringstream s;
    s << conservation.seeds << " simulated days: " << conservation.unterminated << " unterminated, "
      << conservation.multiply_terminated << " terminated twice, " << conservation.late
      << " late deliveries, " << conservation.infeasible << " infeasible commits, worst cost gap $"
      << fmt("%.2g", conservation.worst_gap);
    nine.detail = s.str();
    report(nine);
    report(o);
  }

  std::set<int> failed;
  for (const Outcome& o : outcomes) {
    if (!o.pass) failed.insert(o.id);
  }
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  std::printf("total %.0f s; %zu of %zu criteria pass\n", total.seconds(),
              outcomes.size() - failed.size(), outcomes.size());
  if (failed != expected) {
    std::printf("failing criteria differ from the expected set\n");
    return 1;
  }
  return 0;
}
