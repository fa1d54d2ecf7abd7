#pragma once

// Dense two-phase simplex used as an independent reference for the relocation
// program. Bland's rule keeps it free of cycling; sizes here are tiny.

#include <utility>
#include <vector>

#include "core/relocation_flow.hpp"

namespace crowdship::oracle {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// Minimises c.x subject to A x <= b and x >= 0; b may have any sign.
LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c);

// The relocation program written out as an explicit matrix: one variable per
// ordered zone pair (r, s), r != s, row-major; the first |Z| rows are the
// balance constraints negated into <= form, the next |Z| rows the outflow caps.
struct RelocationLp {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<std::pair<int, int>> arcs;
};

RelocationLp relocation_lp(const relocation::ZoneForecast& forecast,
                           const relocation::RelocationTargets& targets,
                           const relocation::ZoneCosts& costs);

}  // namespace crowdship::oracle
