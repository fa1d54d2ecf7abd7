#include "oracles/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace crowdship::oracle {

namespace {

constexpr double kEps = 1e-10;

class Tableau {
 public:
  // Rows of [A | I_slack | I_artificial | rhs] in equality form with rhs >= 0.
  Tableau(const std::vector<std::vector<double>>& a, const std::vector<double>& b)
      : m_(b.size()), n_(a.empty() ? 0 : a.front().size()) {
    cols_ = n_ + 2 * m_;
    t_.assign(m_, std::vector<double>(cols_ + 1, 0.0));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = b[i] < 0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = sign * a[i][j];
      t_[i][n_ + i] = sign;
      t_[i][n_ + m_ + i] = 1.0;
      t_[i][cols_] = sign * b[i];
      basis_[i] = n_ + m_ + i;
    }
  }

  // Minimises `cost` (length cols_) over columns with allowed[j] set.
  LpStatus optimise(const std::vector<double>& cost, const std::vector<char>& allowed) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allowed[j] || is_basic(j)) continue;
        if (reduced(cost, j) < -kEps) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return LpStatus::optimal;
      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= kEps) continue;
        const double ratio = t_[i][cols_] / t_[i][enter];
        if (ratio < best - kEps || (std::abs(ratio - best) <= kEps && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == m_) return LpStatus::unbounded;
      pivot(leave, enter);
    }
  }

  double value(const std::vector<double>& cost) const {
    double v = 0.0;
    for (std::size_t i = 0; i < m_; ++i) v += cost[basis_[i]] * t_[i][cols_];
    return v;
  }

  // Pivots zero-valued artificials out of the basis where possible.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + m_) continue;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (std::abs(t_[i][j]) > kEps) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = t_[i][cols_];
    }
    return x;
  }

  std::size_t columns() const { return cols_; }
  std::size_t structural() const { return n_; }
  std::size_t rows() const { return m_; }

 private:
  bool is_basic(std::size_t j) const {
    for (std::size_t b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  double reduced(const std::vector<double>& cost, std::size_t j) const {
    double r = cost[j];
    for (std::size_t i = 0; i < m_; ++i) r -= cost[basis_[i]] * t_[i][j];
    return r;
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = t_[row][col];
    for (double& v : t_[row]) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = t_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t cols_ = 0;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c) {
  if (a.size() != b.size()) throw std::invalid_argument("row count mismatch");
  for (const auto& row : a) {
    if (row.size() != c.size()) throw std::invalid_argument("column count mismatch");
  }
  Tableau t(a, b);
  const std::size_t n = t.structural();
  const std::size_t m = t.rows();

  std::vector<double> phase1(t.columns(), 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + m + i] = 1.0;
  std::vector<char> all(t.columns(), 1);
  t.optimise(phase1, all);
  LpResult out;
  if (t.value(phase1) > 1e-9) {
    out.status = LpStatus::infeasible;
    return out;
  }
  t.expel_artificials();

  std::vector<double> phase2(t.columns(), 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  std::vector<char> allowed(t.columns(), 1);
  for (std::size_t i = 0; i < m; ++i) allowed[n + m + i] = 0;
  out.status = t.optimise(phase2, allowed);
  if (out.status != LpStatus::optimal) return out;
  out.x = t.primal();
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
  return out;
}

RelocationLp relocation_lp(const relocation::ZoneForecast& forecast,
                           const relocation::RelocationTargets& targets,
                           const relocation::ZoneCosts& costs) {
  const std::size_t z = forecast.zones();
  RelocationLp lp;
  for (std::size_t r = 0; r < z; ++r) {
    for (std::size_t s = 0; s < z; ++s) {
      if (r != s) lp.arcs.emplace_back(static_cast<int>(r), static_cast<int>(s));
    }
  }
  const std::size_t v = lp.arcs.size();
  lp.a.assign(2 * z, std::vector<double>(v, 0.0));
  lp.b.assign(2 * z, 0.0);
  for (std::size_t k = 0; k < v; ++k) {
    const auto [r, s] = lp.arcs[k];
    lp.a[static_cast<std::size_t>(r)][k] += 1.0;
    lp.a[static_cast<std::size_t>(s)][k] -= 1.0;
    lp.a[z + static_cast<std::size_t>(r)][k] = 1.0;
    lp.c.push_back(costs(static_cast<std::size_t>(r), static_cast<std::size_t>(s)));
  }
  for (std::size_t r = 0; r < z; ++r) {
    const double n = forecast.idle[r] + forecast.finishing[r] + forecast.arriving[r];
    const double d = forecast.waiting[r] + forecast.expected[r];
    lp.b[r] = n - d - targets.target[r];
    lp.b[z + r] = forecast.idle[r];
  }
  return lp;
}

}  // namespace crowdship::oracle
