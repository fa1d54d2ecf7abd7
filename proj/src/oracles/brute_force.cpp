#include "oracles/brute_force.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace crowdship::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class IlpSearch {
 public:
  IlpSearch(const relocation::ZoneForecast& f, const relocation::RelocationTargets& t,
            const relocation::ZoneCosts& c)
      : f_(f), c_(c), z_(f.zones()), moves_(z_ * z_, 0), balance_(z_, 0) {
    for (std::size_t r = 0; r < z_; ++r) {
      balance_[r] = f.idle[r] + f.finishing[r] + f.arriving[r] - f.waiting[r] - f.expected[r] -
                    t.target[r];
      for (std::size_t s = 0; s < z_; ++s) {
        if (r != s && c(r, s) < 0) throw std::invalid_argument("negative relocation cost");
      }
    }
    later_idle_.assign(z_ + 1, 0);
    for (std::size_t r = z_; r-- > 0;) later_idle_[r] = later_idle_[r + 1] + f.idle[r];
  }

  IlpOptimum run() {
    zone(0, 0.0);
    IlpOptimum out;
    out.feasible = best_ < kInf;
    if (out.feasible) {
      out.objective = best_;
      out.moves = best_moves_;
    }
    return out;
  }

 private:
  void zone(std::size_t r, double cost) {
    if (r == z_) {
      for (long b : balance_) {
        if (b < 0) return;
      }
      if (cost < best_) {
        best_ = cost;
        best_moves_ = moves_;
      }
      return;
    }
    // Zones not yet sending can still receive at most the idle couriers of
    // zones from r onwards.
    for (std::size_t j = 0; j < z_; ++j) {
      const long reachable = later_idle_[r] - (j >= r ? f_.idle[j] : 0);
      if (balance_[j] + reachable < 0) return;
    }
    send(r, 0, f_.idle[r], cost);
  }

  void send(std::size_t r, std::size_t s, int left, double cost) {
    if (cost >= best_) return;
    if (s == z_) {
      zone(r + 1, cost);
      return;
    }
    if (s == r) {
      send(r, s + 1, left, cost);
      return;
    }
    for (int w = 0; w <= left; ++w) {
      moves_[r * z_ + s] = w;
      balance_[r] -= w;
      balance_[s] += w;
      send(r, s + 1, left - w, cost + w * c_(r, s));
      balance_[r] += w;
      balance_[s] -= w;
    }
    moves_[r * z_ + s] = 0;
  }

  const relocation::ZoneForecast& f_;
  const relocation::ZoneCosts& c_;
  std::size_t z_;
  std::vector<int> moves_;
  std::vector<long> balance_;
  std::vector<long> later_idle_;
  double best_ = kInf;
  std::vector<int> best_moves_;
};

class MkpSearch {
 public:
  MkpSearch(const relocation::MkpInstance& instance, relocation::Objective objective)
      : in_(instance),
        objective_(objective),
        left_(instance.capacity),
        used_(instance.request_value.size(), 0),
        choice_(instance.jobs.size(), -1) {}

  MkpOptimum run() {
    visit(0);
    return {best_, best_choice_};
  }

 private:
  double value() const {
    double total = 0.0;
    for (std::size_t j = 0; j < choice_.size(); ++j) {
      if (choice_[j] < 0) continue;
      const auto& job = in_.jobs[j];
      if (objective_ == relocation::Objective::count) {
        total += static_cast<double>(job.requests.size());
      } else {
        for (int r : job.requests) total += in_.request_value[static_cast<std::size_t>(r)];
        total -= *job.cost[static_cast<std::size_t>(choice_[j])];
      }
    }
    return total;
  }

  void visit(std::size_t j) {
    if (j == in_.jobs.size()) {
      const double v = value();
      if (best_choice_.empty() || v > best_ + 1e-9) {
        best_ = v;
        best_choice_ = choice_;
      }
      return;
    }
    choice_[j] = -1;
    visit(j + 1);
    const auto& job = in_.jobs[j];
    for (int r : job.requests) {
      if (used_[static_cast<std::size_t>(r)]) return;
    }
    for (std::size_t k = 0; k < left_.size(); ++k) {
      if (!job.cost[k] || left_[k] == 0) continue;
      --left_[k];
      for (int r : job.requests) used_[static_cast<std::size_t>(r)] = 1;
      choice_[j] = static_cast<int>(k);
      visit(j + 1);
      choice_[j] = -1;
      for (int r : job.requests) used_[static_cast<std::size_t>(r)] = 0;
      ++left_[k];
    }
  }

  const relocation::MkpInstance& in_;
  relocation::Objective objective_;
  std::vector<int> left_;
  std::vector<char> used_;
  std::vector<int> choice_;
  double best_ = 0.0;
  std::vector<int> best_choice_;
};

// Cheapest strictly feasible stop order for one courier serving `mask`.
class SequenceSearch {
 public:
  SequenceSearch(const EpochInstance& instance, std::size_t courier, unsigned mask)
      : in_(instance), c_(instance.couriers[courier].courier), mask_(mask) {}

  double run() {
    if (mask_ == 0) return 0.0;
    walk(c_.current_point, in_.now, 0.0, 0u, 0u, 0.0);
    return best_;
  }

 private:
  double minutes(const Point& a, const Point& b) const {
    return std::hypot(a.x - b.x, a.y - b.y) / c_.speed * 60.0;
  }

  void walk(const Point& at, double t, double load, unsigned picked, unsigned dropped,
            double travel) {
    if (travel >= best_) return;
    if (dropped == mask_) {
      if (t <= c_.available_until + 1e-9) best_ = travel;
      return;
    }
    for (std::size_t i = 0; i < in_.requests.size(); ++i) {
      const unsigned bit = 1u << i;
      if (!(mask_ & bit)) continue;
      const Request& r = in_.requests[i];
      if (!(picked & bit)) {
        if (load + r.weight > c_.capacity + 1e-9) continue;
        const double leg = minutes(at, r.pickup);
        if (t + leg > c_.available_until + 1e-9) continue;
        walk(r.pickup, t + leg, load + r.weight, picked | bit, dropped, travel + leg);
      } else if (!(dropped & bit)) {
        const double leg = minutes(at, r.delivery);
        if (t + leg > r.release + r.guarantee + 1e-9) continue;
        if (t + leg > c_.available_until + 1e-9) continue;
        walk(r.delivery, t + leg, load - r.weight, picked, dropped | bit, travel + leg);
      }
    }
  }

  const EpochInstance& in_;
  const Courier& c_;
  unsigned mask_;
  double best_ = kInf;
};

}  // namespace

IlpOptimum relocation_ilp(const relocation::ZoneForecast& forecast,
                          const relocation::RelocationTargets& targets,
                          const relocation::ZoneCosts& costs) {
  return IlpSearch(forecast, targets, costs).run();
}

MkpOptimum mkp_exhaustive(const relocation::MkpInstance& instance, relocation::Objective objective) {
  return MkpSearch(instance, objective).run();
}

PdpOptimum pdp_exhaustive(const EpochInstance& instance) {
  const std::size_t n = instance.requests.size();
  if (n > 10) throw std::invalid_argument("too many requests for exhaustive search");
  for (const auto& c : instance.couriers) {
    if (c.onboard_load != 0.0) throw std::invalid_argument("couriers must start empty");
  }
  const unsigned full = (1u << n) - 1;
  std::vector<double> reach(full + 1, kInf);  // best over couriers handled so far
  reach[0] = 0.0;
  for (std::size_t k = 0; k < instance.couriers.size(); ++k) {
    std::vector<double> own(full + 1);
    for (unsigned m = 0; m <= full; ++m) own[m] = SequenceSearch(instance, k, m).run();
    std::vector<double> next(full + 1, kInf);
    for (unsigned m = 0; m <= full; ++m) {
      for (unsigned sub = m;; sub = (sub - 1) & m) {
        if (reach[m ^ sub] < kInf && own[sub] < kInf) {
          next[m] = std::min(next[m], reach[m ^ sub] + own[sub]);
        }
        if (sub == 0) break;
      }
    }
    reach = std::move(next);
  }
  PdpOptimum best{static_cast<int>(n) + 1, kInf};
  for (unsigned m = 0; m <= full; ++m) {
    if (reach[m] == kInf) continue;
    const int left = static_cast<int>(n) - std::popcount(m);
    if (left < best.unassigned || (left == best.unassigned && reach[m] < best.cost)) {
      best = {left, reach[m]};
    }
  }
  return best;
}

}  // namespace crowdship::oracle
