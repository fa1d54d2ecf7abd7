#pragma once

// Multi-start adaptive memory search over request-to-courier assignments.
//
// A search runs once per initial solution. Each start sweeps "waves" over the
// couriers' routes; a wave moves requests off one route, collects the moves in
// a candidate list (CL) and grows an adaptive memory (AM) of selected
// solutions in alternating vertical (grow) and horizontal (remove/replace)
// phases. Solutions that enter AM often enough become tabu and stay put.

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "core/domain.hpp"
#include "core/rng.hpp"

namespace crowdship::mtamp {

struct Fingerprint {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct FingerprintHash {
  std::size_t operator()(const Fingerprint& f) const { return f.lo ^ (f.hi * 0x9e3779b97f4a7c15ULL); }
};

// Equal iff every courier has the same stop sequence and the unassigned sets
// agree; independent of the order routes are listed in.
Fingerprint fingerprint(const Solution& solution);

struct Candidate {
  Solution solution;
  Fingerprint key;
};

Candidate make_candidate(Solution solution);

// Candidate list, deduplicated by fingerprint, insertion ordered.
class CandidateList {
 public:
  bool add(const Candidate& c);
  bool contains(const Fingerprint& key) const { return keys_.contains(key); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Candidate& operator[](std::size_t i) const { return items_[i]; }
  std::span<const Candidate> items() const { return items_; }

 private:
  std::vector<Candidate> items_;
  std::unordered_set<Fingerprint, FingerprintHash> keys_;
};

struct SearchMemory {
  CandidateList candidates;                                      // CL
  std::deque<Candidate> memory;                                  // AM, oldest first
  std::unordered_map<Fingerprint, int, FingerprintHash> entries;  // AM entry counts
  int tabu_count = 3;

  // Member of the persistently attractive set.
  bool is_tabu(const Fingerprint& key) const;
  // Appends to the end of AM and counts the entry.
  void enter(const Candidate& c);
};

struct TraceRecord {
  int start = 0;
  int wave = 0;
  int phase = 0;  // 0 = schedule sizing, q = phase q, -1 = concluding phase
  std::size_t memory_size = 0;
  std::size_t candidate_size = 0;
  double best_cost = 0.0;
};

// Shared state of one search: instance, reference cost C_R0 for selection and
// pruning, the best strictly feasible solution so far, and counters.
class SearchContext {
 public:
  SearchContext(const EpochInstance& instance, const Solution& initial);

  const EpochInstance& instance() const { return *instance_; }
  const CostParams& params() const { return instance_->params; }
  double reference_cost() const { return reference_cost_; }
  void set_reference(const Solution& initial);

  const Solution& best() const { return best_; }
  // Records `s` as best if strictly feasible and preferable.
  void offer(const Solution& s);

  std::uint64_t evaluations = 0;
  std::vector<TraceRecord>* trace = nullptr;

 private:
  const EpochInstance* instance_;
  double reference_cost_ = 0.0;
  Solution best_;
};

// Selection probabilities exp(a(C0 - C)/C0) normalised over `costs`.
std::vector<double> selection_probabilities(std::span<const double> costs, double reference_cost,
                                            double alpha);
std::size_t select_index(std::span<const double> costs, double reference_cost, double alpha,
                         Rng& rng);

// Moves each movable request of route `wave` to the end of every other
// admissible route, plus the earlier-pickup variants of each move. Candidates
// costing more than (1 + discard_ratio) * C0 are dropped.
std::vector<Candidate> generate_candidate_list(SearchContext& ctx, const Solution& solution,
                                               int wave);

struct ForwardMove {
  Candidate result;                  // R''1 when it beats R1, otherwise R1
  std::optional<Candidate> explored;  // R''1, absent when no move existed
};

// Moves one more request off `wave` (end-of-route appends), picks one move by
// probabilistic selection and re-optimises the moved request's position.
ForwardMove forward_move(SearchContext& ctx, const Candidate& selected, int wave, Rng& rng);

struct PhaseSchedule {
  int delta = 0;
  int phases = 0;           // q*
  std::vector<int> sizes;   // mu_1..mu_q*
  int first_step = 0;       // d_{1,q}

  bool empty() const { return phases == 0; }
};

PhaseSchedule plan_schedule(int delta, int eta);
// Step sizes d_{1..h,q} of one horizontal phase; they sum to `memory_size`.
std::vector<int> step_sizes(int memory_size, int first_step);

// Memory size reached by growing AM with forward moves (no horizontal phases)
// until a selected solution admits no forward move; side-effect free.
int sizing_run(SearchContext& ctx, const SearchMemory& memory, int wave, Rng& rng);

void vertical_phase(SearchContext& ctx, SearchMemory& memory, int target_size, int wave, Rng& rng);
void horizontal_phase(SearchContext& ctx, SearchMemory& memory, std::span<const int> steps,
                      Rng& rng);
void concluding_phase(SearchContext& ctx, SearchMemory& memory, int wave, Rng& rng);

struct SearchResult {
  Solution best;
  std::uint64_t evaluations = 0;
  int start = -1;  // index of the initial solution the best came from
};

struct SearchOptions {
  std::uint64_t seed = 1;
  std::vector<TraceRecord>* trace = nullptr;
};

// Runs the search from every initial solution and returns the preferable
// strictly feasible result (fewest unassigned, then lowest cost).
SearchResult run_mtamp(const EpochInstance& instance, std::span<const Solution> initials,
                       const SearchOptions& options);

}  // namespace crowdship::mtamp
