#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "birkhoff/extension.hpp"
#include "birkhoff/matrix.hpp"
#include "birkhoff/random.hpp"

namespace birkhoff {

enum class StepRule {
  Constant,  // lambda_t = eta
  Classic,   // lambda_t = 2 / (t + 2)
};

enum class UpdateTrigger {
  Period,  // every score_update_period iterations
  Stall,   // when F has not improved for score_update_period iterations
};

struct SolverConfig {
  double eta = 0.01;
  std::size_t steps = 1000;
  // Stop after this many iterations without a better rounded value; 0 = off.
  std::size_t patience = 0;
  // 0 means the score never changes (static solver).
  std::size_t score_update_period = 0;
  // Decomposition truncation K; 0 = full decomposition.
  std::size_t max_terms = 0;
  std::uint64_t seed = 0;
  // Noise scale for score updates; unset = 1/(2n) - margin.
  std::optional<double> noise_scale;
  StepRule step_rule = StepRule::Constant;
  UpdateTrigger trigger = UpdateTrigger::Period;
  // Start from a random interior point instead of the barycenter when the
  // caller does not provide A0 (see initial_point).
  bool random_start = false;
  bool record_trace = true;

  // Throws InvalidArgument on eta outside (0, 1] or steps == 0.
  void validate() const;
  std::optional<std::size_t> truncation() const {
    return max_terms == 0 ? std::nullopt : std::optional<std::size_t>(max_terms);
  }
};

struct TraceRecord {
  std::size_t iteration = 0;
  double extension_value = 0.0;
  // f(round_S(A_t)) under the score in force at iteration t.
  double rounded = 0.0;
  double best = 0.0;
  // The score was replaced at the end of this iteration.
  bool score_updated = false;
};

struct SolveTrace {
  std::vector<TraceRecord> records;
  Permutation best_permutation;
  double best_value = 0.0;
  std::size_t iterations = 0;
  std::size_t score_updates = 0;
  double wall_time_seconds = 0.0;
};

struct SolveResult {
  // Best permutation over every decomposition term seen during the solve.
  Permutation permutation;
  double value = 0.0;
  // round_S(A_T) at the last evaluated iterate.
  RoundResult last_round;
  SolveTrace trace;
};

// Insertion-ordered set of permutations with their objective values.
class PermutationPool {
 public:
  // Returns true if `p` was new.
  bool insert(const Permutation& p, double value);
  bool empty() const noexcept { return items_.empty(); }
  std::size_t size() const noexcept { return items_.size(); }
  // First-inserted permutation of minimal value. Throws EmptyPool.
  const Permutation& best() const;
  double best_value() const;
  std::span<const Permutation> items() const noexcept { return items_; }

 private:
  std::vector<Permutation> items_;
  std::vector<double> values_;
  std::unordered_set<Permutation> seen_;
  std::size_t best_ = 0;
};

// argmin_P <grad, P>, the vertex best aligned with -grad.
Permutation fw_direction(const DoublyStochastic& a, const SquareMatrix& grad);

// (1 - lambda) A + lambda P.
DoublyStochastic fw_step(const DoublyStochastic& a, const Permutation& p, double lambda);

// Barycenter, or a random point of the polytope's interior when
// cfg.random_start is set.
DoublyStochastic initial_point(std::size_t n, const SolverConfig& cfg);

SolveResult solve_static(const Objective& f, const ScoreMatrix& s, const DoublyStochastic& a0,
                         const SolverConfig& cfg);

// Perturbed score centred on the best permutation of `pool`, re-evaluated
// with f. Throws EmptyPool.
ScoreMatrix update_score_from_pool(std::span<const Permutation> pool, const Objective& f, Rng& rng,
                                   std::optional<double> noise_scale = std::nullopt);

SolveResult solve_dynamic(const Objective& f, const ScoreMatrix& s0, const DoublyStochastic& a0,
                          const SolverConfig& cfg);

}  // namespace birkhoff
