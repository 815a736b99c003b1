#include "birkhoff/frank_wolfe.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "birkhoff/error.hpp"
#include "birkhoff/matching.hpp"

namespace birkhoff {

void SolverConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in (0, 1]");
  if (steps == 0) throw InvalidArgument("steps must be at least 1");
  if (noise_scale && !(*noise_scale > 0.0)) throw InvalidArgument("noise scale must be positive");
}

bool PermutationPool::insert(const Permutation& p, double value) {
  if (!seen_.insert(p).second) return false;
  items_.push_back(p);
  values_.push_back(value);
  if (value < values_[best_]) best_ = items_.size() - 1;
  return true;
}

const Permutation& PermutationPool::best() const {
  if (items_.empty()) throw EmptyPool("permutation pool is empty");
  return items_[best_];
}

double PermutationPool::best_value() const {
  if (items_.empty()) throw EmptyPool("permutation pool is empty");
  return values_[best_];
}

Permutation fw_direction(const DoublyStochastic& a, const SquareMatrix& grad) {
  if (grad.size() != a.size()) throw InvalidArgument("gradient and iterate dimensions differ");
  SquareMatrix neg = grad;
  neg *= -1.0;
  return max_weight_matching_dense(neg);
}

DoublyStochastic fw_step(const DoublyStochastic& a, const Permutation& p, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("step size must lie in [0, 1]");
  if (p.size() != a.size()) throw InvalidArgument("permutation and iterate dimensions differ");
  if (lambda == 1.0) return DoublyStochastic::from_permutation(p);
  SquareMatrix m = a.matrix();
  m *= 1.0 - lambda;
  for (std::size_t i = 0; i < p.size(); ++i) m(i, p[i]) += lambda;
  return validate_doubly_stochastic(std::move(m));
}

DoublyStochastic initial_point(std::size_t n, const SolverConfig& cfg) {
  if (!cfg.random_start) return DoublyStochastic::barycenter(n);
  Rng rng(derive_seed(cfg.seed, 0xa0));
  // Halfway between the barycenter and a random vertex mixture stays interior.
  SquareMatrix m = random_doubly_stochastic(n, n, rng).matrix();
  m *= 0.5;
  m += SquareMatrix(n, 0.5 / static_cast<double>(n));
  return validate_doubly_stochastic(std::move(m));
}

ScoreMatrix update_score_from_pool(std::span<const Permutation> pool, const Objective& f, Rng& rng,
                                   std::optional<double> noise_scale) {
  if (pool.empty()) throw EmptyPool("cannot update the score from an empty pool");
  std::size_t best = 0;
  double best_value = f(pool[0]);
  for (std::size_t k = 1; k < pool.size(); ++k) {
    const double v = f(pool[k]);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  return perturbed_permutation_score(pool[best], rng, noise_scale);
}

namespace {

SolveResult run(const Objective& f, ScoreMatrix s, const DoublyStochastic& a0,
                const SolverConfig& cfg, bool dynamic) {
  cfg.validate();
  const std::size_t n = a0.size();
  if (f.n != n || s.size() != n) throw InvalidArgument("objective, score and A0 dimensions differ");
  const auto start = std::chrono::steady_clock::now();

  CachedObjective cache(f);
  const Objective cached = cache.view();
  Rng rng(derive_seed(cfg.seed, 0x5c0e));
  const auto truncation = cfg.truncation();

  PermutationPool pool;
  SolveResult result;
  SolveTrace& trace = result.trace;
  DoublyStochastic a = a0;

  std::size_t since_improvement = 0;
  std::size_t since_f_improvement = 0;
  double best_f_value = std::numeric_limits<double>::infinity();

  for (std::size_t t = 1; t <= cfg.steps; ++t) {
    ExtensionValue ev = evaluate(score_decompose(a, s, truncation), cached, truncation.has_value());
    const RoundResult r = round(ev);

    const double before = pool.empty() ? std::numeric_limits<double>::infinity() : pool.best_value();
    for (std::size_t k = 0; k < ev.decomposition.terms.size(); ++k) {
      pool.insert(ev.decomposition.terms[k].permutation, ev.per_term_f[k]);
    }
    const bool improved = pool.best_value() < before;
    since_improvement = improved ? 0 : since_improvement + 1;

    if (ev.value < best_f_value) {
      best_f_value = ev.value;
      since_f_improvement = 0;
    } else {
      ++since_f_improvement;
    }

    TraceRecord rec{t, ev.value, r.value, pool.best_value(), false};
    result.last_round = r;
    trace.iterations = t;

    const SquareMatrix grad = gradient(ev, n);

    if (dynamic) {
      const bool fire = cfg.trigger == UpdateTrigger::Period
                            ? t % cfg.score_update_period == 0
                            : since_f_improvement >= cfg.score_update_period;
      if (fire) {
        s = update_score_from_pool(pool.items(), cached, rng, cfg.noise_scale);
        rec.score_updated = true;
        ++trace.score_updates;
        since_f_improvement = 0;
        best_f_value = std::numeric_limits<double>::infinity();
      }
    }
    if (cfg.record_trace) trace.records.push_back(rec);

    if (cfg.patience > 0 && since_improvement >= cfg.patience) break;
    if (t == cfg.steps) break;

    const double lambda = cfg.step_rule == StepRule::Constant
                              ? cfg.eta
                              : 2.0 / (static_cast<double>(t) + 2.0);
    a = fw_step(a, fw_direction(a, grad), lambda);
  }

  result.permutation = pool.best();
  result.value = pool.best_value();
  trace.best_permutation = result.permutation;
  trace.best_value = result.value;
  trace.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

SolveResult solve_static(const Objective& f, const ScoreMatrix& s, const DoublyStochastic& a0,
                         const SolverConfig& cfg) {
  if (cfg.score_update_period != 0) {
    throw InvalidArgument("solve_static requires score_update_period == 0");
  }
  return run(f, s, a0, cfg, false);
}

SolveResult solve_dynamic(const Objective& f, const ScoreMatrix& s0, const DoublyStochastic& a0,
                          const SolverConfig& cfg) {
  if (cfg.score_update_period == 0) {
    throw InvalidArgument("solve_dynamic requires score_update_period >= 1");
  }
  return run(f, s0, a0, cfg, true);
}

}  // namespace birkhoff
