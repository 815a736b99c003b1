#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "birkhoff/decomposition.hpp"
#include "birkhoff/matrix.hpp"

namespace birkhoff {

// Black-box function on permutations of [0, n). `eval` must be deterministic;
// any instance data is captured inside it.
struct Objective {
  std::size_t n = 0;
  std::function<double(const Permutation&)> eval;
  std::string name;

  double operator()(const Permutation& p) const { return eval(p); }
};

// Memoizing wrapper. Internally synchronized, so one cache can back
// concurrent evaluations.
class CachedObjective {
 public:
  explicit CachedObjective(Objective f);

  double operator()(const Permutation& p) const;
  // Objective that routes through this cache; shares the memo table.
  Objective view() const;

  std::size_t hits() const;
  std::size_t misses() const;

 private:
  struct State {
    std::mutex mu;
    std::unordered_map<Permutation, double> values;
    std::size_t hits = 0;
    std::size_t misses = 0;
  };
  static double lookup(const Objective& f, State& st, const Permutation& p);

  Objective f_;
  std::shared_ptr<State> state_;
};

struct ExtensionValue {
  double value = 0.0;
  BirkhoffDecomposition decomposition;
  std::vector<double> per_term_f;
  // Sum of the stored coefficients; below one only in truncated mode.
  double weight_sum = 0.0;
  bool truncated = false;
};

// F_S(A) = sum_k alpha_k f(P_k). With max_terms set, the first K terms are
// combined and renormalized by their coefficient sum.
ExtensionValue evaluate(const DoublyStochastic& a, const ScoreMatrix& s, const Objective& f,
                        std::optional<std::size_t> max_terms = std::nullopt);

// Combine an existing decomposition with f.
ExtensionValue evaluate(BirkhoffDecomposition d, const Objective& f, bool truncated);

SquareMatrix gradient(const DoublyStochastic& a, const ScoreMatrix& s, const Objective& f,
                      std::optional<std::size_t> max_terms = std::nullopt);

// Gradient in ambient n x n coordinates. Each coefficient depends on A only
// through its argmin cell and the coefficients of earlier terms covering that
// cell, so the gradient is a sum of single-entry indicators, accumulated here
// in reverse term order. Only projections onto directions tangent to the
// polytope are meaningful. In truncated mode this is the derivative of the
// renormalized value, normalizer included.
SquareMatrix gradient(const ExtensionValue& ev, std::size_t n);

struct RoundResult {
  Permutation permutation;
  double value = 0.0;
};

// Decomposition term of minimal f; f(result) <= F_S(A).
RoundResult round(const DoublyStochastic& a, const ScoreMatrix& s, const Objective& f,
                  std::optional<std::size_t> max_terms = std::nullopt);
RoundResult round(const ExtensionValue& ev);

}  // namespace birkhoff
