#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "birkhoff/matrix.hpp"
#include "birkhoff/random.hpp"

namespace birkhoff {

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct DecompositionTerm {
  double alpha = 0.0;
  Permutation permutation;
  // Lexicographically smallest cell of `permutation` where the remainder
  // attained its minimum, i.e. the cell this term drove to zero.
  Cell argmin_cell;
  // Distance from alpha to the smallest remainder this step leaves positive
  // on the permutation's cells; infinity when the step clears all of them.
  // Cells tied with the minimum up to kZeroTolerance are cleared with it.
  // A small gap means a nearby input would pick a different argmin cell.
  double min_gap = 0.0;
};

struct BirkhoffDecomposition {
  std::vector<DecompositionTerm> terms;
  // Matrix inf-norm of the remainder when the loop stopped.
  double residual_norm = 0.0;
  // False when the score was not known to be identifying; the order (and
  // hence continuity) guarantees do not apply then.
  bool order_guaranteed = true;

  std::size_t size() const noexcept { return terms.size(); }
  double alpha_sum() const;
};

// Upper bound n^2 - n + 1 on the number of nonzero coefficients.
std::size_t max_decomposition_terms(std::size_t n);

// Score-induced decomposition: each step subtracts the maximum-score matching
// of the remainder, scaled by its minimum entry on that matching. Stops when
// the remainder vanishes or after `max_terms` terms.
//
// Throws TermBudgetExceeded if more than n^2 - n + 1 terms appear, and
// NoPerfectMatching if a non-negligible remainder has no matching.
BirkhoffDecomposition score_decompose(const DoublyStochastic& a, const ScoreMatrix& s,
                                      std::optional<std::size_t> max_terms = std::nullopt);

// Same loop with a fresh random score per call, so the matching picked at
// each step is arbitrary rather than order-consistent.
BirkhoffDecomposition classical_decompose(const DoublyStochastic& a, Rng& rng);

// sum_k alpha_k P_k.
SquareMatrix reconstruct(const BirkhoffDecomposition& d, std::size_t n);

}  // namespace birkhoff
