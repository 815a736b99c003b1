#include "birkhoff/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "birkhoff/error.hpp"
#include "birkhoff/matching.hpp"

namespace birkhoff {

namespace {

// A remainder this small that no longer admits a matching is rounding
// residue, not an invalid input.
constexpr double kResidueTolerance = 1e-9;

double max_row_sum(const SquareMatrix& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) best = std::max(best, b.row_sum(i));
  return best;
}

BirkhoffDecomposition decompose_loop(const DoublyStochastic& a, const ScoreMatrix& s,
                                     std::optional<std::size_t> max_terms, bool guaranteed) {
  const std::size_t n = a.size();
  if (s.size() != n) throw InvalidArgument("score and matrix dimensions differ");
  if (max_terms && *max_terms == 0) throw InvalidArgument("max_terms must be positive when set");

  const std::size_t budget = max_decomposition_terms(n);
  BirkhoffDecomposition out;
  out.order_guaranteed = guaranteed;

  SquareMatrix b = a.matrix();
  for (double& v : b.values()) {
    if (v <= kZeroTolerance) v = 0.0;
  }

  while (b.max_abs() > 0.0) {
    if (max_terms && out.terms.size() >= *max_terms) break;

    Permutation p;
    try {
      p = max_score_matching(SupportMask::of(b), s);
    } catch (const NoPerfectMatching&) {
      if (max_row_sum(b) <= kResidueTolerance) break;
      throw;
    }

    double alpha = std::numeric_limits<double>::infinity();
    std::size_t arg_row = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = b(i, p[i]);
      if (v < alpha) {
        alpha = v;
        arg_row = i;
      }
    }

    // Cells within kZeroTolerance of the minimum are cleared together with
    // the argmin; the gap is measured to the nearest surviving cell.
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double& v = b(i, p[i]);
      v = (i == arg_row) ? 0.0 : v - alpha;
      if (std::abs(v) <= kZeroTolerance) v = 0.0;
      if (v > 0.0) gap = std::min(gap, v);
    }

    const Cell argmin{arg_row, p[arg_row]};
    out.terms.push_back(DecompositionTerm{alpha, std::move(p), argmin, gap});
    if (out.terms.size() > budget) {
      throw TermBudgetExceeded("decomposition produced more than " + std::to_string(budget) +
                               " terms");
    }
  }
  out.residual_norm = b.inf_norm();
  return out;
}

}  // namespace

double BirkhoffDecomposition::alpha_sum() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.alpha;
  return s;
}

std::size_t max_decomposition_terms(std::size_t n) { return n * n - n + 1; }

BirkhoffDecomposition score_decompose(const DoublyStochastic& a, const ScoreMatrix& s,
                                      std::optional<std::size_t> max_terms) {
  return decompose_loop(a, s, max_terms, s.identifying_assumed());
}

BirkhoffDecomposition classical_decompose(const DoublyStochastic& a, Rng& rng) {
  const ScoreMatrix s = random_identifying_score(a.size(), rng);
  BirkhoffDecomposition d = decompose_loop(a, s, std::nullopt, false);
  return d;
}

SquareMatrix reconstruct(const BirkhoffDecomposition& d, std::size_t n) {
  SquareMatrix m(n);
  for (const auto& t : d.terms) {
    if (t.permutation.size() != n) throw InvalidArgument("term dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) m(i, t.permutation[i]) += t.alpha;
  }
  return m;
}

}  // namespace birkhoff
