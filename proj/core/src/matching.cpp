#include "birkhoff/matching.hpp"

#include <algorithm>
#include <limits>

#include "birkhoff/error.hpp"

namespace birkhoff {

namespace {

// Shortest-augmenting-path Hungarian algorithm on a maximization problem.
// Rows are inserted one at a time; forbidden cells are never relaxed, so an
// unreachable free column shows up as an infinite delta.
//
// Ties in delta prefer unmatched columns, then the lowest index. With an
// all-equal weight matrix this assigns row i to column i.
template <typename Weight, typename Allowed>
Permutation hungarian_max(std::size_t n, Weight weight, Allowed allowed) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based with a virtual column 0, as in the classical formulation.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        if (allowed(i0 - 1, j - 1)) {
          const double cur = -weight(i0 - 1, j - 1) - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta ||
            (minv[j] == delta && j1 != 0 && match[j] == 0 && match[j1] != 0)) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == 0 || delta == kInf) {
        throw NoPerfectMatching("support admits no perfect matching (row " +
                                std::to_string(row - 1) + " cannot be augmented)");
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> mapping(n);
  for (std::size_t j = 1; j <= n; ++j) mapping[match[j] - 1] = j - 1;
  return Permutation(std::move(mapping));
}

}  // namespace

SupportMask::SupportMask(std::size_t n, bool fill) : n_(n), cells_(n * n, fill ? 1 : 0) {}

SupportMask SupportMask::of(const SquareMatrix& b, double threshold) {
  SupportMask mask(b.size());
  auto vals = b.values();
  for (std::size_t k = 0; k < vals.size(); ++k) mask.cells_[k] = vals[k] > threshold ? 1 : 0;
  return mask;
}

std::size_t SupportMask::count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

Permutation max_score_matching(const SupportMask& mask, const ScoreMatrix& s) {
  const std::size_t n = s.size();
  if (mask.size() != n) throw InvalidArgument("mask and score dimensions differ");
  Permutation p = hungarian_max(
      n, [&](std::size_t i, std::size_t j) { return s(i, j); },
      [&](std::size_t i, std::size_t j) { return mask(i, j); });
  for (std::size_t i = 0; i < n; ++i) {
    if (!mask(i, p[i])) throw NoPerfectMatching("matching selected a forbidden cell");
  }
  return p;
}

Permutation max_weight_matching_dense(const SquareMatrix& w) {
  if (w.empty()) throw InvalidArgument("weight matrix must be non-empty");
  return hungarian_max(
      w.size(), [&](std::size_t i, std::size_t j) { return w(i, j); },
      [](std::size_t, std::size_t) { return true; });
}

}  // namespace birkhoff
