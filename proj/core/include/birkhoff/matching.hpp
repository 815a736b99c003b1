#pragma once

#include <cstdint>
#include <vector>

#include "birkhoff/matrix.hpp"

namespace birkhoff {

// Cells a matching may use. For a matrix B, allowed(i, j) iff B(i, j) > threshold.
class SupportMask {
 public:
  SupportMask() = default;
  explicit SupportMask(std::size_t n, bool fill = false);
  static SupportMask of(const SquareMatrix& b, double threshold = kZeroTolerance);

  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool allowed) { cells_[i * n_ + j] = allowed ? 1 : 0; }
  std::size_t count() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> cells_;
};

// Permutation maximizing <S, P> among those using only allowed cells.
// Hungarian algorithm, O(n^3). Among equal-weight optima the result is fixed
// by the row-major scan order. Throws NoPerfectMatching when the mask admits
// no perfect matching.
Permutation max_score_matching(const SupportMask& mask, const ScoreMatrix& s);

// Permutation maximizing <W, P> over all permutations. W = 0 yields the
// identity.
Permutation max_weight_matching_dense(const SquareMatrix& w);

}  // namespace birkhoff
