#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace birkhoff {

// Entries at or below this magnitude count as exact zeros in support
// computations.
inline constexpr double kZeroTolerance = 1e-12;
// Row/column sum tolerance used when validating doubly stochastic input.
inline constexpr double kDoublyStochasticTolerance = 1e-9;

// Dense n x n matrix of finite doubles, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0);

  // Throws InvalidArgument on ragged, empty or non-finite input.
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static SquareMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static SquareMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }

  double row_sum(std::size_t i) const;
  double col_sum(std::size_t j) const;
  // Maximum absolute row sum.
  double inf_norm() const;
  double max_abs() const;
  bool all_finite() const;

  SquareMatrix& operator+=(const SquareMatrix& other);
  SquareMatrix& operator-=(const SquareMatrix& other);
  SquareMatrix& operator*=(double s);

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b);
SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b);
SquareMatrix operator*(double s, SquareMatrix a);

// Frobenius inner product sum_ij a(i,j) b(i,j).
double inner(const SquareMatrix& a, const SquareMatrix& b);
// max_ij |a(i,j) - b(i,j)|
double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b);

// A bijection on [0, n). mapping[i] is the column holding the 1 in row i of
// the corresponding permutation matrix. When a permutation encodes an
// ordering, row = rank and column = item, so mapping[k] is the item placed
// at position k.
class Permutation {
 public:
  Permutation() = default;
  // Throws InvalidArgument if `mapping` is not a bijection on [0, n).
  explicit Permutation(std::vector<std::size_t> mapping);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return mapping_.size(); }
  std::size_t operator[](std::size_t row) const { return mapping_[row]; }
  std::span<const std::size_t> mapping() const noexcept { return mapping_; }

  bool contains(std::size_t i, std::size_t j) const { return mapping_[i] == j; }
  Permutation inverse() const;
  SquareMatrix to_matrix() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> mapping_;
};

// <S, P> = sum_i S(i, P[i]).
double score_of(const SquareMatrix& s, const Permutation& p);

// Refinement of SquareMatrix: nonnegative with unit row and column sums.
// Only obtainable through validate_doubly_stochastic or the checked
// factories below.
class DoublyStochastic {
 public:
  const SquareMatrix& matrix() const noexcept { return m_; }
  std::size_t size() const noexcept { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  static DoublyStochastic from_permutation(const Permutation& p);
  // All entries 1/n.
  static DoublyStochastic barycenter(std::size_t n);

 private:
  friend DoublyStochastic validate_doubly_stochastic(SquareMatrix m, double tolerance);
  explicit DoublyStochastic(SquareMatrix m) : m_(std::move(m)) {}
  SquareMatrix m_;
};

// Accepts `m` when every entry is >= -kZeroTolerance (small negatives are
// clamped to 0) and every row and column sums to 1 within `tolerance`.
// Throws NotDoublyStochastic describing the worst violation otherwise.
DoublyStochastic validate_doubly_stochastic(SquareMatrix m,
                                            double tolerance = kDoublyStochasticTolerance);

// Score matrix inducing an order on permutations through <S, P>.
// `identifying_assumed` records whether the constructor guarantees (or the
// caller asserts) that all n! scores are distinct.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  explicit ScoreMatrix(SquareMatrix m, bool identifying_assumed = false);

  const SquareMatrix& matrix() const noexcept { return m_; }
  std::size_t size() const noexcept { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  bool identifying_assumed() const noexcept { return identifying_; }

  double score(const Permutation& p) const { return score_of(m_, p); }

 private:
  SquareMatrix m_;
  bool identifying_ = false;
};

}  // namespace birkhoff

template <>
struct std::hash<birkhoff::Permutation> {
  std::size_t operator()(const birkhoff::Permutation& p) const noexcept;
};
