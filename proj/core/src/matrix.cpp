#include "birkhoff/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "birkhoff/error.hpp"

namespace birkhoff {

namespace {

std::string describe(NotDoublyStochastic::Kind kind, std::size_t index, double deviation) {
  std::ostringstream os;
  switch (kind) {
    case NotDoublyStochastic::Kind::Row:
      os << "row " << index << " sum deviates from 1 by " << deviation;
      break;
    case NotDoublyStochastic::Kind::Column:
      os << "column " << index << " sum deviates from 1 by " << deviation;
      break;
    case NotDoublyStochastic::Kind::Entry:
      os << "entry " << index << " is negative (" << -deviation << ")";
      break;
    case NotDoublyStochastic::Kind::Shape:
      os << "matrix is empty or has non-finite entries";
      break;
  }
  return "not doubly stochastic: " + os.str();
}

}  // namespace

NotDoublyStochastic::NotDoublyStochastic(Kind kind, std::size_t index, double deviation)
    : Error(describe(kind, index, deviation)), kind_(kind), index_(index), deviation_(deviation) {}

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

SquareMatrix::SquareMatrix(std::size_t n, double fill) : n_(n), data_(n * n, fill) {}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw InvalidArgument("matrix must have at least one row");
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InvalidArgument("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                            " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(rows[i][j])) throw InvalidArgument("matrix entries must be finite");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

SquareMatrix SquareMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double SquareMatrix::row_sum(std::size_t i) const {
  double s = 0.0;
  for (double v : row(i)) s += v;
  return s;
}

double SquareMatrix::col_sum(std::size_t j) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, j);
  return s;
}

double SquareMatrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

double SquareMatrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

bool SquareMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& other) {
  if (other.n_ != n_) throw InvalidArgument("dimension mismatch in matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& other) {
  if (other.n_ != n_) throw InvalidArgument("dimension mismatch in matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
SquareMatrix operator*(double s, SquareMatrix a) { return a *= s; }

double inner(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch in inner product");
  double s = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) s += av[k] * bv[k];
  return s;
}

double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch in max_abs_diff");
  double best = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) best = std::max(best, std::abs(av[k] - bv[k]));
  return best;
}

Permutation::Permutation(std::vector<std::size_t> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t v : mapping_) {
    if (v >= mapping_.size() || seen[v]) throw InvalidArgument("mapping is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) inv[mapping_[i]] = i;
  return Permutation(std::move(inv));
}

SquareMatrix Permutation::to_matrix() const {
  SquareMatrix m(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) m(i, mapping_[i]) = 1.0;
  return m;
}

double score_of(const SquareMatrix& s, const Permutation& p) {
  if (s.size() != p.size()) throw InvalidArgument("dimension mismatch in score");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += s(i, p[i]);
  return total;
}

DoublyStochastic DoublyStochastic::from_permutation(const Permutation& p) {
  return DoublyStochastic(p.to_matrix());
}

DoublyStochastic DoublyStochastic::barycenter(std::size_t n) {
  if (n == 0) throw InvalidArgument("dimension must be positive");
  return DoublyStochastic(SquareMatrix(n, 1.0 / static_cast<double>(n)));
}

DoublyStochastic validate_doubly_stochastic(SquareMatrix m, double tolerance) {
  using Kind = NotDoublyStochastic::Kind;
  const std::size_t n = m.size();
  if (n == 0 || !m.all_finite()) throw NotDoublyStochastic(Kind::Shape, 0, 0.0);

  // Worst violation wins so the error points at the real problem.
  double worst_neg = 0.0;
  std::size_t worst_neg_at = 0;
  for (std::size_t k = 0; k < n * n; ++k) {
    double& v = m.values()[k];
    if (v < -kZeroTolerance && -v > worst_neg) {
      worst_neg = -v;
      worst_neg_at = k;
    }
  }
  if (worst_neg > 0.0) throw NotDoublyStochastic(Kind::Entry, worst_neg_at, worst_neg);
  for (double& v : m.values()) {
    if (v < 0.0) v = 0.0;
  }

  double worst = 0.0;
  std::size_t worst_at = 0;
  Kind worst_kind = Kind::Row;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = std::abs(m.row_sum(i) - 1.0);
    if (dr > worst) {
      worst = dr;
      worst_at = i;
      worst_kind = Kind::Row;
    }
    const double dc = std::abs(m.col_sum(i) - 1.0);
    if (dc > worst) {
      worst = dc;
      worst_at = i;
      worst_kind = Kind::Column;
    }
  }
  if (worst > tolerance) throw NotDoublyStochastic(worst_kind, worst_at, worst);
  return DoublyStochastic(std::move(m));
}

ScoreMatrix::ScoreMatrix(SquareMatrix m, bool identifying_assumed)
    : m_(std::move(m)), identifying_(identifying_assumed) {
  if (m_.empty()) throw InvalidArgument("score matrix must be non-empty");
  if (!m_.all_finite()) throw InvalidArgument("score matrix entries must be finite");
}

}  // namespace birkhoff

std::size_t std::hash<birkhoff::Permutation>::operator()(
    const birkhoff::Permutation& p) const noexcept {
  // FNV-1a over the mapping.
  std::size_t h = 1469598103934665603ULL;
  for (std::size_t v : p.mapping()) {
    h ^= v + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  }
  return h;
}
