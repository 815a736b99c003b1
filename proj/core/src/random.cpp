#include "birkhoff/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "birkhoff/error.hpp"

namespace birkhoff {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 applied to a combination of both inputs.
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(Rng& rng) {
  // 53 random bits -> [0, 1).
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(m[i - 1], m[j]);
  }
  return Permutation(std::move(m));
}

DoublyStochastic convex_combination(const std::vector<double>& weights,
                                    const std::vector<Permutation>& permutations) {
  if (weights.empty() || weights.size() != permutations.size()) {
    throw InvalidArgument("convex combination needs matching non-empty weights and permutations");
  }
  const std::size_t n = permutations.front().size();
  SquareMatrix m(n);
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] < 0.0) throw InvalidArgument("convex weights must be nonnegative");
    if (permutations[k].size() != n) throw InvalidArgument("permutation dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) m(i, permutations[k][i]) += weights[k];
    total += weights[k];
  }
  if (std::abs(total - 1.0) > kDoublyStochasticTolerance) {
    throw InvalidArgument("convex weights must sum to one");
  }
  return validate_doubly_stochastic(std::move(m));
}

ConvexCombination random_convex_combination(std::size_t n, std::size_t m, Rng& rng) {
  if (n == 0 || m == 0) throw InvalidArgument("random_doubly_stochastic needs n >= 1 and m >= 1");
  std::vector<double> weights(m);
  std::vector<Permutation> perms;
  perms.reserve(m);
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    // Exp(1) draws normalised give a flat Dirichlet sample.
    weights[k] = -std::log1p(-uniform01(rng));
    total += weights[k];
    perms.push_back(random_permutation(n, rng));
  }
  if (total <= 0.0) {
    std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(m));
  } else {
    for (double& w : weights) w /= total;
  }
  DoublyStochastic a = convex_combination(weights, perms);
  return ConvexCombination{std::move(a), std::move(weights), std::move(perms)};
}

DoublyStochastic random_doubly_stochastic(std::size_t n, std::size_t m, Rng& rng) {
  return random_convex_combination(n, m, rng).matrix;
}

ScoreMatrix random_identifying_score(std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidArgument("dimension must be positive");
  SquareMatrix s(n);
  for (double& v : s.values()) v = uniform01(rng);
  return ScoreMatrix(std::move(s), true);
}

ScoreMatrix power_score(std::size_t n) {
  if (n == 0) throw InvalidArgument("dimension must be positive");
  if (n > kMaxExactPowerScore) {
    throw DimensionTooLargeForExactScore("power_score is exact only for n <= " +
                                         std::to_string(kMaxExactPowerScore) + ", got " +
                                         std::to_string(n));
  }
  SquareMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s(i, j) = std::ldexp(1.0, static_cast<int>(i + n * j));
  }
  return ScoreMatrix(std::move(s), true);
}

double default_noise_scale(std::size_t n) {
  return 1.0 / (2.0 * static_cast<double>(n)) - kNoiseMargin;
}

ScoreMatrix perturbed_permutation_score(const Permutation& p, Rng& rng,
                                        std::optional<double> scale) {
  const std::size_t n = p.size();
  if (n == 0) throw InvalidArgument("dimension must be positive");
  const double c = scale.value_or(default_noise_scale(n));
  if (!(c > 0.0) || c > 1.0 / (2.0 * static_cast<double>(n))) {
    throw InvalidArgument("noise scale must lie in (0, 1/(2n)]");
  }
  SquareMatrix s = p.to_matrix();
  for (double& v : s.values()) v += c * uniform01(rng);
  return ScoreMatrix(std::move(s), true);
}

}  // namespace birkhoff
