#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "birkhoff/matrix.hpp"

namespace birkhoff {

using Rng = std::mt19937_64;

// Stateless 64-bit mixer for deriving independent child seeds from a master
// seed (benchmarks, per-instance generators).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

double uniform01(Rng& rng);
Permutation random_permutation(std::size_t n, Rng& rng);

// Convex combination together with the pairs that generated it.
struct ConvexCombination {
  DoublyStochastic matrix;
  std::vector<double> weights;
  std::vector<Permutation> permutations;
};

// sum_k weights[k] * permutations[k]. Weights must be nonnegative and sum to
// one; throws InvalidArgument otherwise.
DoublyStochastic convex_combination(const std::vector<double>& weights,
                                    const std::vector<Permutation>& permutations);

// m uniform random permutations with flat-Dirichlet weights.
ConvexCombination random_convex_combination(std::size_t n, std::size_t m, Rng& rng);
DoublyStochastic random_doubly_stochastic(std::size_t n, std::size_t m, Rng& rng);

// I.i.d. uniform [0, 1) entries. Identifying with probability one.
ScoreMatrix random_identifying_score(std::size_t n, Rng& rng);

// S(i, j) = 2^(i + n j), 0-based. Every permutation score is a distinct sum
// of powers of two, so the order is exact only while n^2 - 1 < 53.
inline constexpr std::size_t kMaxExactPowerScore = 7;
ScoreMatrix power_score(std::size_t n);

// Default noise scale for perturbed_permutation_score: 1/(2n) - margin.
inline constexpr double kNoiseMargin = 1e-6;
double default_noise_scale(std::size_t n);

// S = P + c Q with Q i.i.d. uniform [0, 1). With c <= 1/(2n) every entry is
// strictly within 1/(2n) of P, so P scores above every other permutation.
ScoreMatrix perturbed_permutation_score(const Permutation& p, Rng& rng,
                                        std::optional<double> scale = std::nullopt);

}  // namespace birkhoff
