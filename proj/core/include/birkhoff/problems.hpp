#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "birkhoff/extension.hpp"
#include "birkhoff/matrix.hpp"

namespace birkhoff {

// Orders are permutations mapping rank -> vertex: p[k] is the vertex at
// position k. A vertex's position is p.inverse()[v].

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Cities in the unit square with the Euclidean metric.
class TspInstance {
 public:
  // Throws InvalidArgument unless there are at least 3 points, all in [0,1]^2.
  explicit TspInstance(std::vector<Point> points);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<Point>& points() const noexcept { return points_; }
  double distance(std::size_t i, std::size_t j) const;
  double tour_length(const Permutation& order) const;

 private:
  static constexpr std::size_t kCacheThreshold = 128;
  std::vector<Point> points_;
  std::vector<double> cache_;  // filled only for n >= kCacheThreshold
};

using Edge = std::pair<std::size_t, std::size_t>;

// Directed graph without self-loops or parallel edges.
class Digraph {
 public:
  Digraph(std::size_t n, std::vector<Edge> edges);
  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

// Undirected simple graph; each edge stored once.
class Graph {
 public:
  Graph(std::size_t n, std::vector<Edge> edges);
  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

// Closed tour length visiting p[0], p[1], ..., p[n-1], p[0].
Objective tsp_objective(TspInstance inst);
// Number of edges (u, v) whose source is placed at or after its target.
// Removing them leaves the graph acyclic.
Objective dfasp_objective(Digraph g);
// Maximum, over the n - 1 prefix cuts of the order, of the number of edges
// crossing the cut.
Objective cmp_objective(Graph g);

double dfasp_value(const Digraph& g, const Permutation& order);
double cutwidth(const Graph& g, const Permutation& order);

TspInstance gen_euclidean(std::size_t n, std::uint64_t seed);
// Independent coin flips with probability p per ordered (directed) or
// unordered (undirected) pair of distinct vertices.
Digraph gen_erdos_renyi_directed(std::size_t n, double p, std::uint64_t seed);
Graph gen_erdos_renyi_undirected(std::size_t n, double p, std::uint64_t seed);

// Double-tree heuristic: preorder walk of Prim's minimum spanning tree rooted
// at vertex 0, children visited in increasing index. At most twice the
// optimal tour length.
Permutation mst_tour(const TspInstance& inst);

struct BruteForceResult {
  Permutation permutation;
  double value = 0.0;
};

inline constexpr std::size_t kMaxBruteForce = 10;

// Exhaustive argmin over all n! permutations (first in lexicographic order
// among ties). With fix_first, only permutations with p[0] == 0 are tried,
// which is exact for rotation-invariant objectives such as tour length.
// Throws TooLarge for n > 10.
BruteForceResult brute_force_opt(const Objective& f, bool fix_first = false);

}  // namespace birkhoff
