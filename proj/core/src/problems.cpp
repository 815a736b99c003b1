#include "birkhoff/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <set>

#include "birkhoff/error.hpp"
#include "birkhoff/random.hpp"

namespace birkhoff {

TspInstance::TspInstance(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 3) throw InvalidArgument("a TSP instance needs at least 3 cities");
  for (const Point& p : points_) {
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
      throw InvalidArgument("TSP coordinates must lie in [0, 1]");
    }
  }
  const std::size_t n = points_.size();
  if (n >= kCacheThreshold) {
    cache_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        cache_[i * n + j] = std::hypot(points_[i].x - points_[j].x, points_[i].y - points_[j].y);
      }
    }
  }
}

double TspInstance::distance(std::size_t i, std::size_t j) const {
  if (!cache_.empty()) return cache_[i * points_.size() + j];
  return std::hypot(points_[i].x - points_[j].x, points_[i].y - points_[j].y);
}

double TspInstance::tour_length(const Permutation& order) const {
  const std::size_t n = points_.size();
  if (order.size() != n) throw InvalidArgument("tour length: dimension mismatch");
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) total += distance(order[k], order[(k + 1) % n]);
  return total;
}

namespace {

void check_edges(std::size_t n, const std::vector<Edge>& edges, bool directed) {
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InvalidArgument("edge references a vertex out of range");
    if (u == v) throw InvalidArgument("self-loops are not allowed");
    const Edge key = directed ? Edge{u, v} : Edge{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) throw InvalidArgument("parallel edges are not allowed");
  }
}

}  // namespace

Digraph::Digraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ == 0) throw InvalidArgument("graph needs at least one vertex");
  check_edges(n_, edges_, true);
}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ == 0) throw InvalidArgument("graph needs at least one vertex");
  check_edges(n_, edges_, false);
}

double dfasp_value(const Digraph& g, const Permutation& order) {
  if (order.size() != g.size()) throw InvalidArgument("dfasp: dimension mismatch");
  const Permutation pos = order.inverse();
  std::size_t backward = 0;
  for (auto [u, v] : g.edges()) {
    if (pos[u] >= pos[v]) ++backward;
  }
  return static_cast<double>(backward);
}

double cutwidth(const Graph& g, const Permutation& order) {
  const std::size_t n = g.size();
  if (order.size() != n) throw InvalidArgument("cutwidth: dimension mismatch");
  if (n < 2) return 0.0;
  const Permutation pos = order.inverse();
  // delta[k] counts edges opening at position k minus edges closing there;
  // the prefix sum up to k is the width of the cut between k and k + 1.
  std::vector<long> delta(n + 1, 0);
  for (auto [u, v] : g.edges()) {
    const std::size_t a = std::min(pos[u], pos[v]);
    const std::size_t b = std::max(pos[u], pos[v]);
    ++delta[a];
    --delta[b];
  }
  long width = 0;
  long best = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    width += delta[k];
    best = std::max(best, width);
  }
  return static_cast<double>(best);
}

Objective tsp_objective(TspInstance inst) {
  auto shared = std::make_shared<const TspInstance>(std::move(inst));
  const std::size_t n = shared->size();
  return Objective{n, [shared](const Permutation& p) { return shared->tour_length(p); }, "tsp"};
}

Objective dfasp_objective(Digraph g) {
  auto shared = std::make_shared<const Digraph>(std::move(g));
  const std::size_t n = shared->size();
  return Objective{n, [shared](const Permutation& p) { return dfasp_value(*shared, p); }, "dfasp"};
}

Objective cmp_objective(Graph g) {
  auto shared = std::make_shared<const Graph>(std::move(g));
  const std::size_t n = shared->size();
  return Objective{n, [shared](const Permutation& p) { return cutwidth(*shared, p); }, "cmp"};
}

TspInstance gen_euclidean(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts(n);
  for (Point& p : pts) {
    p.x = uniform01(rng);
    p.y = uniform01(rng);
  }
  return TspInstance(std::move(pts));
}

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must lie in [0, 1]");
}

}  // namespace

Digraph gen_erdos_renyi_directed(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p);
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && uniform01(rng) < p) edges.emplace_back(u, v);
    }
  }
  return Digraph(n, std::move(edges));
}

Graph gen_erdos_renyi_undirected(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p);
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (uniform01(rng) < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

Permutation mst_tour(const TspInstance& inst) {
  const std::size_t n = inst.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> key(n, kInf);
  std::vector<std::size_t> parent(n, n);
  std::vector<bool> in_tree(n, false);
  std::vector<std::vector<std::size_t>> children(n);
  key[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (u == n || key[v] < key[u])) u = v;
    }
    in_tree[u] = true;
    if (parent[u] != n) children[parent[u]].push_back(u);
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v]) {
        const double d = inst.distance(u, v);
        if (d < key[v]) {
          key[v] = d;
          parent[v] = u;
        }
      }
    }
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    order.push_back(u);
    auto& ch = children[u];
    std::sort(ch.begin(), ch.end());
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return Permutation(std::move(order));
}

BruteForceResult brute_force_opt(const Objective& f, bool fix_first) {
  const std::size_t n = f.n;
  if (n == 0) throw InvalidArgument("objective dimension must be positive");
  if (n > kMaxBruteForce) {
    throw TooLarge("brute force is limited to n <= " + std::to_string(kMaxBruteForce));
  }
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  BruteForceResult best{Permutation::identity(n), std::numeric_limits<double>::infinity()};
  const auto first = fix_first ? m.begin() + 1 : m.begin();
  do {
    Permutation p(m);
    const double v = f(p);
    if (v < best.value) best = BruteForceResult{std::move(p), v};
  } while (std::next_permutation(first, m.end()));
  return best;
}

}  // namespace birkhoff
