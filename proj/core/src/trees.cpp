#include "birkhoff/trees.hpp"

#include <algorithm>
#include <functional>

#include "birkhoff/error.hpp"

namespace birkhoff {

TreeMask::TreeMask(std::size_t leaves) : leaves_(leaves) {
  if (leaves < 2) throw InvalidArgument("trees need at least 2 leaves");
}

bool TreeMask::forbidden(std::size_t row, std::size_t col) const {
  const std::size_t n = leaves_;
  if (row < n - 1) return row + n - 1 <= col;  // first child of vertex row + n + 1
  return row < col;                           // second child of vertex row + 2
}

SupportMask TreeMask::allowed() const {
  const std::size_t d = dimension();
  SupportMask m(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m.set(i, j, !forbidden(i, j));
  }
  return m;
}

bool TreeMask::admits(const Permutation& p) const {
  if (p.size() != dimension()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (forbidden(i, p[i])) return false;
  }
  return true;
}

double TreeMask::leak(const SquareMatrix& w) const {
  if (w.size() != dimension()) throw InvalidArgument("matrix does not match the tree mask size");
  double worst = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (forbidden(i, j)) worst = std::max(worst, w(i, j));
    }
  }
  return worst;
}

std::vector<std::size_t> RootedBinaryTree::parents() const {
  std::vector<std::size_t> parent(vertex_count() + 1, 0);
  for (std::size_t k = 0; k < children.size(); ++k) {
    for (std::size_t c : children[k]) {
      if (c >= 1 && c <= vertex_count()) parent[c] = leaves + 1 + k;
    }
  }
  return parent;
}

void RootedBinaryTree::validate() const {
  if (leaves < 2) throw InvalidArgument("tree needs at least 2 leaves");
  if (children.size() != leaves - 1) throw InvalidArgument("tree needs n - 1 internal vertices");
  std::vector<std::size_t> in_degree(vertex_count() + 1, 0);
  for (const auto& ch : children) {
    for (std::size_t c : ch) {
      if (c < 1 || c > vertex_count()) throw InvalidArgument("child label out of range");
      ++in_degree[c];
    }
    if (ch[0] == ch[1]) throw InvalidArgument("internal vertex repeats a child");
  }
  for (std::size_t v = 1; v <= vertex_count(); ++v) {
    const std::size_t expected = v == root() ? 0 : 1;
    if (in_degree[v] != expected) {
      throw InvalidArgument("vertex " + std::to_string(v) + " has in-degree " +
                            std::to_string(in_degree[v]));
    }
  }
  // In-degrees are right, so the graph is a tree iff everything is reachable
  // from the root.
  std::vector<bool> seen(vertex_count() + 1, false);
  std::vector<std::size_t> stack{root()};
  std::size_t reached = 0;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (seen[v]) throw InvalidArgument("tree contains a cycle");
    seen[v] = true;
    ++reached;
    if (v > leaves) {
      for (std::size_t c : children[v - leaves - 1]) stack.push_back(c);
    }
  }
  if (reached != vertex_count()) throw InvalidArgument("tree is not connected to the root");
}

std::string RootedBinaryTree::canonical() const {
  std::function<std::string(std::size_t)> rec = [&](std::size_t v) -> std::string {
    if (v <= leaves) return std::to_string(v);
    const auto& ch = children[v - leaves - 1];
    std::string a = rec(ch[0]);
    std::string b = rec(ch[1]);
    if (b < a) std::swap(a, b);
    return "(" + a + "," + b + ")";
  };
  return rec(root());
}

RootedBinaryTree tree_from_permutation(const Permutation& p) {
  const std::size_t d = p.size();
  if (d < 2 || d % 2 != 0) throw NotInB("tree encodings have even dimension 2n - 2 >= 2");
  const std::size_t n = d / 2 + 1;
  const TreeMask mask(n);
  if (!mask.admits(p)) throw NotInB("permutation violates the tree mask");
  RootedBinaryTree t;
  t.leaves = n;
  t.children.resize(n - 1);
  for (std::size_t v = n + 1; v <= 2 * n - 1; ++v) {
    t.children[v - n - 1] = {p[v - n - 1] + 1, p[v - 2] + 1};
  }
  t.validate();
  return t;
}

RootedBinaryTree tree_from_matrix(const SquareMatrix& b) {
  const std::size_t d = b.size();
  std::vector<std::size_t> mapping(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double v = b(i, j);
      if (v == 1.0) {
        if (mapping[i] != d) throw NotInB("row " + std::to_string(i) + " has several ones");
        mapping[i] = j;
      } else if (v != 0.0) {
        throw NotInB("matrix is not binary");
      }
    }
    if (mapping[i] == d) throw NotInB("row " + std::to_string(i) + " has no one");
  }
  try {
    return tree_from_permutation(Permutation(std::move(mapping)));
  } catch (const InvalidArgument&) {
    throw NotInB("matrix is not a permutation matrix");
  }
}

Permutation permutation_from_tree(const RootedBinaryTree& t) {
  t.validate();
  const std::size_t n = t.leaves;
  // Post-order over internal vertices: children get smaller labels.
  std::vector<std::size_t> relabel(t.vertex_count() + 1, 0);
  for (std::size_t v = 1; v <= n; ++v) relabel[v] = v;
  std::size_t next = n + 1;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    if (v <= n) return;
    for (std::size_t c : t.children[v - n - 1]) visit(c);
    relabel[v] = next++;
  };
  visit(t.root());

  std::vector<std::size_t> mapping(2 * n - 2);
  for (std::size_t v = n + 1; v <= 2 * n - 1; ++v) {
    const auto& ch = t.children[v - n - 1];
    const std::size_t a = std::min(relabel[ch[0]], relabel[ch[1]]);
    const std::size_t b = std::max(relabel[ch[0]], relabel[ch[1]]);
    const std::size_t w = relabel[v];
    mapping[w - n - 1] = a - 1;
    mapping[w - 2] = b - 1;
  }
  return Permutation(std::move(mapping));
}

SquareMatrix matrix_from_tree(const RootedBinaryTree& t) { return permutation_from_tree(t).to_matrix(); }

BirkhoffDecomposition tree_decompose(const DoublyStochastic& w, const ScoreMatrix& s) {
  const std::size_t d = w.size();
  if (d < 2 || d % 2 != 0) throw NotInB("tree polytope members have even dimension 2n - 2 >= 2");
  const TreeMask mask(d / 2 + 1);
  if (mask.leak(w.matrix()) > kZeroTolerance) throw NotInB("matrix has mass on forbidden cells");
  BirkhoffDecomposition out = score_decompose(w, s);
  for (std::size_t k = 0; k < out.terms.size(); ++k) {
    if (!mask.admits(out.terms[k].permutation)) {
      throw MaskLeak("decomposition term " + std::to_string(k) + " leaves the tree mask");
    }
  }
  return out;
}

Permutation random_tree_permutation(std::size_t leaves, Rng& rng) {
  const TreeMask mask(leaves);
  return max_score_matching(mask.allowed(), random_identifying_score(mask.dimension(), rng));
}

DoublyStochastic random_tree_polytope_member(std::size_t leaves, std::size_t m, Rng& rng) {
  if (m == 0) throw InvalidArgument("need at least one term");
  std::vector<double> weights(m);
  std::vector<Permutation> perms;
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    weights[k] = 0.05 + uniform01(rng);
    total += weights[k];
    perms.push_back(random_tree_permutation(leaves, rng));
  }
  for (double& x : weights) x /= total;
  return convex_combination(weights, perms);
}

double lca_depth_cost(const RootedBinaryTree& t) {
  const auto parent = t.parents();
  std::vector<std::size_t> depth(t.vertex_count() + 1, 0);
  for (std::size_t v = 1; v <= t.vertex_count(); ++v) {
    std::size_t d = 0;
    for (std::size_t u = v; parent[u] != 0; u = parent[u]) ++d;
    depth[v] = d;
  }
  double total = 0.0;
  for (std::size_t a = 1; a <= t.leaves; ++a) {
    for (std::size_t b = a + 1; b <= t.leaves; ++b) {
      std::size_t x = a, y = b;
      while (x != y) {
        if (depth[x] >= depth[y]) {
          x = parent[x];
        } else {
          y = parent[y];
        }
      }
      total += static_cast<double>(depth[x]);
    }
  }
  return total;
}

double tree_lca_penalty(std::size_t leaves) {
  // Every pair's LCA sits at depth <= leaves - 2.
  const double pairs = static_cast<double>(leaves * (leaves - 1) / 2);
  return pairs * static_cast<double>(leaves - 1) + 1.0;
}

Objective tree_lca_objective(std::size_t leaves) {
  const TreeMask mask(leaves);
  const double penalty = tree_lca_penalty(leaves);
  return Objective{mask.dimension(),
                   [mask, penalty](const Permutation& p) {
                     return mask.admits(p) ? lca_depth_cost(tree_from_permutation(p)) : penalty;
                   },
                   "tree-lca"};
}

}  // namespace birkhoff
