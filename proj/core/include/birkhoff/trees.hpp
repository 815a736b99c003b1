#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "birkhoff/decomposition.hpp"
#include "birkhoff/extension.hpp"
#include "birkhoff/matching.hpp"
#include "birkhoff/matrix.hpp"
#include "birkhoff/random.hpp"

namespace birkhoff {

// Rooted binary trees with n labeled leaves encoded as (2n-2) x (2n-2)
// permutation matrices.
//
// Vertices are labeled 1..2n-1: leaves 1..n, internal vertices n+1..2n-1,
// root 2n-1. Column c (0-based) stands for vertex c+1, so the columns cover
// every non-root vertex. Internal vertex v takes its children from rows
// v-n-1 and v-2 (0-based). The mask forbids cells that would give a vertex
// a child with a label not below its own, which makes every permutation
// satisfying it encode an acyclic tree.
class TreeMask {
 public:
  explicit TreeMask(std::size_t leaves);

  std::size_t leaves() const noexcept { return leaves_; }
  std::size_t dimension() const noexcept { return 2 * leaves_ - 2; }
  bool forbidden(std::size_t row, std::size_t col) const;
  SupportMask allowed() const;
  bool admits(const Permutation& p) const;
  // Largest entry on a forbidden cell.
  double leak(const SquareMatrix& w) const;

 private:
  std::size_t leaves_;
};

struct RootedBinaryTree {
  std::size_t leaves = 0;
  // children[v - leaves - 1] holds the two children of internal vertex v.
  std::vector<std::array<std::size_t, 2>> children;

  std::size_t vertex_count() const noexcept { return 2 * leaves - 1; }
  std::size_t root() const noexcept { return 2 * leaves - 1; }
  // parent[v] for v in 1..2n-1; 0 for the root. Index 0 unused.
  std::vector<std::size_t> parents() const;
  // Throws InvalidArgument unless every internal vertex has two children,
  // every non-root vertex exactly one parent, and all vertices hang off the
  // root.
  void validate() const;
  // Leaf-labeled isomorphism class, e.g. "((1,2),3)".
  std::string canonical() const;
};

// Tree encoded by a permutation in the mask. Throws NotInB otherwise.
RootedBinaryTree tree_from_permutation(const Permutation& p);
// Same, from a dense matrix that must be binary and a permutation matrix.
RootedBinaryTree tree_from_matrix(const SquareMatrix& b);

// Relabels internal vertices in post-order and writes the smaller child into
// the first row of each pair, the larger into the second.
Permutation permutation_from_tree(const RootedBinaryTree& t);
SquareMatrix matrix_from_tree(const RootedBinaryTree& t);

// Score-induced decomposition of a mask-respecting doubly stochastic matrix.
// Throws NotInB if W puts mass on forbidden cells and MaskLeak if a term
// escapes the mask.
BirkhoffDecomposition tree_decompose(const DoublyStochastic& w, const ScoreMatrix& s);

// A random permutation respecting the mask for n leaves.
Permutation random_tree_permutation(std::size_t leaves, Rng& rng);
// Convex combination of m random mask-respecting permutations.
DoublyStochastic random_tree_polytope_member(std::size_t leaves, std::size_t m, Rng& rng);

// Sum over unordered leaf pairs of the depth of their lowest common
// ancestor (root depth 0).
double lca_depth_cost(const RootedBinaryTree& t);
// Strictly above lca_depth_cost of any tree with this many leaves.
double tree_lca_penalty(std::size_t leaves);
// lca_depth_cost composed with the decoding map, as an objective on
// (2n-2)-permutations. Permutations outside the mask score
// tree_lca_penalty, so rounding never prefers them over a tree.
Objective tree_lca_objective(std::size_t leaves);

}  // namespace birkhoff
