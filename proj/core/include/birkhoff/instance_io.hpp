#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "birkhoff/matrix.hpp"
#include "birkhoff/error.hpp"
#include "birkhoff/problems.hpp"

namespace birkhoff {

// Text formats. Blank lines are ignored; tokens are whitespace-separated.
// All parse failures throw ParseError carrying the 1-based line number.
//
//   matrix:      "n", then n rows of n reals
//   TSP:         "n", then n lines "x y"
//   graph:       "n m [directed|undirected]", then m lines "u v" (0-based)
//   permutation: one line of n 0-based ranks; entry v is the position of
//                vertex v in the order

SquareMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const SquareMatrix& m);

TspInstance read_tsp(std::istream& in);
void write_tsp(std::ostream& out, const TspInstance& inst);

struct GraphFile {
  std::size_t n = 0;
  std::vector<Edge> edges;
  bool directed = true;

  Digraph digraph() const { return Digraph(n, edges); }
  Graph graph() const { return Graph(n, edges); }
};

GraphFile read_graph(std::istream& in);
void write_graph(std::ostream& out, std::size_t n, const std::vector<Edge>& edges, bool directed);

// Returns the order (rank -> vertex) described by a line of ranks.
Permutation read_ranks(std::istream& in, std::size_t n);
void write_ranks(std::ostream& out, const Permutation& order);

// Open `path` and apply `reader`; throws ParseError if the file is missing.
template <typename Reader>
auto read_file(const std::filesystem::path& path, Reader reader);

}  // namespace birkhoff

#include <fstream>

namespace birkhoff {

template <typename Reader>
auto read_file(const std::filesystem::path& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return reader(in);
}

}  // namespace birkhoff
