#include "birkhoff/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "birkhoff/error.hpp"

namespace birkhoff {

namespace {

// Line reader that skips blank lines and remembers where it is.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Tokens of the next non-blank line; throws at end of input.
  std::vector<std::string> next(const char* what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return tokens;
    }
    throw ParseError(std::string("unexpected end of input, expected ") + what, line_no_ + 1);
  }

  void expect_end() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw ParseError("unexpected trailing content", line_no_);
      }
    }
  }

  std::size_t line() const noexcept { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

double parse_real(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a finite real, got '" + tok + "'", line);
  }
}

std::size_t parse_index(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected a non-negative integer, got '" + tok + "'", line);
  }
  return v;
}

std::size_t parse_dimension(LineReader& r) {
  const auto tokens = r.next("dimension");
  if (tokens.size() != 1) throw ParseError("first line must hold only the dimension", r.line());
  const std::size_t n = parse_index(tokens[0], r.line());
  if (n == 0) throw ParseError("dimension must be positive", r.line());
  return n;
}

}  // namespace

SquareMatrix read_matrix(std::istream& in) {
  LineReader r(in);
  const std::size_t n = parse_dimension(r);
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto tokens = r.next("matrix row");
    if (tokens.size() != n) {
      throw ParseError("row has " + std::to_string(tokens.size()) + " entries, expected " +
                           std::to_string(n) + " (matrix must be square)",
                       r.line());
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_real(tokens[j], r.line());
  }
  r.expect_end();
  return m;
}

void write_matrix(std::ostream& out, const SquareMatrix& m) {
  out << m.size() << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

TspInstance read_tsp(std::istream& in) {
  LineReader r(in);
  const std::size_t n = parse_dimension(r);
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto tokens = r.next("city coordinates");
    if (tokens.size() != 2) throw ParseError("expected 'x y'", r.line());
    pts[i] = Point{parse_real(tokens[0], r.line()), parse_real(tokens[1], r.line())};
  }
  r.expect_end();
  try {
    return TspInstance(std::move(pts));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0);
  }
}

void write_tsp(std::ostream& out, const TspInstance& inst) {
  out << inst.size() << '\n' << std::setprecision(17);
  for (const Point& p : inst.points()) out << p.x << ' ' << p.y << '\n';
}

GraphFile read_graph(std::istream& in) {
  LineReader r(in);
  const auto header = r.next("graph header");
  if (header.size() < 2 || header.size() > 3) {
    throw ParseError("header must be 'n m [directed|undirected]'", r.line());
  }
  GraphFile g;
  g.n = parse_index(header[0], r.line());
  if (g.n == 0) throw ParseError("graph needs at least one vertex", r.line());
  const std::size_t m = parse_index(header[1], r.line());
  if (header.size() == 3) {
    if (header[2] == "directed") {
      g.directed = true;
    } else if (header[2] == "undirected") {
      g.directed = false;
    } else {
      throw ParseError("graph kind must be 'directed' or 'undirected'", r.line());
    }
  }
  g.edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto tokens = r.next("edge");
    if (tokens.size() != 2) throw ParseError("expected 'u v'", r.line());
    const std::size_t u = parse_index(tokens[0], r.line());
    const std::size_t v = parse_index(tokens[1], r.line());
    if (u >= g.n || v >= g.n) throw ParseError("edge endpoint out of range", r.line());
    g.edges.emplace_back(u, v);
  }
  r.expect_end();
  try {
    if (g.directed) {
      (void)g.digraph();
    } else {
      (void)g.graph();
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0);
  }
  return g;
}

void write_graph(std::ostream& out, std::size_t n, const std::vector<Edge>& edges, bool directed) {
  out << n << ' ' << edges.size() << ' ' << (directed ? "directed" : "undirected") << '\n';
  for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

Permutation read_ranks(std::istream& in, std::size_t n) {
  LineReader r(in);
  const auto tokens = r.next("ranks");
  if (tokens.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " ranks, got " +
                         std::to_string(tokens.size()),
                     r.line());
  }
  std::vector<std::size_t> ranks(n);
  for (std::size_t v = 0; v < n; ++v) ranks[v] = parse_index(tokens[v], r.line());
  r.expect_end();
  try {
    return Permutation(std::move(ranks)).inverse();
  } catch (const InvalidArgument&) {
    throw ParseError("ranks are not a permutation of 0..n-1", 1);
  }
}

void write_ranks(std::ostream& out, const Permutation& order) {
  const Permutation ranks = order.inverse();
  for (std::size_t v = 0; v < ranks.size(); ++v) out << (v ? " " : "") << ranks[v];
  out << '\n';
}

}  // namespace birkhoff
