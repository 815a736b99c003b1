#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "birkhoff/error.hpp"
#include "birkhoff/instance_io.hpp"
#include "birkhoff/problems.hpp"
#include "oracles.hpp"

namespace birkhoff {
namespace {

TspInstance corners() { return TspInstance({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

TEST(Tsp, CornersPerimeter) {
  const Objective f = tsp_objective(corners());
  EXPECT_DOUBLE_EQ(f(Permutation::identity(4)), 4.0);
  EXPECT_DOUBLE_EQ(f(Permutation({1, 0, 2, 3})), 2.0 + 2.0 * std::sqrt(2.0));
}

TEST(Tsp, RotationInvariant) {
  const TspInstance inst = gen_euclidean(7, 3);
  Rng rng(1);
  const Permutation p = random_permutation(7, rng);
  std::vector<std::size_t> rot(p.mapping().begin() + 1, p.mapping().end());
  rot.push_back(p[0]);
  EXPECT_NEAR(inst.tour_length(p), inst.tour_length(Permutation(rot)), 1e-12);
}

TEST(Tsp, ValidatesInstance) {
  EXPECT_THROW(TspInstance({{0, 0}, {1, 1}}), InvalidArgument);
  EXPECT_THROW(TspInstance({{0, 0}, {1, 1}, {1.5, 0}}), InvalidArgument);
}

TEST(Tsp, CachedDistancesAgree) {
  const TspInstance big = gen_euclidean(130, 2);
  const Point a = big.points()[3], b = big.points()[77];
  EXPECT_DOUBLE_EQ(big.distance(3, 77), std::hypot(a.x - b.x, a.y - b.y));
}

TEST(Dfasp, TopologicalOrderIsZero) {
  const Digraph dag(4, {{0, 1}, {1, 2}, {0, 3}, {3, 2}});
  const auto topo = oracle::topological_order(dag);
  ASSERT_TRUE(topo.has_value());
  EXPECT_EQ(dfasp_value(dag, *topo), 0.0);
}

TEST(Dfasp, TwoCycle) {
  const Digraph g(2, {{0, 1}, {1, 0}});
  EXPECT_EQ(dfasp_value(g, Permutation({0, 1})), 1.0);
  EXPECT_EQ(dfasp_value(g, Permutation({1, 0})), 1.0);
}

TEST(Dfasp, ThreeCycleOptimum) {
  const Objective f = dfasp_objective(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
  EXPECT_EQ(brute_force_opt(f).value, 1.0);
}

TEST(Dfasp, ZeroExactlyOnTopologicalOrders) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Digraph g = gen_erdos_renyi_directed(5, 0.3, seed);
    // Keep forward edges only so some instances are acyclic.
    std::vector<Edge> fwd;
    for (auto [u, v] : g.edges()) {
      if (seed % 2 == 0 || u < v) fwd.emplace_back(u, v);
    }
    const Digraph h(5, fwd);
    for (const Permutation& p : oracle::all_permutations(5)) {
      EXPECT_EQ(dfasp_value(h, p) == 0.0, oracle::is_topological(h, p));
    }
  }
}

TEST(Cmp, PathAlongPath) {
  EXPECT_EQ(cutwidth(path_graph(6), Permutation::identity(6)), 1.0);
  EXPECT_EQ(brute_force_opt(cmp_objective(path_graph(5))).value, 1.0);
}

TEST(Cmp, FourCycle) {
  const Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  EXPECT_EQ(cutwidth(c4, Permutation::identity(4)), 2.0);
}

TEST(Cmp, StarBestIsTwo) {
  const Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto best = brute_force_opt(cmp_objective(star));
  EXPECT_EQ(best.value, 2.0);
  EXPECT_EQ(best.permutation.inverse()[0], 2u);
}

TEST(Cmp, BoundsOnConnectedGraphs) {
  Rng rng(4);
  const Graph g(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 3}, {1, 5}});
  for (int k = 0; k < 50; ++k) {
    const double w = cutwidth(g, random_permutation(6, rng));
    EXPECT_GE(w, 1.0);
    EXPECT_LE(w, 7.0);
  }
}

TEST(Generators, EdgeProbabilityExtremes) {
  EXPECT_TRUE(gen_erdos_renyi_directed(6, 0.0, 1).edges().empty());
  EXPECT_TRUE(gen_erdos_renyi_undirected(6, 0.0, 1).edges().empty());
  EXPECT_EQ(gen_erdos_renyi_directed(3, 1.0, 1).edges().size(), 6u);
  EXPECT_EQ(gen_erdos_renyi_undirected(4, 1.0, 1).edges().size(), 6u);
  EXPECT_THROW(gen_erdos_renyi_directed(3, 1.5, 1), InvalidArgument);
}

TEST(Generators, SeedsAreReproducibleAndDistinct) {
  EXPECT_EQ(gen_erdos_renyi_directed(20, 0.5, 1).edges(), gen_erdos_renyi_directed(20, 0.5, 1).edges());
  EXPECT_NE(gen_erdos_renyi_directed(20, 0.5, 1).edges(), gen_erdos_renyi_directed(20, 0.5, 2).edges());
  EXPECT_EQ(gen_euclidean(10, 4).points()[5].x, gen_euclidean(10, 4).points()[5].x);
  for (const auto& p : gen_euclidean(50, 7).points()) {
    EXPECT_GE(p.x, 0.0);
    EXPECT_LE(p.y, 1.0);
  }
}

TEST(MstTour, CornersGivePerimeter) {
  const TspInstance inst = corners();
  EXPECT_DOUBLE_EQ(inst.tour_length(mst_tour(inst)), 4.0);
}

TEST(MstTour, CollinearPoints) {
  const TspInstance inst({{0.5, 0.5}, {0.1, 0.5}, {0.9, 0.5}, {0.3, 0.5}, {0.7, 0.5}});
  EXPECT_NEAR(inst.tour_length(mst_tour(inst)), 2.0 * 0.8, 1e-12);
}

TEST(MstTour, TwoApproximation) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const std::size_t n = 3 + seed % 6;
    const TspInstance inst = gen_euclidean(n, seed);
    const double opt = brute_force_opt(tsp_objective(inst), true).value;
    const double mst = inst.tour_length(mst_tour(inst));
    EXPECT_GE(mst, opt - 1e-12);
    EXPECT_LE(mst, 2.0 * opt + 1e-12);
  }
}

TEST(BruteForce, Examples) {
  EXPECT_DOUBLE_EQ(brute_force_opt(tsp_objective(corners())).value, 4.0);
  EXPECT_DOUBLE_EQ(brute_force_opt(tsp_objective(corners()), true).value, 4.0);
  EXPECT_THROW(brute_force_opt(oracle::hashed_objective(11, 0)), TooLarge);
}

TEST(BruteForce, FixFirstExactForTours) {
  const Objective f = tsp_objective(gen_euclidean(7, 8));
  EXPECT_NEAR(brute_force_opt(f).value, brute_force_opt(f, true).value, 1e-12);
}

TEST(InstanceIo, MatrixRoundTrip) {
  const SquareMatrix m = SquareMatrix::from_rows({{0.3, 0.7}, {0.7, 0.3}});
  std::stringstream ss;
  write_matrix(ss, m);
  EXPECT_EQ(read_matrix(ss), m);
}

TEST(InstanceIo, NonSquareMatrixReportsLine) {
  std::istringstream in("2\n0.5 0.5\n0.5 0.5 0.1\n");
  try {
    read_matrix(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream bad("2\n0.5 x\n0.5 0.5\n");
  EXPECT_THROW(read_matrix(bad), ParseError);
}

TEST(InstanceIo, TspRoundTrip) {
  const TspInstance inst = gen_euclidean(6, 1);
  std::stringstream ss;
  write_tsp(ss, inst);
  const TspInstance back = read_tsp(ss);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(back.points()[i].x, inst.points()[i].x);
}

TEST(InstanceIo, GraphRoundTrip) {
  const Digraph g = gen_erdos_renyi_directed(7, 0.4, 3);
  std::stringstream ss;
  write_graph(ss, g.size(), g.edges(), true);
  const GraphFile back = read_graph(ss);
  EXPECT_TRUE(back.directed);
  EXPECT_EQ(back.digraph().edges(), g.edges());
  std::istringstream bad("3 1 sideways\n0 1\n");
  EXPECT_THROW(read_graph(bad), ParseError);
}

TEST(InstanceIo, RanksRoundTrip) {
  const Permutation order({2, 0, 3, 1});
  std::stringstream ss;
  write_ranks(ss, order);
  EXPECT_EQ(read_ranks(ss, 4), order);
  std::istringstream bad("0 1 1 2\n");
  EXPECT_THROW(read_ranks(bad, 4), ParseError);
}

}  // namespace
}  // namespace birkhoff
