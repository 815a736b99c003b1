#include <gtest/gtest.h>

#include "birkhoff/error.hpp"
#include "birkhoff/frank_wolfe.hpp"
#include "birkhoff/problems.hpp"
#include "birkhoff/random.hpp"
#include "oracles.hpp"

namespace birkhoff {
namespace {

// Number of positions where p disagrees with `target`; unique minimum at target.
Objective hamming_to(const Permutation& target) {
  return Objective{target.size(),
                   [target](const Permutation& p) {
                     double d = 0;
                     for (std::size_t i = 0; i < p.size(); ++i) d += p[i] != target[i];
                     return d;
                   },
                   "hamming"};
}

void expect_same_trace(const SolveTrace& x, const SolveTrace& y) {
  ASSERT_EQ(x.records.size(), y.records.size());
  for (std::size_t k = 0; k < x.records.size(); ++k) {
    EXPECT_EQ(x.records[k].extension_value, y.records[k].extension_value);
    EXPECT_EQ(x.records[k].rounded, y.records[k].rounded);
    EXPECT_EQ(x.records[k].best, y.records[k].best);
    EXPECT_EQ(x.records[k].score_updated, y.records[k].score_updated);
  }
  EXPECT_EQ(x.best_permutation, y.best_permutation);
  EXPECT_EQ(x.best_value, y.best_value);
}

void expect_monotone_best(const SolveTrace& trace) {
  for (std::size_t k = 1; k < trace.records.size(); ++k) {
    EXPECT_LE(trace.records[k].best, trace.records[k - 1].best);
  }
}

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.eta = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.eta = 1.5;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.eta = 1.0;
  cfg.steps = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(FwDirection, ZeroGradientIsIdentity) {
  EXPECT_EQ(fw_direction(DoublyStochastic::barycenter(4), SquareMatrix(4)), Permutation::identity(4));
}

TEST(FwDirection, NegativeDiagonalGivesIdentity) {
  SquareMatrix g = SquareMatrix::identity(5);
  g *= -3.0;
  EXPECT_EQ(fw_direction(DoublyStochastic::barycenter(5), g), Permutation::identity(5));
}

TEST(FwDirection, AvoidsHeavyDiagonal) {
  Rng rng(1);
  SquareMatrix g(3);
  for (double& v : g.values()) v = 0.1 * uniform01(rng);
  for (std::size_t i = 0; i < 3; ++i) g(i, i) += 5.0;
  const Permutation p = fw_direction(DoublyStochastic::barycenter(3), g);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NE(p[i], i);
  SquareMatrix neg = g;
  neg *= -1.0;
  EXPECT_EQ(p, *oracle::brute_max(neg, [](std::size_t, std::size_t) { return true; }));
}

TEST(FwStep, Examples) {
  const DoublyStochastic u = DoublyStochastic::barycenter(2);
  EXPECT_EQ(fw_step(u, Permutation::identity(2), 0.0).matrix(), u.matrix());
  EXPECT_EQ(fw_step(u, Permutation({1, 0}), 1.0).matrix(), Permutation({1, 0}).to_matrix());
  EXPECT_EQ(fw_step(u, Permutation::identity(2), 0.5).matrix(),
            SquareMatrix::from_rows({{0.75, 0.25}, {0.25, 0.75}}));
  EXPECT_THROW(fw_step(u, Permutation::identity(2), 1.5), InvalidArgument);
}

TEST(PermutationPool, DeduplicatesAndKeepsFirstMinimum) {
  PermutationPool pool;
  EXPECT_THROW(pool.best(), EmptyPool);
  EXPECT_TRUE(pool.insert(Permutation({0, 1, 2}), 5.0));
  EXPECT_TRUE(pool.insert(Permutation({1, 0, 2}), 3.0));
  EXPECT_FALSE(pool.insert(Permutation({1, 0, 2}), 3.0));
  EXPECT_TRUE(pool.insert(Permutation({2, 1, 0}), 3.0));
  EXPECT_EQ(pool.size(), 3u);
  EXPECT_EQ(pool.best(), Permutation({1, 0, 2}));
  EXPECT_EQ(pool.best_value(), 3.0);
}

TEST(UpdateScoreFromPool, Singleton) {
  Rng rng(2);
  const Permutation p({2, 0, 1});
  const std::vector<Permutation> pool{p};
  const ScoreMatrix s = update_score_from_pool(pool, oracle::hashed_objective(3, 0), rng);
  EXPECT_LT(max_abs_diff(s.matrix(), p.to_matrix()), 1.0 / 6.0);
}

TEST(UpdateScoreFromPool, CentresOnBest) {
  Rng rng(3);
  const Permutation p1({0, 1, 2}), p2({1, 2, 0});
  const Objective f{3, [&](const Permutation& p) { return p == p1 ? 5.0 : 3.0; }, "two"};
  const std::vector<Permutation> pool{p1, p2};
  const ScoreMatrix s = update_score_from_pool(pool, f, rng);
  EXPECT_LT(max_abs_diff(s.matrix(), p2.to_matrix()), 1.0 / 6.0);
  EXPECT_THROW(update_score_from_pool({}, f, rng), EmptyPool);
}

TEST(UpdateScoreFromPool, NewScoreRoundsNoWorse) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 8;
    const DoublyStochastic a = oracle::interior_point(n, rng);
    const Objective f = oracle::hashed_objective(n, trial);
    const auto ev = evaluate(a, random_identifying_score(n, rng), f);
    std::vector<Permutation> pool;
    double pool_best = std::numeric_limits<double>::infinity();
    for (const auto& t : ev.decomposition.terms) {
      pool.push_back(t.permutation);
      pool_best = std::min(pool_best, f(t.permutation));
    }
    const ScoreMatrix next = update_score_from_pool(pool, f, rng);
    const double after = round(a, next, f).value;
    EXPECT_LE(after, pool_best);
    EXPECT_LE(pool_best, round(ev).value);
  }
}

TEST(SolveStatic, RecoversMinimizerNearScore) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 4 + trial % 5;
    const Permutation target = random_permutation(n, rng);
    SolverConfig cfg;
    cfg.steps = 20;
    cfg.seed = trial;
    cfg.random_start = true;
    const auto res = solve_static(hamming_to(target), perturbed_permutation_score(target, rng),
                                  initial_point(n, cfg), cfg);
    EXPECT_EQ(res.permutation, target);
    EXPECT_EQ(res.value, 0.0);
  }
}

TEST(SolveStatic, SingleStepRoundsStart) {
  Rng rng(6);
  const std::size_t n = 5;
  const DoublyStochastic a0 = oracle::interior_point(n, rng);
  const ScoreMatrix s = random_identifying_score(n, rng);
  const Objective f = oracle::hashed_objective(n, 6);
  SolverConfig cfg;
  cfg.steps = 1;
  const auto res = solve_static(f, s, a0, cfg);
  const RoundResult expected = round(a0, s, f);
  EXPECT_EQ(res.last_round.permutation, expected.permutation);
  EXPECT_EQ(res.value, expected.value);
  EXPECT_EQ(res.trace.iterations, 1u);
}

TEST(SolveStatic, TspNeverWorseThanStart) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const TspInstance inst = gen_euclidean(4, seed);
    const Objective f = tsp_objective(inst);
    const DoublyStochastic a0 = oracle::interior_point(4, rng);
    const ScoreMatrix s = random_identifying_score(4, rng);
    SolverConfig cfg;
    cfg.steps = 500;
    const auto res = solve_static(f, s, a0, cfg);
    EXPECT_LE(res.value, evaluate(a0, s, f).value + 1e-9);
    EXPECT_LE(res.value, res.last_round.value);
    expect_monotone_best(res.trace);
  }
}

TEST(SolveStatic, RejectsUpdatePeriod) {
  SolverConfig cfg;
  cfg.score_update_period = 3;
  EXPECT_THROW(solve_static(oracle::hashed_objective(3, 0), power_score(3), DoublyStochastic::barycenter(3), cfg),
               InvalidArgument);
  cfg.score_update_period = 0;
  EXPECT_THROW(solve_dynamic(oracle::hashed_objective(3, 0), power_score(3), DoublyStochastic::barycenter(3), cfg),
               InvalidArgument);
}

TEST(SolveStatic, Deterministic) {
  const Objective f = tsp_objective(gen_euclidean(8, 3));
  Rng rng(7);
  const ScoreMatrix s = random_identifying_score(8, rng);
  SolverConfig cfg;
  cfg.steps = 100;
  cfg.seed = 11;
  cfg.random_start = true;
  const auto x = solve_static(f, s, initial_point(8, cfg), cfg);
  const auto y = solve_static(f, s, initial_point(8, cfg), cfg);
  expect_same_trace(x.trace, y.trace);
}

TEST(SolveDynamic, LongPeriodMatchesStatic) {
  const Objective f = tsp_objective(gen_euclidean(7, 4));
  Rng rng(8);
  const ScoreMatrix s = random_identifying_score(7, rng);
  SolverConfig cfg;
  cfg.steps = 60;
  cfg.seed = 2;
  const auto stat = solve_static(f, s, DoublyStochastic::barycenter(7), cfg);
  cfg.score_update_period = 61;
  const auto dyn = solve_dynamic(f, s, DoublyStochastic::barycenter(7), cfg);
  EXPECT_EQ(dyn.trace.score_updates, 0u);
  expect_same_trace(stat.trace, dyn.trace);
}

TEST(SolveDynamic, MstInitNeverWorse) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const TspInstance inst = gen_euclidean(20, seed);
    const Permutation mst = mst_tour(inst);
    Rng rng(seed);
    SolverConfig cfg;
    cfg.steps = 150;
    cfg.score_update_period = 10;
    cfg.seed = seed;
    const auto res =
        solve_dynamic(tsp_objective(inst), perturbed_permutation_score(mst, rng), DoublyStochastic::barycenter(20), cfg);
    EXPECT_LE(res.value, inst.tour_length(mst));
    EXPECT_EQ(res.trace.score_updates, 15u);
    expect_monotone_best(res.trace);
  }
}

TEST(SolveDynamic, DfaspBetweenOptimumAndStart) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Digraph g = gen_erdos_renyi_directed(6, 0.5, seed);
    const Objective f = dfasp_objective(g);
    const double opt = brute_force_opt(f).value;
    Rng rng(seed);
    const ScoreMatrix s = random_identifying_score(6, rng);
    SolverConfig cfg;
    cfg.steps = 400;
    cfg.score_update_period = 10;
    cfg.seed = seed;
    const auto res = solve_dynamic(f, s, DoublyStochastic::barycenter(6), cfg);
    EXPECT_GE(res.value, opt);
    EXPECT_LE(res.value, res.trace.records.front().rounded);
    expect_monotone_best(res.trace);
  }
}

TEST(SolveDynamic, StallTrigger) {
  const Objective f = tsp_objective(gen_euclidean(8, 9));
  Rng rng(9);
  SolverConfig cfg;
  cfg.steps = 200;
  cfg.score_update_period = 5;
  cfg.trigger = UpdateTrigger::Stall;
  cfg.step_rule = StepRule::Classic;
  const auto res = solve_dynamic(f, random_identifying_score(8, rng), DoublyStochastic::barycenter(8), cfg);
  EXPECT_GT(res.trace.score_updates, 0u);
  expect_monotone_best(res.trace);
}

TEST(SolveDynamic, PatienceStopsEarly) {
  const Objective f = tsp_objective(gen_euclidean(6, 1));
  Rng rng(10);
  SolverConfig cfg;
  cfg.steps = 5000;
  cfg.patience = 20;
  cfg.score_update_period = 10;
  const auto res = solve_dynamic(f, random_identifying_score(6, rng), DoublyStochastic::barycenter(6), cfg);
  EXPECT_LT(res.trace.iterations, 5000u);
}

TEST(SolveDynamic, TruncatedRun) {
  const Objective f = tsp_objective(gen_euclidean(12, 2));
  Rng rng(11);
  SolverConfig cfg;
  cfg.steps = 100;
  cfg.max_terms = 5;
  cfg.score_update_period = 10;
  const auto res = solve_dynamic(f, random_identifying_score(12, rng), DoublyStochastic::barycenter(12), cfg);
  expect_monotone_best(res.trace);
  EXPECT_EQ(res.value, f(res.permutation));
}

TEST(SolveDynamic, Deterministic) {
  const Objective f = cmp_objective(gen_erdos_renyi_undirected(9, 0.4, 5));
  Rng r1(12), r2(12);
  SolverConfig cfg;
  cfg.steps = 120;
  cfg.score_update_period = 7;
  cfg.seed = 99;
  const auto x = solve_dynamic(f, random_identifying_score(9, r1), DoublyStochastic::barycenter(9), cfg);
  const auto y = solve_dynamic(f, random_identifying_score(9, r2), DoublyStochastic::barycenter(9), cfg);
  expect_same_trace(x.trace, y.trace);
}

}  // namespace
}  // namespace birkhoff
