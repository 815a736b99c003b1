#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "birkhoff/decomposition.hpp"
#include "birkhoff/error.hpp"
#include "birkhoff/extension.hpp"
#include "birkhoff/frank_wolfe.hpp"
#include "birkhoff/instance_io.hpp"
#include "birkhoff/problems.hpp"
#include "birkhoff/random.hpp"
#include "birkhoff/trees.hpp"

namespace birkhoff::cli {
namespace {

using nlohmann::json;

// Streams for derive_seed so the pieces of one run never share randomness.
constexpr std::uint64_t kScoreStream = 1;
constexpr std::uint64_t kTreeStartStream = 2;

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct SolverFlags {
  std::string algo = "fw-dynamic";
  double eta = 0.01;
  std::size_t steps = 1000;
  std::size_t patience = 0;
  std::optional<std::size_t> update_period;
  std::size_t max_terms = 0;
  std::uint64_t seed = 0;
  std::string step_rule = "constant";
  std::string trigger = "period";
  std::optional<double> noise_scale;
  bool random_start = false;
};

void add_solver_flags(CLI::App* app, SolverFlags& s) {
  app->add_option("--algo", s.algo, "fw-static or fw-dynamic")
      ->check(CLI::IsMember({"fw-static", "fw-dynamic"}));
  app->add_option("--eta", s.eta, "constant step size in (0, 1]");
  app->add_option("--steps", s.steps, "maximum iterations T");
  app->add_option("--patience", s.patience, "stop after this many iterations without improvement (0 = off)");
  app->add_option("--update-period", s.update_period, "iterations between score updates (fw-dynamic, default 10)");
  app->add_option("--max-terms", s.max_terms, "decomposition truncation K (0 = full)");
  app->add_option("--seed", s.seed, "master seed");
  app->add_option("--step-rule", s.step_rule, "constant or classic (2/(t+2))")
      ->check(CLI::IsMember({"constant", "classic"}));
  app->add_option("--trigger", s.trigger, "score update trigger: period or stall")
      ->check(CLI::IsMember({"period", "stall"}));
  app->add_option("--noise-scale", s.noise_scale, "score perturbation scale, at most 1/(2n)");
  app->add_flag("--random-start", s.random_start, "start from a random interior point");
}

SolverConfig make_config(const SolverFlags& s) {
  SolverConfig cfg;
  cfg.eta = s.eta;
  cfg.steps = s.steps;
  cfg.patience = s.patience;
  cfg.max_terms = s.max_terms;
  cfg.seed = s.seed;
  cfg.noise_scale = s.noise_scale;
  cfg.step_rule = s.step_rule == "classic" ? StepRule::Classic : StepRule::Constant;
  cfg.trigger = s.trigger == "stall" ? UpdateTrigger::Stall : UpdateTrigger::Period;
  cfg.random_start = s.random_start;
  if (s.algo == "fw-static") {
    if (s.update_period.value_or(0) != 0) throw InvalidArgument("fw-static does not take --update-period");
    cfg.score_update_period = 0;
  } else {
    cfg.score_update_period = s.update_period.value_or(10);
    if (cfg.score_update_period == 0) throw InvalidArgument("fw-dynamic needs --update-period >= 1");
  }
  cfg.validate();
  return cfg;
}

json config_json(const SolverFlags& s, const SolverConfig& cfg) {
  json j{{"algo", s.algo},
         {"eta", cfg.eta},
         {"steps", cfg.steps},
         {"patience", cfg.patience},
         {"update_period", cfg.score_update_period},
         {"max_terms", cfg.max_terms},
         {"seed", cfg.seed},
         {"step_rule", s.step_rule},
         {"trigger", s.trigger},
         {"random_start", cfg.random_start}};
  if (cfg.noise_scale) j["noise_scale"] = *cfg.noise_scale;
  return j;
}

SolveResult run_solver(const SolverConfig& cfg, const Objective& f, const ScoreMatrix& s,
                       const DoublyStochastic& a0) {
  return cfg.score_update_period == 0 ? solve_static(f, s, a0, cfg) : solve_dynamic(f, s, a0, cfg);
}

struct Problem {
  std::string kind;
  Objective f;
  std::optional<TspInstance> tsp;
  std::size_t leaves = 0;
  json descriptor;
};

struct InstanceFlags {
  std::string problem;
  std::string instance;
  std::size_t n = 10;
  double p = 0.1;
};

Problem load_problem(const InstanceFlags& in, std::uint64_t seed) {
  Problem pr;
  pr.kind = in.problem;
  if (!in.instance.empty()) pr.descriptor = {{"source", "file"}, {"path", in.instance}};
  else pr.descriptor = {{"source", "generated"}, {"n", in.n}, {"seed", seed}};

  if (in.problem == "tsp") {
    pr.tsp = in.instance.empty() ? gen_euclidean(in.n, seed) : read_file(in.instance, read_tsp);
    pr.f = tsp_objective(*pr.tsp);
  } else if (in.problem == "dfasp" || in.problem == "cmp") {
    const bool directed = in.problem == "dfasp";
    if (in.instance.empty()) {
      pr.descriptor["p"] = in.p;
      pr.f = directed ? dfasp_objective(gen_erdos_renyi_directed(in.n, in.p, seed))
                      : cmp_objective(gen_erdos_renyi_undirected(in.n, in.p, seed));
    } else {
      const GraphFile g = read_file(in.instance, read_graph);
      if (g.directed != directed) {
        throw InvalidArgument(in.problem + " needs a" + (directed ? " directed" : "n undirected") + " graph file");
      }
      pr.f = directed ? dfasp_objective(g.digraph()) : cmp_objective(g.graph());
    }
  } else {
    if (!in.instance.empty()) throw InvalidArgument("tree-demo takes no instance file");
    pr.leaves = in.n;
    pr.f = tree_lca_objective(in.n);
  }
  if (pr.tsp) pr.descriptor["n"] = pr.tsp->size();
  return pr;
}

std::ostream& open_out(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty()) return fallback;
  file.open(path);
  if (!file) throw InvalidArgument("cannot open " + path + " for writing");
  return file;
}

// --- generate -------------------------------------------------------------

struct GenerateFlags {
  std::string problem;
  std::size_t n = 10;
  double p = 0.1;
  std::size_t terms = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateFlags& g, std::ostream& out) {
  std::ofstream file;
  std::ostream& os = open_out(g.out, file, out);
  if (g.problem == "tsp") {
    write_tsp(os, gen_euclidean(g.n, g.seed));
  } else if (g.problem == "dfasp") {
    const Digraph d = gen_erdos_renyi_directed(g.n, g.p, g.seed);
    write_graph(os, d.size(), d.edges(), true);
  } else if (g.problem == "cmp") {
    const Graph u = gen_erdos_renyi_undirected(g.n, g.p, g.seed);
    write_graph(os, u.size(), u.edges(), false);
  } else {
    Rng rng(g.seed);
    write_matrix(os, random_doubly_stochastic(g.n, g.terms == 0 ? 2 * g.n : g.terms, rng).matrix());
  }
  return kExitOk;
}

// --- decompose ------------------------------------------------------------

struct DecomposeFlags {
  std::string matrix;
  std::string score = "random";
  std::string score_file;
  std::uint64_t seed = 0;
  std::size_t max_terms = 0;
};

int cmd_decompose(const DecomposeFlags& d, std::ostream& out) {
  const DoublyStochastic a = validate_doubly_stochastic(read_file(d.matrix, read_matrix));
  const std::size_t n = a.size();
  std::optional<ScoreMatrix> s;
  if (d.score == "power") {
    s = power_score(n);
  } else if (d.score == "file") {
    if (d.score_file.empty()) throw InvalidArgument("--score file needs --score-file");
    SquareMatrix m = read_file(d.score_file, read_matrix);
    if (m.size() != n) throw InvalidArgument("score matrix dimension differs from the input");
    s = ScoreMatrix(std::move(m));
  } else {
    Rng rng(d.seed);
    s = random_identifying_score(n, rng);
  }
  const auto dec = score_decompose(a, *s, d.max_terms == 0 ? std::nullopt : std::optional(d.max_terms));

  out << "term alpha permutation\n";
  for (std::size_t k = 0; k < dec.size(); ++k) {
    out << k + 1 << ' ' << num(dec.terms[k].alpha);
    for (std::size_t v : dec.terms[k].permutation.mapping()) out << ' ' << v;
    out << '\n';
  }
  out << "terms " << dec.size() << '\n';
  out << "alpha_sum " << num(dec.alpha_sum()) << '\n';
  out << "reconstruction_error " << num(max_abs_diff(reconstruct(dec, n), a.matrix())) << '\n';
  out << "residual_norm " << num(dec.residual_norm) << '\n';
  if (!dec.order_guaranteed) out << "note score not known to be identifying\n";
  return kExitOk;
}

// --- solve ----------------------------------------------------------------

struct SolveFlags {
  InstanceFlags instance;
  SolverFlags solver;
  std::string score_init = "random";
  std::string score_path;
  std::string baseline_path;
  std::string out;
  std::string trace;
  bool oracle = false;
};

void write_trace(const std::string& path, const SolveTrace& trace) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open " + path + " for writing");
  f << "iteration,extension_value,rounded,best,score_updated\n";
  for (const auto& r : trace.records) {
    f << r.iteration << ',' << num(r.extension_value) << ',' << num(r.rounded) << ',' << num(r.best) << ','
      << (r.score_updated ? 1 : 0) << '\n';
  }
}

int cmd_solve(const SolveFlags& sf, std::ostream& out) {
  const SolverConfig cfg = make_config(sf.solver);
  const Problem pr = load_problem(sf.instance, sf.solver.seed);
  const std::size_t dim = pr.f.n;
  Rng score_rng(derive_seed(sf.solver.seed, kScoreStream));

  if (pr.kind == "tree-demo" && sf.score_init != "random") {
    throw InvalidArgument("tree-demo supports only --score-init random");
  }

  std::optional<ScoreMatrix> s;
  std::optional<std::pair<std::string, double>> baseline;
  bool guaranteed = false;
  if (sf.score_init == "mst") {
    if (!pr.tsp) throw InvalidArgument("--score-init mst needs --problem tsp");
    const Permutation tour = mst_tour(*pr.tsp);
    s = perturbed_permutation_score(tour, score_rng, cfg.noise_scale);
    baseline = {"mst", pr.f(tour)};
    guaranteed = true;
  } else if (sf.score_init == "file") {
    if (sf.score_path.empty()) throw InvalidArgument("--score-init file needs --score");
    const Permutation init = read_file(sf.score_path, [&](std::istream& in) { return read_ranks(in, dim); });
    s = perturbed_permutation_score(init, score_rng, cfg.noise_scale);
    baseline = {"file", pr.f(init)};
    guaranteed = true;
  } else {
    s = random_identifying_score(dim, score_rng);
  }
  if (!sf.baseline_path.empty()) {
    const Permutation b = read_file(sf.baseline_path, [&](std::istream& in) { return read_ranks(in, dim); });
    baseline = {"file", pr.f(b)};
  }

  DoublyStochastic a0 = initial_point(dim, cfg);
  if (pr.kind == "tree-demo") {
    Rng rng(derive_seed(sf.solver.seed, kTreeStartStream));
    a0 = random_tree_polytope_member(pr.leaves, 2 * pr.leaves, rng);
  }

  const SolveResult res = run_solver(cfg, pr.f, *s, a0);

  // Property checks before anything is emitted.
  if (guaranteed && res.value > baseline->second) {
    throw GuaranteeViolated("final value " + num(res.value) + " exceeds the score-initialisation baseline " +
                            num(baseline->second));
  }
  std::optional<double> optimum;
  if (sf.oracle) {
    if (dim > kMaxBruteForce) throw InvalidArgument("--oracle is limited to n <= 10");
    optimum = brute_force_opt(pr.f, pr.kind == "tsp").value;
    if (res.value < *optimum - 1e-9) throw GuaranteeViolated("final value is below the brute-force optimum");
  }

  json report{{"problem", pr.kind},
              {"instance", pr.descriptor},
              {"config", config_json(sf.solver, cfg)},
              {"score_init", sf.score_init},
              {"final", res.value},
              {"permutation", res.permutation.mapping()},
              {"last_round", res.last_round.value},
              {"iterations", res.trace.iterations},
              {"score_updates", res.trace.score_updates},
              {"wall_time_seconds", res.trace.wall_time_seconds}};
  if (baseline) {
    report["baseline"] = {{"kind", baseline->first}, {"value", baseline->second}};
    if (baseline->second != 0.0) report["improvement"] = (baseline->second - res.value) / baseline->second;
  } else {
    report["baseline"] = nullptr;
  }
  if (optimum) report["oracle_optimum"] = *optimum;
  if (pr.kind == "tree-demo") {
    if (!TreeMask(pr.leaves).admits(res.permutation)) {
      throw GuaranteeViolated("tree-demo result is not a tree encoding");
    }
    report["tree"] = tree_from_permutation(res.permutation).canonical();
  }
  if (!sf.trace.empty()) {
    write_trace(sf.trace, res.trace);
    report["trace_path"] = sf.trace;
  }

  std::ofstream file;
  open_out(sf.out, file, out) << report.dump(2) << '\n';
  return kExitOk;
}

// --- bench ----------------------------------------------------------------

struct BenchFlags {
  std::string problem = "tsp";
  std::vector<std::size_t> sizes{10};
  std::size_t instances = 5;
  double p = 0.1;
  SolverFlags solver;
  std::string out;
};

struct BenchRow {
  double baseline = 0.0;
  double final = 0.0;
  double improvement = 0.0;
};

BenchRow bench_one(const BenchFlags& b, const SolverConfig& base_cfg, std::size_t n, std::uint64_t seed) {
  SolverConfig cfg = base_cfg;
  cfg.seed = seed;
  InstanceFlags in{b.problem, "", n, b.p};
  const Problem pr = load_problem(in, seed);
  Rng score_rng(derive_seed(seed, kScoreStream));
  BenchRow row;
  SolveResult res;
  if (pr.tsp) {
    const Permutation tour = mst_tour(*pr.tsp);
    row.baseline = pr.f(tour);
    res = run_solver(cfg, pr.f, perturbed_permutation_score(tour, score_rng, cfg.noise_scale), initial_point(n, cfg));
    if (res.value > row.baseline) throw GuaranteeViolated("bench: final tour exceeds the MST tour");
  } else {
    res = run_solver(cfg, pr.f, random_identifying_score(n, score_rng), initial_point(n, cfg));
    // Rounded value at the starting point, which the pool always contains.
    row.baseline = res.trace.records.empty() ? res.last_round.value : res.trace.records.front().rounded;
  }
  row.final = res.value;
  row.improvement = row.baseline == 0.0 ? 0.0 : (row.baseline - row.final) / row.baseline;
  return row;
}

int cmd_bench(const BenchFlags& b, std::ostream& out) {
  if (b.problem == "tree-demo") throw InvalidArgument("bench supports tsp, dfasp and cmp");
  if (b.instances == 0) throw InvalidArgument("--instances must be positive");
  SolverConfig cfg = make_config(b.solver);
  cfg.record_trace = true;

  std::ofstream file;
  std::ostream& os = open_out(b.out, file, out);
  os << "row,size,instance,seed,baseline,final,improvement\n";
  for (std::size_t n : b.sizes) {
    double sb = 0.0, sf = 0.0, si = 0.0;
    for (std::size_t i = 0; i < b.instances; ++i) {
      const std::uint64_t seed = derive_seed(derive_seed(b.solver.seed, n), i);
      const BenchRow r = bench_one(b, cfg, n, seed);
      os << "detail," << n << ',' << i << ',' << seed << ',' << num(r.baseline) << ',' << num(r.final) << ','
         << num(r.improvement) << '\n';
      sb += r.baseline;
      sf += r.final;
      si += r.improvement;
    }
    const double k = static_cast<double>(b.instances);
    os << "summary," << n << ',' << b.instances << ",," << num(sb / k) << ',' << num(sf / k) << ','
       << num(si / k) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Birkhoff extension: decompositions and Frank-Wolfe solvers for permutation problems",
               "birkhoff"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "write a random instance");
  generate->add_option("--problem", gen.problem, "tsp, dfasp, cmp or matrix")
      ->required()
      ->check(CLI::IsMember({"tsp", "dfasp", "cmp", "matrix"}));
  generate->add_option("--n", gen.n, "size");
  generate->add_option("--p", gen.p, "edge probability");
  generate->add_option("--terms", gen.terms, "permutations mixed into a matrix (default 2n)");
  generate->add_option("--seed", gen.seed, "seed");
  generate->add_option("--out", gen.out, "output file (default stdout)");

  DecomposeFlags dec;
  auto* decompose = app.add_subcommand("decompose", "print the score-induced decomposition of a matrix");
  decompose->add_option("matrix,--matrix", dec.matrix, "doubly stochastic matrix file")->required();
  decompose->add_option("--score", dec.score, "random, power or file")
      ->check(CLI::IsMember({"random", "power", "file"}));
  decompose->add_option("--score-file", dec.score_file, "score matrix file for --score file");
  decompose->add_option("--seed", dec.seed, "seed for the random score");
  decompose->add_option("--max-terms", dec.max_terms, "stop after K terms (0 = all)");

  SolveFlags sol;
  auto* solve = app.add_subcommand("solve", "run a Frank-Wolfe solver and print a JSON report");
  solve->add_option("--problem", sol.instance.problem, "tsp, dfasp, cmp or tree-demo")
      ->required()
      ->check(CLI::IsMember({"tsp", "dfasp", "cmp", "tree-demo"}));
  solve->add_option("--instance", sol.instance.instance, "instance file (default: generate)");
  solve->add_option("--n", sol.instance.n, "generated instance size (leaves for tree-demo)");
  solve->add_option("--p", sol.instance.p, "edge probability for generated graphs");
  solve->add_option("--score-init", sol.score_init, "random, mst or file")
      ->check(CLI::IsMember({"random", "mst", "file"}));
  solve->add_option("--score", sol.score_path, "ranks file for --score-init file");
  solve->add_option("--baseline", sol.baseline_path, "ranks file of an external baseline");
  solve->add_option("--out", sol.out, "report file (default stdout)");
  solve->add_option("--trace", sol.trace, "write the per-iteration trace as CSV");
  solve->add_flag("--oracle", sol.oracle, "cross-check against brute force (n <= 10)");
  add_solver_flags(solve, sol.solver);

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "seeded instances per size, CSV of results and means");
  bench_cmd->add_option("--problem", bench.problem, "tsp, dfasp or cmp")
      ->check(CLI::IsMember({"tsp", "dfasp", "cmp"}));
  bench_cmd->add_option("--sizes", bench.sizes, "comma-separated sizes")->delimiter(',');
  bench_cmd->add_option("--instances", bench.instances, "instances per size");
  bench_cmd->add_option("--p", bench.p, "edge probability");
  bench_cmd->add_option("--out", bench.out, "CSV file (default stdout)");
  add_solver_flags(bench_cmd, bench.solver);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*decompose) return cmd_decompose(dec, out);
    if (*solve) return cmd_solve(sol, out);
    return cmd_bench(bench, out);
  } catch (const GuaranteeViolated& e) {
    err << "guarantee violated: " << e.what() << '\n';
    return kExitGuarantee;
  } catch (const MaskLeak& e) {
    err << "guarantee violated: " << e.what() << '\n';
    return kExitGuarantee;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace birkhoff::cli
