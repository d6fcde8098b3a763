// glgp: command-line front end.
//
// Exit codes: 0 success, 1 usage or invalid configuration, 2 numerical
// failure, 3 I/O failure.
//
// Randomness: every stochastic command seeds RngStream(seed, stream) where the
// stream id is mix64 of a fixed per-command tag, so two commands given the same
// --seed never share a stream.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "glgp/baselines.hpp"
#include "glgp/datagen.hpp"
#include "glgp/error.hpp"
#include "glgp/evaluation.hpp"
#include "glgp/game.hpp"
#include "glgp/graph.hpp"
#include "glgp/io.hpp"
#include "glgp/objective.hpp"
#include "glgp/rng.hpp"
#include "glgp/ttgd.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace glgp;

namespace {

enum : std::uint64_t {
  kTagGenGraph = 1,
  kTagGenSignals = 2,
  kTagLearn = 3,
  kTagRewire = 4,
};

RngStream command_stream(std::uint64_t seed, std::uint64_t tag) {
  return RngStream(seed, mix64(tag));
}

// Relative output paths land under $GLGP_OUTPUT_DIR when it is set.
fs::path output_path(const std::string& p) {
  fs::path path(p);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("GLGP_OUTPUT_DIR"); dir && *dir) return fs::path(dir) / path;
  }
  return path;
}

bool looks_like_csv(const std::string& path) { return fs::path(path).extension() == ".csv"; }

// Graphs arrive either as a dense CSV matrix or as an edge list.
Adjacency load_graph(const std::string& path, bool undirected) {
  if (looks_like_csv(path)) return Adjacency(io::load_matrix_csv(path));
  io::EdgeListOptions opts;
  opts.undirected = undirected;
  return io::load_edge_list(path, opts);
}

VectorXd load_benefit(const std::string& spec, Eigen::Index n) {
  if (spec == "ones") return VectorXd::Ones(n);
  VectorXd b = io::load_vector_csv(spec);
  if (b.size() != n) {
    throw std::invalid_argument("benefit vector has " + std::to_string(b.size()) +
                                " entries, graph has " + std::to_string(n) + " nodes");
  }
  return b;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw std::invalid_argument("malformed number '" + item + "' in list '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    io::write_text_file(output_path(out), text);
  }
}

std::string real(double v) { return io::format_real(v); }

// ---------------------------------------------------------------------------

struct GenGraphArgs {
  std::string model = "pa";
  long long nodes = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int gen_graph(const GenGraphArgs& a) {
  if (a.model != "pa") throw std::invalid_argument("gen-graph: unknown model '" + a.model + "'");
  if (a.nodes < 2) throw std::invalid_argument("gen-graph: --nodes must be >= 2");
  RngStream rng = command_stream(a.seed, kTagGenGraph);
  const Adjacency g = gen_pa_graph(a.nodes, rng);
  std::ostringstream text;
  io::write_edge_list(text, g);
  emit(a.out, text.str());
  return 0;
}

struct GenSignalsArgs {
  std::string graph;
  std::string model = "lowpass";
  long long samples = 10;
  double sigma = 0.2;
  double ridge = 1e-2;
  std::string scale = "none";
  double c = 0.95;
  std::uint64_t seed = 0;
  std::string out;
};

int gen_signals(const GenSignalsArgs& a) {
  const ScaleMode scale = parse_scale_mode(a.scale);
  if (a.samples < 1) throw std::invalid_argument("gen-signals: --samples must be >= 1");
  const Adjacency g = load_graph(a.graph, false);
  RngStream rng = command_stream(a.seed, kTagGenSignals);
  GraphSignals x;
  if (a.model == "lowpass") {
    x = gen_lowpass_signals(g, a.samples, a.sigma, rng, scale, a.c);
  } else if (a.model == "gmrf") {
    x = gen_gmrf_signals(g, a.samples, a.ridge, rng);
  } else {
    throw std::invalid_argument("gen-signals: unknown model '" + a.model + "'");
  }
  std::ostringstream text;
  io::write_matrix_csv(text, x.values());
  emit(a.out, text.str());
  return 0;
}

struct LearnArgs {
  std::string method = "glgp";
  std::string signals;
  std::string b = "data";
  double lambda = 0.0;
  double beta = 200.0;
  double c = 0.95;
  double alpha = 0.5;
  double gamma = 0.003;
  int iters = -1;  // -1: 700 for identity, 195 for log1p
  std::string f = "identity";
  std::string step_mode = "manual";
  double stationarity_stop = 0.0;
  int exact_every = 0;
  std::uint64_t seed = 0;
  std::string out_prefix;
};

json vector_json(const std::vector<double>& v) { return json(v); }

int learn(const LearnArgs& a) {
  LearnConfig cfg;
  cfg.lambda = a.lambda;
  cfg.beta = a.beta;
  cfg.c = a.c;
  cfg.alpha = a.alpha;
  cfg.gamma = a.gamma;
  cfg.f_kind = parse_interaction(a.f);
  cfg.step_mode = parse_step_mode(a.step_mode);
  cfg.max_iter = a.iters >= 0 ? a.iters : (cfg.f_kind == InteractionKind::identity ? 700 : 195);
  cfg.seed = a.seed;
  cfg.stationarity_stop = a.stationarity_stop;
  cfg.exact_stationarity_every = a.exact_every;
  if (a.method != "glgp" && a.method != "smooth" && a.method != "linapprox") {
    throw std::invalid_argument("learn: unknown method '" + a.method + "'");
  }
  cfg.require_valid();
  if (a.out_prefix.empty()) throw std::invalid_argument("learn: --out-prefix is required");

  const GraphSignals x(io::load_signals_csv(a.signals));
  const DistanceMatrix d = distance_matrix(x);
  const VectorXd b = a.b == "data" ? marginal_benefit_from_data(d) : load_benefit(a.b, d.size());

  json trace = {{"method", a.method}};
  MatrixXd w;
  if (a.method == "smooth") {
    w = solve_smooth_gl(d, cfg.beta, cfg.c).weights();
    trace["iterations"] = 0;
  } else if (a.method == "linapprox") {
    w = solve_linear_approx(d, cfg.beta, cfg.c, cfg.lambda, b).weights();
    trace["iterations"] = 0;
  } else {
    const LearnTrace t = run_ttgd(cfg, d, b);
    w = t.w;
    trace["iterations"] = t.iterations;
    trace["alpha"] = t.alpha;
    trace["gamma"] = t.gamma;
    trace["stopped_early"] = t.stopped_early;
    trace["ell_value"] = vector_json(t.ell_value);
    trace["stationarity"] = vector_json(t.stationarity);
    trace["best_stationarity"] = vector_json(t.best_stationarity);
    trace["ne_residual"] = vector_json(t.ne_residual);
    trace["exact"] = {{"iterations", t.exact_iterations},
                      {"stationarity", t.exact_stationarity},
                      {"ell_value", t.exact_ell}};
  }
  const GameSpec game(b, InteractionFunction(cfg.f_kind), cfg.c);
  trace["J"] = objective_J(w, d, cfg.beta);
  trace["welfare"] = welfare(w, game, cfg.ne_tol);
  const std::string adj_name = fs::path(a.out_prefix + ".adj.csv").filename().string();
  trace["adjacency"] = adj_name;

  // Every flag is written out explicitly so a replay does not depend on
  // defaults of the binary that replays it.
  std::vector<std::string> argv = {"learn",
                                   "--method", a.method,
                                   "--signals", a.signals,
                                   "--b", a.b,
                                   "--lambda", real(cfg.lambda),
                                   "--beta", real(cfg.beta),
                                   "--c", real(cfg.c),
                                   "--alpha", real(cfg.alpha),
                                   "--gamma", real(cfg.gamma),
                                   "--iters", std::to_string(cfg.max_iter),
                                   "--f", std::string(to_string(cfg.f_kind)),
                                   "--step-mode", std::string(to_string(cfg.step_mode)),
                                   "--stationarity-stop", real(cfg.stationarity_stop),
                                   "--exact-every", std::to_string(cfg.exact_stationarity_every),
                                   "--seed", std::to_string(cfg.seed),
                                   "--out-prefix", a.out_prefix};
  json meta = {{"tool", "glgp"},
               {"version", GLGP_VERSION},
               {"command", "learn"},
               {"config",
                {{"method", a.method},
                 {"signals", a.signals},
                 {"b", a.b},
                 {"lambda", cfg.lambda},
                 {"beta", cfg.beta},
                 {"c", cfg.c},
                 {"alpha", cfg.alpha},
                 {"gamma", cfg.gamma},
                 {"iters", cfg.max_iter},
                 {"f", to_string(cfg.f_kind)},
                 {"step_mode", to_string(cfg.step_mode)},
                 {"ne_tol", cfg.ne_tol},
                 {"stationarity_stop", cfg.stationarity_stop},
                 {"exact_every", cfg.exact_stationarity_every},
                 {"seed", cfg.seed}}},
               {"argv", argv}};

  std::ostringstream adj;
  io::write_matrix_csv(adj, w);
  io::write_text_file(output_path(a.out_prefix + ".adj.csv"), adj.str());
  io::write_text_file(output_path(a.out_prefix + ".trace.json"), trace.dump(1) + "\n");
  io::write_text_file(output_path(a.out_prefix + ".meta.json"), meta.dump(1) + "\n");
  return 0;
}

struct EvalAucArgs {
  std::string learned;
  std::string truth;
  std::string score = "avg";
  std::string out;
};

int eval_auc(const EvalAucArgs& a) {
  const ScoreRule rule = parse_score_rule(a.score);
  const Adjacency learned = load_graph(a.learned, false);
  const Adjacency truth = load_graph(a.truth, false);
  emit(a.out, real(auc_edges(learned, truth, rule)) + "\n");
  return 0;
}

struct GameArgs {
  std::string graph;
  std::string b = "ones";
  std::string f = "identity";
  double c = 0.95;
  std::string scale = "none";
  std::string out;
};

struct LoadedGame {
  MatrixXd w;
  GameSpec game;
};

LoadedGame load_game(const GameArgs& a) {
  const ScaleMode scale = parse_scale_mode(a.scale);
  if (scale == ScaleMode::reference) {
    throw std::invalid_argument("scale 'reference' needs a reference graph; use rewire-experiment");
  }
  const Adjacency g = load_graph(a.graph, false);
  GameSpec game(load_benefit(a.b, g.size()), InteractionFunction(parse_interaction(a.f)), a.c);
  return {scale_adjacency(g.weights(), scale, a.c), std::move(game)};
}

int welfare_cmd(const GameArgs& a) {
  const LoadedGame lg = load_game(a);
  emit(a.out, real(welfare(lg.w, lg.game)) + "\n");
  return 0;
}

int ne_cmd(const GameArgs& a) {
  const LoadedGame lg = load_game(a);
  const Equilibrium eq = solve_ne_fixed_point(lg.w, lg.game);
  std::string text;
  for (Eigen::Index i = 0; i < eq.y.size(); ++i) text += real(eq.y(i)) + "\n";
  emit(a.out, text);
  return 0;
}

struct RewireArgs {
  GameArgs game;
  std::string fractions = "0.1,0.2,0.3,0.4,0.5";
  int trials = 200;
  std::uint64_t seed = 0;
};

int rewire_experiment(const RewireArgs& a, unsigned threads) {
  const Adjacency g = load_graph(a.game.graph, false);
  const GameSpec game(load_benefit(a.game.b, g.size()),
                      InteractionFunction(parse_interaction(a.game.f)), a.game.c);
  WelfareRatioOptions opts;
  opts.scale = parse_scale_mode(a.game.scale);
  opts.threads = threads;
  const auto rows = welfare_ratio_experiment(g, parse_list(a.fractions), a.trials, game,
                                             command_stream(a.seed, kTagRewire), opts);
  std::string text = "fraction,P_pert,stderr,failed_trials\n";
  for (const auto& r : rows) {
    text += real(r.fraction) + "," + real(r.p_pert) + "," + real(r.std_error) + "," +
            std::to_string(r.failed_trials) + "\n";
  }
  emit(a.game.out, text);
  return 0;
}

struct ParetoArgs {
  LearnArgs learn;
  std::string lambdas = "0,5,10,20,50,100";
  std::string truth;
  std::string score = "avg";
  std::string out;
};

int pareto(const ParetoArgs& a, unsigned threads) {
  LearnConfig cfg;
  cfg.beta = a.learn.beta;
  cfg.c = a.learn.c;
  cfg.alpha = a.learn.alpha;
  cfg.gamma = a.learn.gamma;
  cfg.f_kind = parse_interaction(a.learn.f);
  cfg.step_mode = parse_step_mode(a.learn.step_mode);
  cfg.max_iter =
      a.learn.iters >= 0 ? a.learn.iters : (cfg.f_kind == InteractionKind::identity ? 700 : 195);
  const std::vector<double> grid = parse_list(a.lambdas);
  for (double l : grid) {
    LearnConfig probe = cfg;
    probe.lambda = l;
    probe.require_valid();
  }
  const GraphSignals x(io::load_signals_csv(a.learn.signals));
  const DistanceMatrix d = distance_matrix(x);
  const VectorXd b =
      a.learn.b == "data" ? marginal_benefit_from_data(d) : load_benefit(a.learn.b, d.size());
  ParetoOptions opts;
  opts.threads = threads;
  opts.score_rule = parse_score_rule(a.score);
  if (!a.truth.empty()) opts.truth = load_graph(a.truth, false);
  const auto points = pareto_sweep(d, b, grid, cfg, opts);
  std::ostringstream text;
  write_pareto_csv(text, points);
  emit(a.out, text.str());
  for (const auto& p : points) {
    if (!p.ok) {
      std::cerr << "pareto: " << to_string(p.method) << " at lambda " << real(p.lambda)
                << " failed: " << p.error << "\n";
    }
  }
  return 0;
}

void add_game_options(CLI::App* cmd, GameArgs& g) {
  cmd->add_option("--graph", g.graph, "Edge list, or dense matrix if the name ends in .csv")
      ->required();
  cmd->add_option("--b", g.b, "Marginal benefits: 'ones' or a one-column CSV");
  cmd->add_option("--f", g.f, "Interaction function: identity|log1p");
  cmd->add_option("--c", g.c, "Budget used by scaling and game validation");
  cmd->add_option("--scale", g.scale, "none|spectral|rowsum|reference")->capture_default_str();
  cmd->add_option("--out", g.out, "Output file (default stdout)");
}

void add_learn_options(CLI::App* cmd, LearnArgs& l) {
  cmd->add_option("--signals", l.signals, "Signals CSV, one row per node")->required();
  cmd->add_option("--b", l.b, "'data' (top eigenvector of D), 'ones', or a CSV");
  cmd->add_option("--beta", l.beta, "Smoothness regularization weight")->capture_default_str();
  cmd->add_option("--c", l.c, "Row-sum budget of the feasible set")->capture_default_str();
  cmd->add_option("--alpha", l.alpha, "Lower-level (equilibrium) step")->capture_default_str();
  cmd->add_option("--gamma", l.gamma, "Upper-level (graph) step")->capture_default_str();
  cmd->add_option("--iters", l.iters, "Iterations (default 700 for identity, 195 for log1p)");
  cmd->add_option("--f", l.f, "identity|log1p");
  cmd->add_option("--step-mode", l.step_mode, "manual|theory");
}

int run(const std::vector<std::string>& args, int depth = 0);

int dispatch(CLI::App& app, const std::vector<std::string>& args, int depth) {
  unsigned threads = 1;
  std::string replay;
  app.require_subcommand(0, 1);
  app.add_option("--threads", threads, "Worker threads for trials and sweeps (0 = all cores)");
  app.add_option("--replay", replay, "Rerun the command recorded in a .meta.json file");
  app.set_version_flag("--version", GLGP_VERSION);

  GenGraphArgs gg;
  auto* c_gg = app.add_subcommand("gen-graph", "Generate a random graph");
  c_gg->add_option("--model", gg.model, "Graph model (pa)");
  c_gg->add_option("--nodes", gg.nodes, "Number of nodes")->required();
  c_gg->add_option("--seed", gg.seed, "Random seed")->required();
  c_gg->add_option("--out", gg.out, "Output edge list (default stdout)");

  GenSignalsArgs gs;
  auto* c_gs = app.add_subcommand("gen-signals", "Generate smooth graph signals");
  c_gs->add_option("--graph", gs.graph, "Ground truth graph")->required();
  c_gs->add_option("--model", gs.model, "lowpass|gmrf");
  c_gs->add_option("--samples", gs.samples, "Number of signals")->capture_default_str();
  c_gs->add_option("--sigma", gs.sigma, "Noise standard deviation (lowpass)")->capture_default_str();
  c_gs->add_option("--ridge", gs.ridge, "Precision ridge (gmrf)")->capture_default_str();
  c_gs->add_option("--scale", gs.scale, "none|spectral|rowsum (lowpass only)")->capture_default_str();
  c_gs->add_option("--c", gs.c, "Target scale for spectral/rowsum")->capture_default_str();
  c_gs->add_option("--seed", gs.seed, "Random seed")->required();
  c_gs->add_option("--out", gs.out, "Output CSV (default stdout)");

  LearnArgs la;
  auto* c_learn = app.add_subcommand("learn", "Learn a graph from signals");
  c_learn->add_option("--method", la.method, "glgp|smooth|linapprox");
  add_learn_options(c_learn, la);
  c_learn->add_option("--lambda", la.lambda, "Welfare weight")->capture_default_str();
  c_learn->add_option("--stationarity-stop", la.stationarity_stop, "Stop once stationarity falls below this (0 = off)");
  c_learn->add_option("--exact-every", la.exact_every, "Record exact stationarity every k iterations (0 = off)");
  c_learn->add_option("--seed", la.seed, "Recorded in the metadata");
  c_learn->add_option("--out-prefix", la.out_prefix, "Writes PREFIX.adj.csv, .trace.json, .meta.json")->required();

  EvalAucArgs ea;
  auto* c_auc = app.add_subcommand("eval-auc", "AUC of a learned graph against a ground truth");
  c_auc->add_option("--learned", ea.learned, "Learned graph")->required();
  c_auc->add_option("--truth", ea.truth, "Binary symmetric ground truth")->required();
  c_auc->add_option("--score", ea.score, "avg|max");
  c_auc->add_option("--out", ea.out, "Output file (default stdout)");

  GameArgs wa;
  auto* c_wel = app.add_subcommand("welfare", "Total welfare at the Nash equilibrium");
  add_game_options(c_wel, wa);

  GameArgs na;
  auto* c_ne = app.add_subcommand("ne", "Nash equilibrium actions");
  add_game_options(c_ne, na);

  RewireArgs ra;
  ra.game.scale = "spectral";
  auto* c_rw = app.add_subcommand("rewire-experiment", "Welfare ratio under random rewiring");
  add_game_options(c_rw, ra.game);
  c_rw->add_option("--fractions", ra.fractions, "Comma-separated rewiring fractions");
  c_rw->add_option("--trials", ra.trials, "Trials per fraction")->capture_default_str();
  c_rw->add_option("--seed", ra.seed, "Random seed")->required();

  ParetoArgs pa;
  auto* c_par = app.add_subcommand("pareto", "Objective/welfare sweep over lambda");
  add_learn_options(c_par, pa.learn);
  c_par->add_option("--lambdas", pa.lambdas, "Comma-separated lambda grid");
  c_par->add_option("--truth", pa.truth, "Ground truth graph for an AUC column");
  c_par->add_option("--score", pa.score, "avg|max");
  c_par->add_option("--out", pa.out, "Output CSV (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);

  if (!replay.empty()) {
    if (depth > 0) throw std::invalid_argument("--replay cannot be nested");
    std::ifstream in(replay);
    if (!in) throw IoError(replay + ": cannot open");
    json meta;
    try {
      meta = json::parse(in);
    } catch (const json::exception& e) {
      throw IoError(replay + ": " + e.what());
    }
    if (!meta.contains("argv") || !meta["argv"].is_array()) {
      throw IoError(replay + ": no recorded argv");
    }
    auto replay_args = meta["argv"].get<std::vector<std::string>>();
    replay_args.insert(replay_args.begin(), {"--threads", std::to_string(threads)});
    return run(replay_args, depth + 1);
  }

  if (*c_gg) return gen_graph(gg);
  if (*c_gs) return gen_signals(gs);
  if (*c_learn) return learn(la);
  if (*c_auc) return eval_auc(ea);
  if (*c_wel) return welfare_cmd(wa);
  if (*c_ne) return ne_cmd(na);
  if (*c_rw) return rewire_experiment(ra, threads);
  if (*c_par) {
    return pareto(pa, threads);
  }
  std::cerr << app.help();
  return 1;
}

int run(const std::vector<std::string>& args, int depth) {
  CLI::App app("Graph learning with a network-game welfare prior", "glgp");
  try {
    return dispatch(app, args, depth);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "glgp: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "glgp: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "glgp: numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "glgp: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}
