#pragma once

// Synthetic instances: preferential-attachment trees, smooth signals from a
// low-pass graph filter or a Gaussian Markov random field, random rewiring,
// and the welfare-sensitivity experiment built on it.

#include <string_view>
#include <utility>
#include <vector>

#include "glgp/game.hpp"
#include "glgp/graph.hpp"
#include "glgp/rng.hpp"

namespace glgp {

/// Normalization applied to a binary adjacency before it enters a game or a
/// filter. spectral: W c / rho(W). rowsum: Proj_S(W c / max row sum).
/// reference: multiply by a caller-supplied factor (typically c / rho of a
/// reference graph). none: unchanged.
enum class ScaleMode { spectral, rowsum, none, reference };

std::string_view to_string(ScaleMode mode);
ScaleMode parse_scale_mode(std::string_view name);

/// Largest eigenvalue modulus; symmetric input goes through the
/// self-adjoint eigensolver, anything else through the Perron power bound.
double spectral_radius(const MatrixXd& w);

MatrixXd scale_adjacency(const MatrixXd& w, ScaleMode mode, double c,
                         double reference_factor = 1.0);

/// Tree grown from the edge (0, 1); node t attaches to one existing node with
/// probability proportional to its degree.
Adjacency gen_pa_graph(Eigen::Index n, RngStream& rng);

/// The same tree as an edge list (t, target), for sizes where a dense matrix
/// is unwelcome. Consumes the stream exactly like gen_pa_graph.
std::vector<std::pair<Eigen::Index, Eigen::Index>> gen_pa_edges(Eigen::Index n, RngStream& rng);

/// Columns exp(W_s / 2) u + w with u ~ N(0, I), w ~ N(0, sigma^2 I), where W_s is
/// W scaled per `scale` (budget c).
GraphSignals gen_lowpass_signals(const Adjacency& w, Eigen::Index m, double sigma, RngStream& rng,
                                 ScaleMode scale = ScaleMode::none, double c = 0.95);

/// Samples with precision L + ridge I, L = Diag(W1) - W.
GraphSignals gen_gmrf_signals(const Adjacency& w, Eigen::Index m, double ridge, RngStream& rng);

/// Deletes round(fraction E) distinct edges, one at a time, each replaced by
/// a uniformly drawn absent pair other than the one just removed.
Adjacency rewire(const Adjacency& w, double fraction, RngStream& rng);

struct WelfareRatioRow {
  double fraction;
  double p_pert;    // mean ratio over successful trials
  double std_error; // sample standard deviation / sqrt(successful trials)
  int trials;
  int failed_trials;
};

struct WelfareRatioOptions {
  ScaleMode scale = ScaleMode::spectral;
  double ne_tol = kNeTolerance;
  unsigned threads = 1;
};

/// P_pert = E[(Wel(W_pert) - 1'b) / (Wel(W_orig) - 1'b)] per fraction. Trial t
/// of fraction k draws from rng.child(k, t).
std::vector<WelfareRatioRow> welfare_ratio_experiment(const Adjacency& w_orig,
                                                      const std::vector<double>& fractions,
                                                      int trials, const GameSpec& game,
                                                      const RngStream& rng,
                                                      const WelfareRatioOptions& options = {});

}  // namespace glgp
