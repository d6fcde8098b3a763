#pragma once

// Topology recovery (AUC), welfare comparisons and objective/welfare sweeps.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "glgp/game.hpp"
#include "glgp/graph.hpp"
#include "glgp/ttgd.hpp"

namespace glgp {

/// How a directed learned W becomes one score per unordered pair.
enum class ScoreRule { average, max };

std::string_view to_string(ScoreRule rule);
ScoreRule parse_score_rule(std::string_view name);

/// Mann-Whitney AUC with average ranks for ties: the probability that a
/// random positive outscores a random negative, ties counted as one half.
/// Throws NumericalError when either class is empty.
double auc_scores(const std::vector<double>& scores, const std::vector<int>& labels);

/// AUC of the pair scores over all i < j, labelled by the upper triangle of a
/// binary symmetric ground truth.
double auc_edges(const Adjacency& learned, const Adjacency& truth,
                 ScoreRule rule = ScoreRule::average);

/// Wel(W_learned) - Wel(W_true_scaled).
double welfare_gain(const MatrixXd& w_learned, const MatrixXd& w_true_scaled, const GameSpec& game,
                    double ne_tol = kNeTolerance);

enum class SweepMethod { ttgd, linear_approx, smooth_gl };

std::string_view to_string(SweepMethod method);

struct ParetoPoint {
  SweepMethod method;
  double lambda;
  double j_value;
  double welfare;
  double auc;  // NaN without a ground truth
  bool ok;
  std::string error;
};

struct ParetoOptions {
  unsigned threads = 1;
  ScoreRule score_rule = ScoreRule::average;
  std::optional<Adjacency> truth;
};

/// smooth_gl first, then ttgd for every lambda, then linear_approx for every
/// lambda. `config` supplies beta, c, step sizes, iterations and f; its
/// lambda is overridden per point. A failing point is recorded with ok =
/// false and the sweep continues.
std::vector<ParetoPoint> pareto_sweep(const DistanceMatrix& d, const VectorXd& b,
                                      const std::vector<double>& lambda_grid,
                                      const LearnConfig& config,
                                      const ParetoOptions& options = {});

/// Every successful point of `other` has a successful point of `front` with
/// J no larger and welfare no smaller, up to `tol`.
bool weakly_dominates(const std::vector<ParetoPoint>& front, const std::vector<ParetoPoint>& other,
                      double tol = 1e-6);

/// Header method,lambda,J,welfare,auc; failed points are skipped.
void write_pareto_csv(std::ostream& out, const std::vector<ParetoPoint>& points);

}  // namespace glgp
