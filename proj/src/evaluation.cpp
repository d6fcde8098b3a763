#include "glgp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "glgp/baselines.hpp"
#include "glgp/error.hpp"
#include "glgp/io.hpp"
#include "glgp/objective.hpp"
#include "glgp/parallel.hpp"

namespace glgp {

std::string_view to_string(ScoreRule rule) { return rule == ScoreRule::average ? "avg" : "max"; }

ScoreRule parse_score_rule(std::string_view name) {
  if (name == "avg" || name == "average") return ScoreRule::average;
  if (name == "max") return ScoreRule::max;
  throw std::invalid_argument("unknown score rule '" + std::string(name) + "'");
}

double auc_scores(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("auc_scores: length mismatch");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo;
    while (hi + 1 < n && scores[order[hi + 1]] == scores[order[lo]]) ++hi;
    // 1-based ranks lo+1..hi+1 share their mean.
    const double rank = 0.5 * static_cast<double>(lo + hi) + 1.0;
    for (std::size_t k = lo; k <= hi; ++k) {
      if (labels[order[k]]) {
        rank_sum += rank;
        ++positives;
      }
    }
    lo = hi + 1;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw NumericalError("auc: labels contain a single class, AUC undefined");
  }
  const double p = static_cast<double>(positives);
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(negatives));
}

double auc_edges(const Adjacency& learned, const Adjacency& truth, ScoreRule rule) {
  const Eigen::Index n = truth.size();
  if (learned.size() != n) throw std::invalid_argument("auc_edges: size mismatch");
  if (!truth.is_binary() || !truth.is_symmetric()) {
    throw std::invalid_argument("auc_edges: ground truth must be binary and symmetric");
  }
  const MatrixXd& w = learned.weights();
  std::vector<double> scores;
  std::vector<int> labels;
  scores.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  labels.reserve(scores.capacity());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      scores.push_back(rule == ScoreRule::average ? 0.5 * (w(i, j) + w(j, i))
                                                  : std::max(w(i, j), w(j, i)));
      labels.push_back(truth.weights()(i, j) != 0.0 ? 1 : 0);
    }
  }
  return auc_scores(scores, labels);
}

double welfare_gain(const MatrixXd& w_learned, const MatrixXd& w_true_scaled, const GameSpec& game,
                    double ne_tol) {
  return welfare(w_learned, game, ne_tol) - welfare(w_true_scaled, game, ne_tol);
}

std::string_view to_string(SweepMethod method) {
  switch (method) {
    case SweepMethod::ttgd:
      return "ttgd";
    case SweepMethod::linear_approx:
      return "linear_approx";
    case SweepMethod::smooth_gl:
      return "smooth_gl";
  }
  return "ttgd";
}

std::vector<ParetoPoint> pareto_sweep(const DistanceMatrix& d, const VectorXd& b,
                                      const std::vector<double>& lambda_grid,
                                      const LearnConfig& config, const ParetoOptions& options) {
  if (lambda_grid.empty()) throw std::invalid_argument("pareto_sweep: empty lambda grid");
  for (double l : lambda_grid) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw std::invalid_argument("pareto_sweep: lambda must be >= 0");
  }
  const GameSpec game(b, InteractionFunction(config.f_kind), config.c);
  const std::size_t g = lambda_grid.size();
  std::vector<ParetoPoint> points(1 + 2 * g);
  parallel_for(points.size(), options.threads, [&](std::size_t task) {
    ParetoPoint& p = points[task];
    p.method = task == 0 ? SweepMethod::smooth_gl
               : task <= g ? SweepMethod::ttgd
                           : SweepMethod::linear_approx;
    p.lambda = task == 0 ? 0.0 : lambda_grid[(task - 1) % g];
    p.auc = std::nan("");
    try {
      MatrixXd w;
      if (p.method == SweepMethod::smooth_gl) {
        w = solve_smooth_gl(d, config.beta, config.c).weights();
      } else if (p.method == SweepMethod::linear_approx) {
        w = solve_linear_approx(d, config.beta, config.c, p.lambda, b).weights();
      } else {
        LearnConfig cfg = config;
        cfg.lambda = p.lambda;
        w = run_ttgd(cfg, d, b).w;
      }
      p.j_value = objective_J(w, d, config.beta);
      p.welfare = welfare(w, game, config.ne_tol);
      if (options.truth) p.auc = auc_edges(Adjacency(w), *options.truth, options.score_rule);
      p.ok = true;
    } catch (const std::exception& e) {
      p.ok = false;
      p.error = e.what();
    }
  });
  return points;
}

bool weakly_dominates(const std::vector<ParetoPoint>& front, const std::vector<ParetoPoint>& other,
                      double tol) {
  for (const auto& q : other) {
    if (!q.ok) continue;
    const bool covered = std::any_of(front.begin(), front.end(), [&](const ParetoPoint& p) {
      return p.ok && p.j_value <= q.j_value + tol && p.welfare >= q.welfare - tol;
    });
    if (!covered) return false;
  }
  return true;
}

void write_pareto_csv(std::ostream& out, const std::vector<ParetoPoint>& points) {
  out << "method,lambda,J,welfare,auc\n";
  for (const auto& p : points) {
    if (!p.ok) continue;
    out << to_string(p.method) << ',' << io::format_real(p.lambda) << ','
        << io::format_real(p.j_value) << ',' << io::format_real(p.welfare) << ','
        << (std::isnan(p.auc) ? std::string("nan") : io::format_real(p.auc)) << '\n';
  }
}

}  // namespace glgp
