#pragma once

// Two-timescale gradient method for
//   min_{W in S} l(W) = J(W) - lambda 1'y_NE(W).
// Each step relaxes the equilibrium estimate once and takes one projected
// hypergradient step on W evaluated at that estimate:
//   y+ = y + alpha (T(y; W) - y),   W+ = Proj_S(W - gamma hypergrad(W, y+)).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glgp/error.hpp"
#include "glgp/game.hpp"
#include "glgp/graph.hpp"

namespace glgp {

enum class StepMode { manual, theory };

std::string_view to_string(StepMode mode);
StepMode parse_step_mode(std::string_view name);

struct LearnConfig {
  double lambda = 0.0;
  double beta = 200.0;
  double c = 0.95;
  double alpha = 0.5;
  double gamma = 0.003;
  int max_iter = 700;
  double ne_tol = kNeTolerance;
  std::uint64_t seed = 0;
  InteractionKind f_kind = InteractionKind::identity;
  StepMode step_mode = StepMode::manual;
  // Stop once the tracked stationarity drops below this value (0 = never).
  double stationarity_stop = 0.0;
  // Every k-th iteration also re-solve the equilibrium and record the exact
  // stationarity and l(W) (0 = never).
  int exact_stationarity_every = 0;

  /// Every violated constraint, one message each.
  std::vector<std::string> validate() const;
  /// Throws std::invalid_argument listing all violations.
  void require_valid() const;
};

struct TheoryConstants {
  double alpha;      // (1 - c) / (1 + c)^2
  double lipschitz_y;     // L_y: Lipschitz constant of W -> y_NE(W)
  double iterate_bound;   // B: bound on ||y^k||
  double lipschitz_phi_y; // L: Lipschitz constant of hypergrad in y on ||y|| <= B
  double lipschitz_ell;   // L_l: Lipschitz constant of grad l
  double gamma_cap;       // min{3 / (4 L_l), (1 - c) alpha / (4 L L_y)}
};

/// Step sizes and Lipschitz constants from the convergence analysis.
/// `y_init_gap` is ||y^1 - y_NE(W^0)||.
TheoryConstants theory_constants(Eigen::Index n, const VectorXd& b, double c, double lambda,
                                 double beta, double y_init_gap);

/// ||gamma^{-1} (W - Proj_S(W - gamma grad))||_F^2.
double stationarity(const MatrixXd& w, double gamma, const MatrixXd& grad, double c);

struct StepResult {
  MatrixXd w;
  VectorXd y;
  MatrixXd gradient;  // hypergradient at (W^k, y^{k+1})
};

StepResult ttgd_step(const MatrixXd& w, const VectorXd& y, double alpha, double gamma,
                     const LearnConfig& config, const DistanceMatrix& d, const GameSpec& game);

struct LearnTrace {
  // Phi(W^k, y^{k+1}) = J(W^k) - lambda 1'y^{k+1}.
  std::vector<double> ell_value;
  // ||gamma^{-1}(W^k - W^{k+1})||^2, i.e. the stationarity measure with the
  // gradient taken at the current lower iterate.
  std::vector<double> stationarity;
  std::vector<double> best_stationarity;
  // ||y^{k+1} - T(y^{k+1}; W^k)||.
  std::vector<double> ne_residual;
  // Exact measure and l(W^k) at iterations selected by exact_stationarity_every.
  std::vector<int> exact_iterations;
  std::vector<double> exact_stationarity;
  std::vector<double> exact_ell;

  MatrixXd w;
  VectorXd y;
  int iterations = 0;
  double alpha = 0.0;
  double gamma = 0.0;
  bool stopped_early = false;
};

/// A step failed; the trace up to the failure is attached.
class TtgdAborted : public NumericalError {
 public:
  TtgdAborted(const std::string& what, LearnTrace partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const LearnTrace& partial() const noexcept { return partial_; }

 private:
  LearnTrace partial_;
};

/// Runs max_iter steps from W^0 (default: uniform in S) and y^0 = b.
LearnTrace run_ttgd(const LearnConfig& config, const DistanceMatrix& d, const VectorXd& b,
                    const std::optional<MatrixXd>& w0 = std::nullopt);

}  // namespace glgp
