#include "glgp/ttgd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "glgp/hypergradient.hpp"
#include "glgp/objective.hpp"
#include "glgp/projection.hpp"

namespace glgp {

std::string_view to_string(StepMode mode) {
  return mode == StepMode::manual ? "manual" : "theory";
}

StepMode parse_step_mode(std::string_view name) {
  if (name == "manual") return StepMode::manual;
  if (name == "theory") return StepMode::theory;
  throw std::invalid_argument("unknown step mode '" + std::string(name) + "'");
}

std::vector<std::string> LearnConfig::validate() const {
  std::vector<std::string> errors;
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) errors.push_back("lambda must be >= 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) errors.push_back("beta must be > 0");
  if (!(c > 0.0 && c < 1.0)) errors.push_back("c must lie in (0, 1)");
  if (step_mode == StepMode::manual) {
    if (!(alpha > 0.0 && alpha <= 1.0)) errors.push_back("alpha must lie in (0, 1]");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) errors.push_back("gamma must be > 0");
    if (lambda > 0.0 && gamma > 0.0 && alpha > 0.0 && !(gamma < alpha)) {
      errors.push_back("gamma must be smaller than alpha (two-timescale ordering)");
    }
  }
  if (max_iter < 0) errors.push_back("iteration budget must be >= 0");
  if (!(ne_tol > 0.0)) errors.push_back("ne_tol must be > 0");
  if (stationarity_stop < 0.0) errors.push_back("stationarity_stop must be >= 0");
  if (exact_stationarity_every < 0) errors.push_back("exact_stationarity_every must be >= 0");
  return errors;
}

void LearnConfig::require_valid() const {
  const auto errors = validate();
  if (errors.empty()) return;
  std::ostringstream msg;
  msg << "invalid learn configuration:";
  for (const auto& e : errors) msg << "\n  - " << e;
  throw std::invalid_argument(msg.str());
}

TheoryConstants theory_constants(Eigen::Index n, const VectorXd& b, double c, double lambda,
                                 double beta, double y_init_gap) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("theory_constants: c must lie in (0, 1)");
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double nn = static_cast<double>(n);
  const double b_inf = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
  const double one_minus_c = 1.0 - c;

  TheoryConstants k{};
  k.alpha = one_minus_c / ((1.0 + c) * (1.0 + c));
  k.lipschitz_y = sqrt_n * b_inf / (one_minus_c * one_minus_c);
  const double drift = 2.0 / (one_minus_c * k.alpha) - 1.0;
  k.iterate_bound =
      sqrt_n * b_inf / one_minus_c +
      std::sqrt((1.0 - k.alpha * one_minus_c / 2.0) * y_init_gap * y_init_gap +
                2.0 * c * k.lipschitz_y * k.lipschitz_y * drift);
  k.lipschitz_phi_y = sqrt_n * lambda / one_minus_c +
                      lambda * sqrt_n * k.iterate_bound * c / (one_minus_c * one_minus_c);
  const double cube = one_minus_c * one_minus_c * one_minus_c;
  k.lipschitz_ell = (sqrt_n * lambda / one_minus_c + lambda * nn * b_inf * c / cube) *
                        (sqrt_n * b_inf / (one_minus_c * one_minus_c)) +
                    2.0 * beta + lambda * nn * b_inf / cube;
  const double first = 3.0 / (4.0 * k.lipschitz_ell);
  const double denom = 4.0 * k.lipschitz_phi_y * k.lipschitz_y;
  const double second =
      denom > 0.0 ? one_minus_c * k.alpha / denom : std::numeric_limits<double>::infinity();
  k.gamma_cap = std::min(first, second);
  return k;
}

double stationarity(const MatrixXd& w, double gamma, const MatrixXd& grad, double c) {
  const MatrixXd moved = project_to_S_matrix(MatrixXd(w - gamma * grad), c);
  return ((w - moved) / gamma).squaredNorm();
}

StepResult ttgd_step(const MatrixXd& w, const VectorXd& y, double alpha, double gamma,
                     const LearnConfig& config, const DistanceMatrix& d, const GameSpec& game) {
  StepResult out;
  out.y = y + alpha * (best_response(y, w, game) - y);
  out.gradient = hypergrad(w, out.y, d, config.beta, config.lambda, game);
  out.w = project_to_S_matrix(MatrixXd(w - gamma * out.gradient), config.c);
  return out;
}

LearnTrace run_ttgd(const LearnConfig& config, const DistanceMatrix& d, const VectorXd& b,
                    const std::optional<MatrixXd>& w0) {
  config.require_valid();
  const Eigen::Index n = d.size();
  if (b.size() != n) throw std::invalid_argument("run_ttgd: b has wrong length");
  const GameSpec game(b, InteractionFunction(config.f_kind), config.c);

  MatrixXd w = w0 ? FeasibleAdjacency(*w0, config.c).weights()
                  : FeasibleAdjacency::uniform(n, config.c).weights();
  VectorXd y = b;

  LearnTrace trace;
  trace.alpha = config.alpha;
  trace.gamma = config.gamma;
  if (config.step_mode == StepMode::theory) {
    const double alpha = theory_constants(n, b, config.c, config.lambda, config.beta, 0.0).alpha;
    const VectorXd y1 = y + alpha * (best_response(y, w, game) - y);
    const VectorXd y_bar0 = solve_ne_fixed_point(w, game, config.ne_tol).y;
    const TheoryConstants k =
        theory_constants(n, b, config.c, config.lambda, config.beta, (y1 - y_bar0).norm());
    trace.alpha = k.alpha;
    trace.gamma = k.gamma_cap;
  }
  const double alpha = trace.alpha;
  const double gamma = trace.gamma;

  const auto reserve = static_cast<std::size_t>(config.max_iter);
  trace.ell_value.reserve(reserve);
  trace.stationarity.reserve(reserve);
  trace.best_stationarity.reserve(reserve);
  trace.ne_residual.reserve(reserve);

  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < config.max_iter; ++k) {
    StepResult step;
    try {
      if (config.exact_stationarity_every > 0 && k % config.exact_stationarity_every == 0) {
        const Equilibrium eq = solve_ne_fixed_point(w, game, config.ne_tol);
        const MatrixXd exact_grad = hypergrad(w, eq.y, d, config.beta, config.lambda, game);
        trace.exact_iterations.push_back(k);
        trace.exact_stationarity.push_back(stationarity(w, gamma, exact_grad, config.c));
        trace.exact_ell.push_back(objective_J(w, d, config.beta) - config.lambda * eq.y.sum());
      }
      step = ttgd_step(w, y, alpha, gamma, config, d, game);
    } catch (const std::exception& e) {
      trace.w = w;
      trace.y = y;
      trace.iterations = k;
      throw TtgdAborted(std::string("run_ttgd: iteration ") + std::to_string(k) + ": " + e.what(),
                        std::move(trace));
    }

    const double measure = ((w - step.w) / gamma).squaredNorm();
    best = std::min(best, measure);
    trace.ell_value.push_back(objective_J(w, d, config.beta) - config.lambda * step.y.sum());
    trace.stationarity.push_back(measure);
    trace.best_stationarity.push_back(best);
    trace.ne_residual.push_back((step.y - best_response(step.y, w, game)).norm());

    w = std::move(step.w);
    y = std::move(step.y);
    trace.iterations = k + 1;
    if (config.stationarity_stop > 0.0 && measure < config.stationarity_stop) {
      trace.stopped_early = true;
      break;
    }
  }
  trace.w = std::move(w);
  trace.y = std::move(y);
  return trace;
}

}  // namespace glgp
