#include "glgp/game.hpp"

#include <cmath>
#include <stdexcept>

#include "glgp/error.hpp"
#include "glgp/numerics.hpp"

namespace glgp {

std::string_view to_string(InteractionKind kind) {
  switch (kind) {
    case InteractionKind::identity:
      return "identity";
    case InteractionKind::log1p:
      return "log1p";
  }
  return "identity";
}

InteractionKind parse_interaction(std::string_view name) {
  if (name == "identity" || name == "linear") return InteractionKind::identity;
  if (name == "log1p" || name == "log") return InteractionKind::log1p;
  throw std::invalid_argument("unknown interaction function '" + std::string(name) + "'");
}

double InteractionFunction::value(double x) const {
  return kind_ == InteractionKind::identity ? x : std::log1p(x);
}

double InteractionFunction::derivative(double x) const {
  return kind_ == InteractionKind::identity ? 1.0 : 1.0 / (1.0 + x);
}

VectorXd InteractionFunction::value(const VectorXd& y) const {
  if (kind_ == InteractionKind::identity) return y;
  return y.unaryExpr([](double v) { return std::log1p(v); });
}

VectorXd InteractionFunction::derivative(const VectorXd& y) const {
  if (kind_ == InteractionKind::identity) return VectorXd::Ones(y.size());
  return (1.0 + y.array()).inverse().matrix();
}

GameSpec::GameSpec(VectorXd b, InteractionFunction f, double c)
    : b_(std::move(b)), f_(f), c_(c) {
  if (!b_.allFinite() || (b_.array() < 0.0).any()) {
    throw std::invalid_argument("GameSpec: marginal benefits must be finite and nonnegative");
  }
  if (!(c_ > 0.0 && c_ < 1.0)) throw std::invalid_argument("GameSpec: c must lie in (0, 1)");
}

namespace {

void check_shapes(const MatrixXd& w, Eigen::Index n, const char* who) {
  if (w.rows() != n || w.cols() != n) {
    throw std::invalid_argument(std::string(who) + ": expected " + std::to_string(n) + "x" +
                                std::to_string(n) + " weights, got " + std::to_string(w.rows()) +
                                "x" + std::to_string(w.cols()));
  }
}

}  // namespace

VectorXd best_response(const VectorXd& y, const MatrixXd& w, const GameSpec& game) {
  check_shapes(w, game.size(), "best_response");
  if (y.size() != game.size()) throw std::invalid_argument("best_response: y has wrong length");
  // With b, W, f >= 0 the clamp never binds; kept for rounding.
  return (game.benefit() + w * game.interaction().value(y)).cwiseMax(0.0);
}

Equilibrium solve_ne_fixed_point(const MatrixXd& w, const GameSpec& game, double tol,
                                 int max_iter) {
  check_shapes(w, game.size(), "solve_ne_fixed_point");
  VectorXd y = game.benefit();
  double residual = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    VectorXd next = best_response(y, w, game);
    residual = (next - y).norm();
    if (!std::isfinite(residual)) break;
    if (residual <= tol) return {std::move(y), residual, it};
    y = std::move(next);
  }
  throw ConvergenceError("solve_ne_fixed_point: residual " + std::to_string(residual) +
                             " above tolerance after " + std::to_string(max_iter) +
                             " iterations",
                         residual);
}

VectorXd solve_ne_closed_form_linear(const MatrixXd& w, const VectorXd& b) {
  check_shapes(w, b.size(), "solve_ne_closed_form_linear");
  const Eigen::Index n = b.size();
  return linear_solve(MatrixXd::Identity(n, n) - w, b);
}

double welfare(const MatrixXd& w, const GameSpec& game, double tol) {
  return solve_ne_fixed_point(w, game, tol).y.sum();
}

MatrixXd jacobian_y_T(const VectorXd& y, const MatrixXd& w, const GameSpec& game) {
  check_shapes(w, game.size(), "jacobian_y_T");
  return w * game.interaction().derivative(y).asDiagonal();
}

}  // namespace glgp
