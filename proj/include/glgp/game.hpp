#pragma once

// Linear-quadratic network game with strategic complements. Agent i plays
// y_i >= 0 against the payoff -y_i^2/2 + y_i (b_i + sum_j W_ij f(y_j)); its best
// response is T_i(y) = max(0, b_i + (W f(y))_i) and the Nash equilibrium is the
// fixed point of T.

#include <string>
#include <string_view>

#include "glgp/graph.hpp"

namespace glgp {

enum class InteractionKind { identity, log1p };

std::string_view to_string(InteractionKind kind);
InteractionKind parse_interaction(std::string_view name);

/// Concave, nondecreasing, 1-Lipschitz interaction f with f(0) = 0 and
/// f(x) <= x on x >= 0.
class InteractionFunction {
 public:
  constexpr explicit InteractionFunction(InteractionKind kind = InteractionKind::identity)
      : kind_(kind) {}

  InteractionKind kind() const noexcept { return kind_; }
  double value(double x) const;
  double derivative(double x) const;
  VectorXd value(const VectorXd& y) const;
  VectorXd derivative(const VectorXd& y) const;

 private:
  InteractionKind kind_;
};

class GameSpec {
 public:
  GameSpec(VectorXd b, InteractionFunction f, double c);

  const VectorXd& benefit() const noexcept { return b_; }
  const InteractionFunction& interaction() const noexcept { return f_; }
  double budget() const noexcept { return c_; }
  Eigen::Index size() const noexcept { return b_.size(); }

 private:
  VectorXd b_;
  InteractionFunction f_;
  double c_;
};

struct Equilibrium {
  VectorXd y;
  double residual;  // ||y - T(y)||_2
  int iterations;
};

inline constexpr double kNeTolerance = 1e-12;
inline constexpr int kNeMaxIterations = 100000;

/// T(y; W) = max(0, b + W f(y)).
VectorXd best_response(const VectorXd& y, const MatrixXd& w, const GameSpec& game);

/// Fixed-point iteration y <- T(y; W) from y = b until ||y - T(y)|| <= tol.
/// Throws ConvergenceError (last residual attached) at the iteration cap.
Equilibrium solve_ne_fixed_point(const MatrixXd& w, const GameSpec& game,
                                 double tol = kNeTolerance, int max_iter = kNeMaxIterations);

/// Linear interaction only: y = (I - W)^{-1} b.
VectorXd solve_ne_closed_form_linear(const MatrixXd& w, const VectorXd& b);

/// Total social welfare 1'y_NE(W).
double welfare(const MatrixXd& w, const GameSpec& game, double tol = kNeTolerance);

/// J_y T = W Diag(f'(y)), valid where the clamp is inactive. The W-Jacobian
/// f(y)' (x) I is never formed; callers use f(y) directly.
MatrixXd jacobian_y_T(const VectorXd& y, const MatrixXd& w, const GameSpec& game);

}  // namespace glgp
