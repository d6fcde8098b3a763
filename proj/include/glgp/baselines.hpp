#pragma once

// Single-level baselines over S.
//
// Smooth-GL minimizes J(W) = <W, D> + beta ||W||^2 alone. Completing the square,
// J(W) = beta ||W + D/(2 beta)||^2 + const, so the minimizer is Proj_S(-D/(2 beta)).
//
// The linearized surrogate replaces the welfare by its first-order expansion
// 1'W b around W = 0: minimize J(W) - lambda 1'W b. Again completing the square,
// that is beta ||W - (lambda 1 b' - D)/(2 beta)||^2 + const.

#include "glgp/graph.hpp"

namespace glgp {

struct SmoothGlOptions {
  // 0 selects the closed form; otherwise projected gradient with at most this
  // many steps.
  int max_iter = 0;
  double tol = 1e-10;
};

FeasibleAdjacency solve_smooth_gl(const DistanceMatrix& d, double beta, double c,
                                  const SmoothGlOptions& options = {});

FeasibleAdjacency solve_linear_approx(const DistanceMatrix& d, double beta, double c,
                                      double lambda, const VectorXd& b);

struct KktSolution {
  FeasibleAdjacency w;
  VectorXd eta;  // row-sum multipliers
};

/// W_ij = max(0, lambda b_j + eta_i - D_ij) / (2 beta) with eta_i chosen per
/// row so that the row sums equal c.
KktSolution kkt_closed_form(const DistanceMatrix& d, double beta, double c, double lambda,
                            const VectorXd& b);

}  // namespace glgp
