#pragma once

// Gradient of the single-level objective l(W) = J(W) - lambda 1'y_NE(W).
//
// Differentiating y = b + W f(y) gives dy = (I - W Diag(f'(y)))^{-1} dW f(y), so
// d(1'y) = v' dW f(y) with (I - Diag(f'(y)) W') v = 1. The welfare gradient is
// the outer product v f(y)'; no Kronecker product is ever formed. This assumes
// the clamp in T is inactive, which holds whenever b >= 0.

#include "glgp/game.hpp"
#include "glgp/graph.hpp"

namespace glgp {

/// grad_J(W) - lambda v f(y)', evaluated at the supplied y (exact or an
/// inexact lower-level iterate). Diagonal entries are left as computed.
MatrixXd hypergrad(const MatrixXd& w, const VectorXd& y, const DistanceMatrix& d, double beta,
                   double lambda, const GameSpec& game);

/// l(W) = J(W) - lambda Wel(W), with the equilibrium solved to `ne_tol`.
double ell(const MatrixXd& w, const DistanceMatrix& d, double beta, double lambda,
           const GameSpec& game, double ne_tol = kNeTolerance);

}  // namespace glgp
