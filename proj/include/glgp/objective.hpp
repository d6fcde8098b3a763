#pragma once

// Smooth-signal data fidelity J(W; X) = <W, D> + beta ||W||_F^2, with the
// 1/(2M) factor already folded into D.

#include "glgp/graph.hpp"

namespace glgp {

double objective_J(const MatrixXd& w, const DistanceMatrix& d, double beta);

/// D + 2 beta W.
MatrixXd grad_J(const MatrixXd& w, const DistanceMatrix& d, double beta);

}  // namespace glgp
