#include "glgp/hypergradient.hpp"

#include <stdexcept>

#include "glgp/numerics.hpp"
#include "glgp/objective.hpp"

namespace glgp {

MatrixXd hypergrad(const MatrixXd& w, const VectorXd& y, const DistanceMatrix& d, double beta,
                   double lambda, const GameSpec& game) {
  MatrixXd grad = grad_J(w, d, beta);
  if (lambda == 0.0) return grad;
  const Eigen::Index n = w.rows();
  if (y.size() != n) throw std::invalid_argument("hypergrad: y has wrong length");
  const InteractionFunction& f = game.interaction();
  const MatrixXd system =
      MatrixXd::Identity(n, n) - f.derivative(y).asDiagonal() * w.transpose();
  const VectorXd v = linear_solve(system, VectorXd::Ones(n));
  grad.noalias() -= lambda * v * f.value(y).transpose();
  return grad;
}

double ell(const MatrixXd& w, const DistanceMatrix& d, double beta, double lambda,
           const GameSpec& game, double ne_tol) {
  const double j = objective_J(w, d, beta);
  if (lambda == 0.0) return j;
  return j - lambda * welfare(w, game, ne_tol);
}

}  // namespace glgp
