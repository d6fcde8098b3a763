#include "glgp/objective.hpp"

#include <stdexcept>

namespace glgp {
namespace {

void check(const MatrixXd& w, const DistanceMatrix& d, double beta) {
  if (w.rows() != d.size() || w.cols() != d.size()) {
    throw std::invalid_argument("objective: weight and distance shapes differ");
  }
  if (!(beta > 0.0)) throw std::invalid_argument("objective: beta must be positive");
}

}  // namespace

double objective_J(const MatrixXd& w, const DistanceMatrix& d, double beta) {
  check(w, d, beta);
  return w.cwiseProduct(d.values()).sum() + beta * w.squaredNorm();
}

MatrixXd grad_J(const MatrixXd& w, const DistanceMatrix& d, double beta) {
  check(w, d, beta);
  return d.values() + 2.0 * beta * w;
}

}  // namespace glgp
