#pragma once

// Random instance builders shared by the test binaries.

#include <Eigen/Dense>

#include "glgp/graph.hpp"
#include "glgp/projection.hpp"
#include "glgp/rng.hpp"

namespace glgp::testing {

inline MatrixXd uniform_matrix(RngStream& rng, Eigen::Index rows, Eigen::Index cols,
                               double lo = 0.0, double hi = 1.0) {
  MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = lo + (hi - lo) * rng.uniform();
  }
  return m;
}

inline VectorXd uniform_vector(RngStream& rng, Eigen::Index n, double lo = 0.0, double hi = 1.0) {
  return uniform_matrix(rng, n, 1, lo, hi);
}

// Strictly positive off-diagonal entries, rows summing to c.
inline MatrixXd random_interior_S(RngStream& rng, Eigen::Index n, double c) {
  MatrixXd w = uniform_matrix(rng, n, n, 0.1, 1.0);
  w.diagonal().setZero();
  for (Eigen::Index i = 0; i < n; ++i) w.row(i) *= c / w.row(i).sum();
  return w;
}

// Sparse-ish point of S: some entries exactly zero.
inline MatrixXd random_S(RngStream& rng, Eigen::Index n, double c) {
  return project_to_S_matrix(uniform_matrix(rng, n, n, -1.0, 1.0), c);
}

inline DistanceMatrix random_distance(RngStream& rng, Eigen::Index n, Eigen::Index m = 8) {
  MatrixXd x(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = rng.normal();
  }
  return distance_matrix(GraphSignals(x));
}

}  // namespace glgp::testing
