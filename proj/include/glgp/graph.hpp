#pragma once

#include <Eigen/Dense>

#include "glgp/numerics.hpp"

namespace glgp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kRowSumTolerance = 1e-9;

/// Weighted, possibly non-symmetric adjacency: W >= 0 with zero diagonal.
/// W(i, j) != 0 encodes an edge from j into i.
class Adjacency {
 public:
  Adjacency() = default;
  explicit Adjacency(MatrixXd w);

  Eigen::Index size() const noexcept { return w_.rows(); }
  const MatrixXd& weights() const noexcept { return w_; }
  bool is_symmetric(double tol = 0.0) const;
  bool is_binary() const;
  // Number of nonzero off-diagonal entries.
  Eigen::Index nonzeros() const;

 private:
  MatrixXd w_;
};

/// Element of S = {W >= 0, diag(W) = 0, W1 = c1} with 0 < c < 1.
class FeasibleAdjacency {
 public:
  FeasibleAdjacency(MatrixXd w, double c);

  /// Off-diagonal entries c / (N - 1).
  static FeasibleAdjacency uniform(Eigen::Index n, double c);

  Eigen::Index size() const noexcept { return adj_.size(); }
  const MatrixXd& weights() const noexcept { return adj_.weights(); }
  double budget() const noexcept { return c_; }
  const Adjacency& adjacency() const noexcept { return adj_; }
  operator const Adjacency&() const noexcept { return adj_; }

 private:
  Adjacency adj_;
  double c_;
};

/// N x M observations; column m is the m-th graph signal, row i the time
/// series of node i.
class GraphSignals {
 public:
  GraphSignals() = default;
  explicit GraphSignals(MatrixXd x);

  Eigen::Index nodes() const noexcept { return x_.rows(); }
  Eigen::Index samples() const noexcept { return x_.cols(); }
  const MatrixXd& values() const noexcept { return x_; }

 private:
  MatrixXd x_;
};

/// D(i, j) = ||x_i - x_j||^2 / (2M) over signal rows.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(MatrixXd d);

  Eigen::Index size() const noexcept { return d_.rows(); }
  const MatrixXd& values() const noexcept { return d_; }

 private:
  MatrixXd d_;
};

DistanceMatrix distance_matrix(const GraphSignals& x);

/// b = max(v1, 0) / 1'max(v1, 0) with v1 the top eigenvector of D.
VectorXd marginal_benefit_from_data(const DistanceMatrix& d);

}  // namespace glgp
