#include "glgp/graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace glgp {

Adjacency::Adjacency(MatrixXd w) : w_(std::move(w)) {
  if (w_.rows() != w_.cols()) {
    throw std::invalid_argument("Adjacency: matrix must be square");
  }
  if (!w_.allFinite()) throw std::invalid_argument("Adjacency: non-finite weight");
  if ((w_.array() < 0.0).any()) throw std::invalid_argument("Adjacency: negative weight");
  for (Eigen::Index i = 0; i < w_.rows(); ++i) {
    if (w_(i, i) != 0.0) {
      throw std::invalid_argument("Adjacency: self-loop at node " + std::to_string(i));
    }
  }
}

bool Adjacency::is_symmetric(double tol) const {
  return (w_ - w_.transpose()).cwiseAbs().maxCoeff() <= tol;
}

bool Adjacency::is_binary() const {
  return (w_.array() == 0.0 || w_.array() == 1.0).all();
}

Eigen::Index Adjacency::nonzeros() const { return (w_.array() != 0.0).count(); }

FeasibleAdjacency::FeasibleAdjacency(MatrixXd w, double c) : adj_(std::move(w)), c_(c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw std::invalid_argument("FeasibleAdjacency: budget c must lie in (0, 1)");
  }
  if (adj_.size() < 2) throw std::invalid_argument("FeasibleAdjacency: need at least 2 nodes");
  const VectorXd sums = adj_.weights().rowwise().sum();
  for (Eigen::Index i = 0; i < sums.size(); ++i) {
    if (std::abs(sums[i] - c) > kRowSumTolerance) {
      throw std::invalid_argument("FeasibleAdjacency: row " + std::to_string(i) + " sums to " +
                                  std::to_string(sums[i]) + ", expected " + std::to_string(c));
    }
  }
}

FeasibleAdjacency FeasibleAdjacency::uniform(Eigen::Index n, double c) {
  if (n < 2) throw std::invalid_argument("FeasibleAdjacency::uniform: need n >= 2");
  MatrixXd w = MatrixXd::Constant(n, n, c / static_cast<double>(n - 1));
  w.diagonal().setZero();
  return FeasibleAdjacency(std::move(w), c);
}

GraphSignals::GraphSignals(MatrixXd x) : x_(std::move(x)) {
  if (!x_.allFinite()) throw std::invalid_argument("GraphSignals: non-finite observation");
}

DistanceMatrix::DistanceMatrix(MatrixXd d) : d_(std::move(d)) {
  if (d_.rows() != d_.cols()) throw std::invalid_argument("DistanceMatrix: must be square");
  if (!d_.allFinite() || (d_.array() < 0.0).any()) {
    throw std::invalid_argument("DistanceMatrix: entries must be finite and nonnegative");
  }
  if (d_.size() > 0 && (d_.diagonal().array() != 0.0).any()) {
    throw std::invalid_argument("DistanceMatrix: diagonal must be zero");
  }
  if (d_.size() > 0 && (d_ - d_.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("DistanceMatrix: must be symmetric");
  }
}

DistanceMatrix distance_matrix(const GraphSignals& x) {
  const Eigen::Index n = x.nodes();
  const Eigen::Index m = x.samples();
  if (m < 1 || n < 1) throw std::invalid_argument("distance_matrix: empty signal set");
  const MatrixXd& v = x.values();
  MatrixXd d = MatrixXd::Zero(n, n);
  const double scale = 1.0 / (2.0 * static_cast<double>(m));
  // Direct differences keep D exactly symmetric with an exact zero diagonal.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dij = (v.row(i) - v.row(j)).squaredNorm() * scale;
      d(i, j) = dij;
      d(j, i) = dij;
    }
  }
  return DistanceMatrix(std::move(d));
}

VectorXd marginal_benefit_from_data(const DistanceMatrix& d) {
  const auto top = dominant_eigenvector(d.values());
  VectorXd b = top.vector.cwiseMax(0.0);
  const double total = b.sum();
  if (!(total > 0.0)) {
    throw NumericalError("marginal_benefit_from_data: top eigenvector has no positive mass");
  }
  return b / total;
}

}  // namespace glgp
