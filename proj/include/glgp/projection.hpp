#pragma once

// Euclidean projection onto S = {W >= 0, diag(W) = 0, W1 = c1}.
//
// The constraints couple entries only within a row: the diagonal is pinned to
// zero and each row carries its own sum constraint. The squared distance
// ||W - V||_F^2 is a sum of per-row terms, so the joint projection is obtained
// by projecting each row's off-diagonal part onto the scaled simplex
// {w >= 0, 1'w = c} independently.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "glgp/graph.hpp"
#include "glgp/numerics.hpp"

namespace glgp {

/// argmin ||w - v||^2 s.t. w >= 0, 1'w = c, by sort-and-threshold
/// (water-filling): w_i = max(0, v_i - tau).
template <typename Derived>
Vec<typename Derived::Scalar> project_row_simplex(const Eigen::MatrixBase<Derived>& v,
                                                  typename Derived::Scalar c) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = v.size();
  if (k < 1) throw std::invalid_argument("project_row_simplex: empty vector");
  if (!(c > Scalar(0))) throw std::invalid_argument("project_row_simplex: c must be positive");

  // Points already on the simplex (to rounding) are returned as-is, which
  // makes the projection exactly idempotent. The water-filling output of a
  // row with entries of order one carries sum errors of order one ulp even
  // when c is small, hence the floor of 1 in the scale.
  if ((v.array() >= Scalar(0)).all()) {
    const Scalar sum = v.sum();
    const Scalar tol = Scalar(4) * Scalar(k) * std::numeric_limits<Scalar>::epsilon() *
                       std::max({c, sum, Scalar(1)});
    if (std::abs(sum - c) <= tol) return v;
  }

  std::vector<Scalar> sorted;
  sorted.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) sorted.push_back(v(i));
  std::sort(sorted.begin(), sorted.end(), std::greater<Scalar>());

  Scalar cumulative = Scalar(0);
  Scalar tau = Scalar(0);
  for (Eigen::Index r = 0; r < k; ++r) {
    cumulative += sorted[static_cast<std::size_t>(r)];
    const Scalar candidate = (cumulative - c) / Scalar(r + 1);
    // The active set is the longest prefix whose smallest element stays
    // above the threshold it induces.
    if (sorted[static_cast<std::size_t>(r)] - candidate > Scalar(0)) tau = candidate;
  }
  return (v.array() - tau).cwiseMax(Scalar(0)).matrix();
}

/// Projection of an arbitrary square matrix onto S; returns the raw matrix.
template <typename Derived>
Mat<typename Derived::Scalar> project_to_S_matrix(const Eigen::MatrixBase<Derived>& w,
                                                  typename Derived::Scalar c) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = w.rows();
  if (w.cols() != n) throw std::invalid_argument("project_to_S: matrix must be square");
  if (n < 2) throw std::invalid_argument("project_to_S: need at least 2 nodes");
  Mat<Scalar> out = Mat<Scalar>::Zero(n, n);
  Vec<Scalar> row(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0, k = 0; j < n; ++j) {
      if (j != i) row(k++) = w(i, j);
    }
    const Vec<Scalar> p = project_row_simplex(row, c);
    for (Eigen::Index j = 0, k = 0; j < n; ++j) {
      if (j != i) out(i, j) = p(k++);
    }
  }
  return out;
}

inline FeasibleAdjacency project_to_S(const MatrixXd& w, double c) {
  return FeasibleAdjacency(project_to_S_matrix(w, c), c);
}

}  // namespace glgp
