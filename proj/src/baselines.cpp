#include "glgp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "glgp/error.hpp"
#include "glgp/objective.hpp"
#include "glgp/projection.hpp"

namespace glgp {

namespace {

void check_inputs(const DistanceMatrix& d, double beta, double c, const char* who) {
  if (d.size() < 2) throw std::invalid_argument(std::string(who) + ": need at least 2 nodes");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument(std::string(who) + ": beta must be > 0");
  }
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument(std::string(who) + ": c must lie in (0, 1)");
}

}  // namespace

FeasibleAdjacency solve_smooth_gl(const DistanceMatrix& d, double beta, double c,
                                  const SmoothGlOptions& options) {
  check_inputs(d, beta, c, "solve_smooth_gl");
  if (options.max_iter <= 0) return project_to_S(-d.values() / (2.0 * beta), c);

  // J has curvature 2 beta, so the step 1/(2 beta) lands on the closed form in
  // one move; half of it keeps the path an honest iteration.
  const double step = 1.0 / (4.0 * beta);
  MatrixXd w = FeasibleAdjacency::uniform(d.size(), c).weights();
  for (int k = 0; k < options.max_iter; ++k) {
    MatrixXd next = project_to_S_matrix(MatrixXd(w - step * grad_J(w, d, beta)), c);
    const double moved = (next - w).norm();
    w = std::move(next);
    if (moved <= options.tol) return FeasibleAdjacency(std::move(w), c);
  }
  throw ConvergenceError("solve_smooth_gl: projected gradient did not reach tolerance", 0.0);
}

FeasibleAdjacency solve_linear_approx(const DistanceMatrix& d, double beta, double c,
                                      double lambda, const VectorXd& b) {
  check_inputs(d, beta, c, "solve_linear_approx");
  if (b.size() != d.size()) throw std::invalid_argument("solve_linear_approx: b has wrong length");
  if (!(lambda >= 0.0)) throw std::invalid_argument("solve_linear_approx: lambda must be >= 0");
  const Eigen::Index n = d.size();
  const MatrixXd target =
      (lambda * VectorXd::Ones(n) * b.transpose() - d.values()) / (2.0 * beta);
  return project_to_S(target, c);
}

KktSolution kkt_closed_form(const DistanceMatrix& d, double beta, double c, double lambda,
                            const VectorXd& b) {
  check_inputs(d, beta, c, "kkt_closed_form");
  if (b.size() != d.size()) throw std::invalid_argument("kkt_closed_form: b has wrong length");
  if (!(lambda >= 0.0)) throw std::invalid_argument("kkt_closed_form: lambda must be >= 0");
  const Eigen::Index n = d.size();
  const double two_beta = 2.0 * beta;

  MatrixXd w = MatrixXd::Zero(n, n);
  VectorXd eta(n);
  std::vector<double> a(static_cast<std::size_t>(n - 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0, k = 0; j < n; ++j) {
      if (j != i) a[static_cast<std::size_t>(k++)] = lambda * b(j) - d.values()(i, j);
    }
    const double a_max = *std::max_element(a.begin(), a.end());
    auto row_sum = [&](double e) {
      double s = 0.0;
      for (double v : a) s += std::max(0.0, v + e);
      return s / two_beta;
    };

    // At lo every term vanishes; at hi the largest term alone reaches c.
    double lo = -a_max;
    double hi = two_beta * c - a_max;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (row_sum(mid) < c ? lo : hi) = mid;
    }
    double e = 0.5 * (lo + hi);
    if (std::abs(row_sum(e) - c) > kRowSumTolerance) {
      throw ConvergenceError("kkt_closed_form: bisection failed on row " + std::to_string(i),
                             row_sum(e) - c);
    }
    // Bisection pins the active set; solving the linear row-sum equation on it
    // removes the residual bisection error.
    double active_sum = 0.0;
    int active = 0;
    for (double v : a) {
      if (v + e > 0.0) {
        active_sum += v;
        ++active;
      }
    }
    if (active > 0) {
      const double polished = (two_beta * c - active_sum) / active;
      bool same_set = true;
      for (double v : a) {
        const bool was = v + e > 0.0;
        const bool now = v + polished > 0.0;
        if (was != now) same_set = false;
      }
      if (same_set) e = polished;
    }
    eta(i) = e;
    for (Eigen::Index j = 0, k = 0; j < n; ++j) {
      if (j != i) w(i, j) = std::max(0.0, a[static_cast<std::size_t>(k++)] + e) / two_beta;
    }
  }
  const double err = (w.rowwise().sum().array() - c).abs().maxCoeff();
  if (err > kRowSumTolerance) {
    throw NumericalError("kkt_closed_form: row sums off by " + std::to_string(err));
  }
  return {FeasibleAdjacency(std::move(w), c), std::move(eta)};
}

}  // namespace glgp
