#include <doctest.h>

#include <limits>

#include "glgp/baselines.hpp"
#include "glgp/objective.hpp"
#include "support.hpp"

using namespace glgp;

namespace {

// Gradient of J(W) - lambda 1'W b.
MatrixXd surrogate_grad(const MatrixXd& w, const DistanceMatrix& d, double beta, double lambda,
                        const VectorXd& b) {
  return grad_J(w, d, beta) - lambda * VectorXd::Ones(w.rows()) * b.transpose();
}

// <grad(W*), W - W*> over random feasible W.
double worst_vi(const MatrixXd& w_star, const MatrixXd& grad, RngStream& rng, double c) {
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    const MatrixXd w = k % 2 ? testing::random_S(rng, w_star.rows(), c)
                             : testing::random_interior_S(rng, w_star.rows(), c);
    worst = std::min(worst, grad.cwiseProduct(w - w_star).sum());
  }
  return worst;
}

// N = 3 brute force: each row has two free entries (p, c - p) with p in [0, c];
// the per-row objective is a 1-D convex quadratic, minimized over interior
// stationary point and both endpoints.
MatrixXd brute_force_n3(const MatrixXd& d, double beta, double c, double lambda, const VectorXd& b) {
  MatrixXd w = MatrixXd::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    const int j1 = i == 0 ? 1 : 0;
    const int j2 = i == 2 ? 1 : 2;
    const double a1 = d(i, j1) - lambda * b(j1);
    const double a2 = d(i, j2) - lambda * b(j2);
    auto obj = [&](double p) {
      return a1 * p + a2 * (c - p) + beta * (p * p + (c - p) * (c - p));
    };
    double best_p = 0.0;
    for (double p : {0.0, c, std::clamp((a2 - a1 + 2 * beta * c) / (4 * beta), 0.0, c)}) {
      if (obj(p) < obj(best_p)) best_p = p;
    }
    w(i, j1) = best_p;
    w(i, j2) = c - best_p;
  }
  return w;
}

}  // namespace

TEST_CASE("Smooth-GL special cases") {
  const DistanceMatrix zero(MatrixXd::Zero(5, 5));
  CHECK((solve_smooth_gl(zero, 1.0, 0.9).weights() - FeasibleAdjacency::uniform(5, 0.9).weights())
            .norm() <= 1e-15);

  RngStream rng(71, 0);
  const DistanceMatrix d = testing::random_distance(rng, 8);
  CHECK((solve_smooth_gl(d, 1e12, 0.9).weights() - FeasibleAdjacency::uniform(8, 0.9).weights())
            .norm() <= 1e-9);
}

TEST_CASE("Smooth-GL closed form equals the projected-gradient path") {
  RngStream rng(72, 0);
  for (int rep = 0; rep < 10; ++rep) {
    const DistanceMatrix d = testing::random_distance(rng, 10);
    const double beta = 0.2 + rng.uniform();
    SmoothGlOptions pg;
    pg.max_iter = 100000;
    const MatrixXd a = solve_smooth_gl(d, beta, 0.9).weights();
    const MatrixXd p = solve_smooth_gl(d, beta, 0.9, pg).weights();
    CHECK((a - p).norm() <= 1e-8);
    CHECK(worst_vi(a, grad_J(a, d, beta), rng, 0.9) >= -1e-8);
  }
}

TEST_CASE("linear surrogate: lambda = 0 and KKT agreement") {
  RngStream rng(73, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 3 + static_cast<int>(rng.uniform_index(8));
    const DistanceMatrix d = testing::random_distance(rng, n);
    const VectorXd b = testing::uniform_vector(rng, n);
    const double beta = 0.1 + 2.0 * rng.uniform();
    const double lambda = 5.0 * rng.uniform();
    const MatrixXd lin = solve_linear_approx(d, beta, 0.9, lambda, b).weights();
    const KktSolution kkt = kkt_closed_form(d, beta, 0.9, lambda, b);
    CHECK((lin - kkt.w.weights()).norm() <= 1e-10);
    CHECK(worst_vi(lin, surrogate_grad(lin, d, beta, lambda, b), rng, 0.9) >= -1e-8);
    CHECK(solve_linear_approx(d, beta, 0.9, 0.0, b).weights() ==
          solve_smooth_gl(d, beta, 0.9).weights());
  }
}

TEST_CASE("KKT multipliers in the symmetric case") {
  const DistanceMatrix zero(MatrixXd::Zero(6, 6));
  const KktSolution s = kkt_closed_form(zero, 2.0, 0.9, 0.0, VectorXd::Zero(6));
  CHECK((s.w.weights() - FeasibleAdjacency::uniform(6, 0.9).weights()).norm() <= 1e-14);
  for (int i = 0; i < 6; ++i) CHECK(s.eta(i) == doctest::Approx(2.0 * 2.0 * 0.9 / 5.0));
}

TEST_CASE("KKT closed form matches brute force on N = 3") {
  RngStream rng(74, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const DistanceMatrix d = testing::random_distance(rng, 3, 2);
    const VectorXd b = testing::uniform_vector(rng, 3);
    const double beta = 0.05 + rng.uniform();
    const double lambda = 3.0 * rng.uniform();
    const MatrixXd ref = brute_force_n3(d.values(), beta, 0.8, lambda, b);
    CHECK((kkt_closed_form(d, beta, 0.8, lambda, b).w.weights() - ref).norm() <= 1e-10);
  }
}

TEST_CASE("large lambda concentrates incoming weight on high-benefit nodes") {
  RngStream rng(75, 0);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 8;
    const DistanceMatrix d = testing::random_distance(rng, n);
    const VectorXd b = testing::uniform_vector(rng, n);
    const MatrixXd w = solve_linear_approx(d, 1.0, 0.9, 1e6, b).weights();
    const VectorXd incoming = w.colwise().sum().transpose();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (b(i) > b(j)) CHECK(incoming(i) >= incoming(j));
      }
    }
  }
}

TEST_CASE("baseline input checks") {
  const DistanceMatrix d(MatrixXd::Zero(3, 3));
  CHECK_THROWS_AS(solve_smooth_gl(d, 0.0, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(solve_linear_approx(d, 1.0, 0.9, -1.0, VectorXd::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(kkt_closed_form(d, 1.0, 0.9, 1.0, VectorXd::Ones(4)), std::invalid_argument);
}
