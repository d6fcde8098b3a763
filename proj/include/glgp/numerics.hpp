#pragma once

// Dense linear-algebra primitives shared by every other module. All routines
// are deterministic functions of their inputs and templated on the Eigen
// scalar type.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "glgp/error.hpp"

namespace glgp {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

template <typename Derived>
void require_square_finite(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
  }
}

template <typename Scalar>
Scalar one_norm(const Mat<Scalar>& a) {
  if (a.size() == 0) return Scalar(0);
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade numerator coefficients b_0..b_m for degree m (denominator uses the
// same coefficients with alternating signs on odd powers).
inline constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
inline constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
inline constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                                 25200.0,    1512.0,    56.0,      1.0};
inline constexpr std::array<double, 10> kPade9 = {
    17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
    2162160.0,     110880.0,     3960.0,       90.0,        1.0};
inline constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

// Largest 1-norm for which the degree-m approximant reaches unit roundoff
// in double precision (Higham, 2005).
inline constexpr double kTheta3 = 1.495585217958292e-2;
inline constexpr double kTheta5 = 2.539398330063230e-1;
inline constexpr double kTheta7 = 9.504178996162932e-1;
inline constexpr double kTheta9 = 2.097847961257068e0;
inline constexpr double kTheta13 = 5.371920351148152e0;

template <typename Scalar, std::size_t N>
Mat<Scalar> pade_low_order(const Mat<Scalar>& a, const std::array<double, N>& b) {
  const Eigen::Index n = a.rows();
  const Mat<Scalar> id = Mat<Scalar>::Identity(n, n);
  const Mat<Scalar> a2 = a * a;
  Mat<Scalar> u_inner = Scalar(b[1]) * id;
  Mat<Scalar> v = Scalar(b[0]) * id;
  Mat<Scalar> power = id;
  for (std::size_t k = 2; k + 1 < N; k += 2) {
    power = power * a2;
    v += Scalar(b[k]) * power;
    u_inner += Scalar(b[k + 1]) * power;
  }
  const Mat<Scalar> u = a * u_inner;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace detail

/// Matrix exponential by scaling and squaring with a diagonal Pade
/// approximant. The degree (3, 5, 7, 9 or 13) and the number of squarings are
/// picked from the 1-norm against Higham's double-precision thresholds, so
/// for ||A|| <= 10 at most two squarings of a degree-13 approximant are used.
template <typename Derived>
Mat<typename Derived::Scalar> matrix_exponential(const Eigen::MatrixBase<Derived>& a_in) {
  using Scalar = typename Derived::Scalar;
  detail::require_square_finite(a_in, "matrix_exponential");
  Mat<Scalar> a = a_in;
  const Eigen::Index n = a.rows();
  if (n == 0) return a;

  const double norm = static_cast<double>(detail::one_norm(a));
  if (norm <= detail::kTheta3) return detail::pade_low_order(a, detail::kPade3);
  if (norm <= detail::kTheta5) return detail::pade_low_order(a, detail::kPade5);
  if (norm <= detail::kTheta7) return detail::pade_low_order(a, detail::kPade7);
  if (norm <= detail::kTheta9) return detail::pade_low_order(a, detail::kPade9);

  int squarings = 0;
  if (norm > detail::kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / detail::kTheta13)));
    a /= std::ldexp(Scalar(1), squarings);
  }
  const auto& b = detail::kPade13;
  const Mat<Scalar> id = Mat<Scalar>::Identity(n, n);
  const Mat<Scalar> a2 = a * a;
  const Mat<Scalar> a4 = a2 * a2;
  const Mat<Scalar> a6 = a4 * a2;
  const Mat<Scalar> u_hi = Scalar(b[13]) * a6 + Scalar(b[11]) * a4 + Scalar(b[9]) * a2;
  const Mat<Scalar> u = a * (a6 * u_hi + Scalar(b[7]) * a6 + Scalar(b[5]) * a4 +
                             Scalar(b[3]) * a2 + Scalar(b[1]) * id);
  const Mat<Scalar> v_hi = Scalar(b[12]) * a6 + Scalar(b[10]) * a4 + Scalar(b[8]) * a2;
  const Mat<Scalar> v = a6 * v_hi + Scalar(b[6]) * a6 + Scalar(b[4]) * a4 +
                        Scalar(b[2]) * a2 + Scalar(b[0]) * id;
  Mat<Scalar> result = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

template <typename Scalar>
struct EigenPair {
  Scalar value;
  Vec<Scalar> vector;
  int iterations;
};

inline constexpr int kPowerIterationCap = 10000;

namespace detail {

// Power iteration on a symmetric positive semidefinite matrix. Stops when the
// Rayleigh quotient moves by <= 1e-12 * scale and the eigen-residual is
// <= 1e-10 * scale.
template <typename Scalar>
EigenPair<Scalar> psd_power_iteration(const Mat<Scalar>& b, Vec<Scalar> v, Scalar scale,
                                      int cap, bool* converged) {
  v.normalize();
  Scalar value = v.dot(b * v);
  *converged = false;
  int it = 0;
  for (; it < cap; ++it) {
    Vec<Scalar> w = b * v;
    const Scalar norm = w.norm();
    if (norm == Scalar(0)) {
      value = Scalar(0);
      *converged = true;
      break;
    }
    w /= norm;
    const Scalar next = w.dot(b * w);
    const Scalar residual = (b * w - next * w).norm();
    const Scalar change = std::abs(next - value);
    v = w;
    value = next;
    if (change <= Scalar(1e-12) * scale && residual <= Scalar(1e-10) * scale) {
      *converged = true;
      ++it;
      break;
    }
  }
  return {value, v, it};
}

}  // namespace detail

/// Eigenpair of the algebraically largest eigenvalue of a symmetric matrix,
/// by power iteration on the shifted matrix A + sI (s = ||A||_inf makes it
/// positive semidefinite). The eigenvector sign is fixed so that its
/// largest-magnitude entry is positive. A top eigenvalue with multiplicity
/// above one (detected by deflation) or the iteration cap raises
/// ConvergenceError carrying the last eigenvalue estimate.
template <typename Derived>
EigenPair<typename Derived::Scalar> dominant_eigenvector(const Eigen::MatrixBase<Derived>& a_in) {
  using Scalar = typename Derived::Scalar;
  detail::require_square_finite(a_in, "dominant_eigenvector");
  const Mat<Scalar> a = a_in;
  const Eigen::Index n = a.rows();
  if (n == 0) throw std::invalid_argument("dominant_eigenvector: empty matrix");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() >
      Scalar(1e-12) * std::max(Scalar(1), a.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("dominant_eigenvector: matrix must be symmetric");
  }

  const Scalar shift = a.cwiseAbs().rowwise().sum().maxCoeff();
  const Scalar scale = std::max(Scalar(1), shift);
  const Mat<Scalar> shifted = a + shift * Mat<Scalar>::Identity(n, n);

  // Deterministic start with a small ramp so it is not orthogonal to the
  // Perron-like vector of structured matrices.
  Vec<Scalar> start(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    start[i] = Scalar(1) + Scalar(1e-3) * Scalar(i + 1) / Scalar(n);
  }
  bool converged = false;
  EigenPair<Scalar> top =
      detail::psd_power_iteration(shifted, start, scale, kPowerIterationCap, &converged);
  top.value -= shift;
  if (!converged) {
    throw ConvergenceError("dominant_eigenvector: no convergence after " +
                               std::to_string(kPowerIterationCap) + " iterations",
                           static_cast<double>(top.value));
  }

  if (n > 1) {
    // Second-largest eigenvalue from the deflated PSD matrix.
    const Mat<Scalar> deflated =
        shifted - (top.value + shift) * top.vector * top.vector.transpose();
    Vec<Scalar> probe(n);
    for (Eigen::Index i = 0; i < n; ++i) probe[i] = (i % 2 == 0) ? Scalar(1) : Scalar(-1);
    probe[0] += Scalar(0.5);
    probe -= top.vector.dot(probe) * top.vector;
    if (probe.norm() < Scalar(1e-8)) probe = Vec<Scalar>::Unit(n, n - 1) - top.vector * top.vector[n - 1];
    bool second_converged = false;
    const EigenPair<Scalar> second = detail::psd_power_iteration(
        deflated, probe, scale, kPowerIterationCap, &second_converged);
    const Scalar gap = top.value - (second.value - shift);
    if (gap <= Scalar(1e-9) * scale) {
      throw ConvergenceError("dominant_eigenvector: top eigenvalue is degenerate (gap " +
                                 std::to_string(static_cast<double>(gap)) + ")",
                             static_cast<double>(top.value));
    }
  }

  Eigen::Index arg = 0;
  top.vector.cwiseAbs().maxCoeff(&arg);
  if (top.vector[arg] < Scalar(0)) top.vector = -top.vector;
  return top;
}

/// Power-iteration estimate of the spectral radius of |A| (the Perron root,
/// an upper bound on rho(A)). Iterates on |A| + sI with s = ||A||_inf so that
/// periodic (e.g. bipartite) structure cannot make the iteration oscillate.
/// Relative tolerance 1e-10; meant for validation rather than solver paths.
template <typename Derived>
typename Derived::Scalar spectral_radius_bound(const Eigen::MatrixBase<Derived>& a_in) {
  using Scalar = typename Derived::Scalar;
  detail::require_square_finite(a_in, "spectral_radius_bound");
  const Mat<Scalar> abs_a = a_in.cwiseAbs();
  const Eigen::Index n = abs_a.rows();
  if (n == 0) return Scalar(0);
  const Scalar shift = abs_a.rowwise().sum().maxCoeff();
  if (shift == Scalar(0)) return Scalar(0);
  const Mat<Scalar> b = abs_a + shift * Mat<Scalar>::Identity(n, n);

  Vec<Scalar> v = Vec<Scalar>::Ones(n) / std::sqrt(Scalar(n));
  Scalar estimate = Scalar(0);
  constexpr int kCap = 100000;
  for (int it = 0; it < kCap; ++it) {
    Vec<Scalar> w = b * v;
    const Scalar next = w.norm();
    w /= next;
    const bool done = std::abs(next - estimate) <= Scalar(1e-10) * next &&
                      (w - v).norm() <= Scalar(1e-8);
    v = w;
    estimate = next;
    if (done) break;
  }
  // Collatz-Wielandt upper bound on the positive support, clipped to the
  // norm-ratio estimate.
  const Vec<Scalar> bv = b * v;
  Scalar upper = Scalar(0);
  bool any = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (v[i] > Scalar(1e-300)) {
      upper = any ? std::max(upper, bv[i] / v[i]) : bv[i] / v[i];
      any = true;
    }
  }
  const Scalar value = any ? std::min(estimate, upper) : estimate;
  return std::max(Scalar(0), value - shift);
}

/// Solves AX = B by LU with partial pivoting. Throws NumericalError when a
/// pivot falls below 1e-14 * ||A||_1.
template <typename DerivedA, typename DerivedB>
Mat<typename DerivedA::Scalar> linear_solve(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  detail::require_square_finite(a, "linear_solve");
  if (b.rows() != a.rows()) {
    throw std::invalid_argument("linear_solve: right-hand side has " + std::to_string(b.rows()) +
                                " rows, expected " + std::to_string(a.rows()));
  }
  if (!b.allFinite()) throw std::invalid_argument("linear_solve: right-hand side not finite");
  const Mat<Scalar> am = a;
  const Eigen::PartialPivLU<Mat<Scalar>> lu(am);
  const Scalar norm = detail::one_norm(am);
  const Scalar min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > Scalar(1e-14) * norm)) {
    throw NumericalError("linear_solve: matrix is numerically singular (min pivot " +
                         std::to_string(static_cast<double>(min_pivot)) + ")");
  }
  return lu.solve(b.derived().template cast<Scalar>());
}

}  // namespace glgp
