#pragma once

// Closed-form lower bounds on the k-th largest root of the expected
// characteristic polynomials, i.e. on the squared least singular value
// guarantee for a k-column selection (columns scaled by 1/sqrt(m) where a
// 1/m appears).

#include <cmath>
#include <optional>
#include <stdexcept>

#include "rinv/charpoly.hpp"
#include "rinv/matrix.hpp"

namespace rinv {

namespace detail {

// Rank thresholds like the stable rank come out of a root solve, so exact
// k == rank boundaries need slack; the matching clamp below keeps the bound
// at zero instead of going negative inside the sqrt.
inline bool rank_admits(int k, double rank, double slack = 1e-9) {
  return static_cast<double>(k) <= rank * (1.0 + slack) + slack;
}

inline double one_minus_sqrt_ratio(int k, double rank) {
  return std::max(0.0, 1.0 - std::sqrt(std::min(1.0, static_cast<double>(k) / rank)));
}

}  // namespace detail

// (1 - sqrt(k / srank))^2 * ||B||_F^2 / m, the restricted-invertibility
// guarantee in terms of stable rank.  Rejects k above the stable rank.
inline double ss_bound(const MatrixXd& B, int k) {
  if (k < 0) throw std::invalid_argument("ss_bound: negative k");
  double sr = stable_rank(B);
  if (!detail::rank_admits(k, sr))
    throw std::invalid_argument("ss_bound: k exceeds stable rank");
  double r = detail::one_minus_sqrt_ratio(k, sr);
  return r * r * B.squaredNorm() / static_cast<double>(B.cols());
}

// Same shape with the Schatten-4 analogue kappa(A) = tr(A)^2 / tr(A^2) in
// place of stable rank: (1 - sqrt(k/kappa))^2 * tr(A) / m for A = B B^T.
inline double schatten_bound(const SymmetricMatrix<double>& A, int k, int m) {
  if (k < 0 || m < 1) throw std::invalid_argument("schatten_bound: bad k or m");
  double kap = kappa(A);
  if (!detail::rank_admits(k, kap))
    throw std::invalid_argument("schatten_bound: k exceeds kappa");
  double r = detail::one_minus_sqrt_ratio(k, kap);
  return r * r * A.mat().trace() / static_cast<double>(m);
}

// Lower bound on the k-th largest root of the expected polynomial driven by
// a covariance M: (1 - sqrt(k/kappa(M)))^2 * tr(M).
inline double muroot_bound(const SymmetricMatrix<double>& M, int k) {
  if (k < 0) throw std::invalid_argument("muroot_bound: negative k");
  double kap = kappa(M);
  if (!detail::rank_admits(k, kap))
    throw std::invalid_argument("muroot_bound: k exceeds kappa");
  double r = detail::one_minus_sqrt_ratio(k, kap);
  return r * r * M.mat().trace();
}

// Krasikov's lower bound on the least zero of the associated Laguerre
// polynomial L_k^(alpha):  V^2 + 3 V^(4/3) (U^2 - V^2)^(-1/3) with
// V = sqrt(k+alpha+1) - sqrt(k), U = sqrt(k+alpha+1) + sqrt(k).
inline double krasikov_bound(int k, double alpha) {
  if (k < 1) throw std::invalid_argument("krasikov_bound: requires k >= 1");
  if (!(alpha > -1.0)) throw std::invalid_argument("krasikov_bound: requires alpha > -1");
  double s = std::sqrt(static_cast<double>(k) + alpha + 1.0);
  double t = std::sqrt(static_cast<double>(k));
  double v = s - t, u = s + t;
  return v * v + 3.0 * std::pow(v, 4.0 / 3.0) * std::pow(u * u - v * v, -1.0 / 3.0);
}

// (sqrt(d(m-k)) - sqrt(k(m-d)))^2 / m^2, the least-root bound for the
// without-replacement expected polynomial on isotropic input.
inline double jacobi_bound(int d, int k, int m) {
  if (!(0 <= k && k <= d && d <= m && m >= 1))
    throw std::invalid_argument("jacobi_bound: requires 0 <= k <= d <= m");
  double a = std::sqrt(static_cast<double>(d) * (m - k));
  double b = std::sqrt(static_cast<double>(k) * (m - d));
  double r = (a - b) / static_cast<double>(m);
  return r * r;
}

// One extra derivative sharpens d to d+1:
// (sqrt((d+1)(m-k)) - sqrt(k(m-d-1)))^2 / m^2.
inline double improved_jacobi_bound(int d, int k, int m) {
  if (!(0 <= k && k <= d + 1 && d + 1 <= m))
    throw std::invalid_argument("improved_jacobi_bound: requires k <= d+1 <= m");
  double a = std::sqrt(static_cast<double>(d + 1) * (m - k));
  double b = std::sqrt(static_cast<double>(k) * (m - d - 1));
  double r = (a - b) / static_cast<double>(m);
  return r * r;
}

// The barrier-argument objective whose maximum over alpha > 0 is
// jacobi_bound: u(alpha) = ((1 - alpha m) - sqrt((1 - alpha m)^2 + 4 alpha k))/2
// + d alpha.
inline double u_alpha(double alpha, int m, int d, int k) {
  if (!(alpha >= 0)) throw std::invalid_argument("u_alpha: requires alpha >= 0");
  double w = 1.0 - alpha * static_cast<double>(m);
  double disc = w * w + 4.0 * alpha * static_cast<double>(k);
  return 0.5 * (w - std::sqrt(disc)) + static_cast<double>(d) * alpha;
}

// Maximizer of u_alpha:
// (m - 2k)/m^2 - (m - 2d)/m^2 * sqrt(k(m-k) / (d(m-d))).
inline double alpha_star(int m, int d, int k) {
  if (!(1 <= k && k <= d && d < m))
    throw std::invalid_argument("alpha_star: requires 1 <= k <= d < m");
  double m2 = static_cast<double>(m) * m;
  double ratio = std::sqrt(static_cast<double>(k) * (m - k) /
                           (static_cast<double>(d) * (m - d)));
  return (m - 2.0 * k) / m2 - (m - 2.0 * d) / m2 * ratio;
}

// Everything the CLI reports about one instance.  A bound is absent when its
// precondition fails (e.g. k above the stable rank); `vacuous` marks a bound
// that degenerated to zero at the rank boundary.
struct BoundsReport {
  int d = 0;
  int m = 0;
  int k = 0;
  double srank = 0;
  double srank4 = 0;
  double frob_sq = 0;
  bool isotropic = false;
  bool guarantees_applicable = true;

  std::optional<double> ss;
  std::optional<double> schatten;
  std::optional<double> jacobi;
  std::optional<double> improved_jacobi;
  std::optional<double> krasikov_over_m;  // Laguerre least-zero bound scaled by 1/m
  std::optional<double> achieved_sigma_min_sq;

  bool ss_vacuous = false;
  bool schatten_vacuous = false;
  bool jacobi_vacuous = false;
};

inline BoundsReport make_bounds_report(const MatrixXd& B, int k,
                                       double iso_tol = 1e-8) {
  BoundsReport r;
  r.d = static_cast<int>(B.rows());
  r.m = static_cast<int>(B.cols());
  r.k = k;
  if (r.d < 1 || r.m < 1) throw std::invalid_argument("make_bounds_report: empty matrix");
  if (k < 1 || k > r.d)
    throw std::invalid_argument("make_bounds_report: requires 1 <= k <= d");
  r.frob_sq = B.squaredNorm();
  r.srank = stable_rank(B);
  r.srank4 = stable_rank4(B);
  r.isotropic = is_isotropic(B, iso_tol);
  r.guarantees_applicable = detail::rank_admits(k, r.srank);
  constexpr double kVacuous = 1e-13;
  if (detail::rank_admits(k, r.srank)) {
    r.ss = ss_bound(B, k);
    r.ss_vacuous = *r.ss <= kVacuous;
  }
  if (detail::rank_admits(k, r.srank4)) {
    r.schatten = schatten_bound(gram_bbt(B), k, r.m);
    r.schatten_vacuous = *r.schatten <= kVacuous;
  }
  if (k <= r.d && r.d <= r.m) {
    r.jacobi = jacobi_bound(r.d, k, r.m);
    r.jacobi_vacuous = *r.jacobi <= kVacuous;
  }
  if (r.d + 1 <= r.m) r.improved_jacobi = improved_jacobi_bound(r.d, k, r.m);
  if (k >= 1 && r.d - k > -1)
    r.krasikov_over_m = krasikov_bound(k, static_cast<double>(r.d - k)) / r.m;
  return r;
}

}  // namespace rinv
