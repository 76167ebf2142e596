#pragma once

// Reproducible test-instance generation.  The Gaussian source is pinned to
// mt19937_64 with an explicit Box-Muller transform so a seed yields the same
// matrix everywhere.  Exact rational instances come from integer Householder
// reflections, whose rows are exactly orthonormal.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "rinv/charpoly.hpp"
#include "rinv/matrix.hpp"
#include "rinv/rational.hpp"
#include "rinv/roots.hpp"

namespace rinv {

namespace detail {

class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double uniform01() {  // in (0, 1]
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace detail

inline MatrixXd gaussian_matrix(int d, int m, std::uint64_t seed) {
  if (d < 1 || m < 1) throw std::invalid_argument("gaussian_matrix: empty shape");
  detail::GaussianSource g(seed);
  MatrixXd B(d, m);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < m; ++j) B(i, j) = g.next();
  return B;
}

// A^(-1/2) for symmetric positive definite A via its characteristic
// polynomial: eigenvalues by root isolation, eigenvectors by inverse
// iteration, re-orthonormalized.
inline MatrixXd spd_inverse_sqrt(const SymmetricMatrix<double>& A) {
  const int d = static_cast<int>(A.dim());
  Polynomial<double> p = char_poly(A);
  std::vector<double> eigs = real_roots_with_multiplicity(p, 1e-12);
  if (static_cast<int>(eigs.size()) != d)
    throw std::runtime_error("spd_inverse_sqrt: eigenvalue count mismatch");
  for (double e : eigs)
    if (!(e > 0)) throw std::invalid_argument("spd_inverse_sqrt: matrix not positive definite");
  MatrixXd V(d, d);
  for (int j = 0; j < d; ++j) {
    MatrixXd shifted = A.mat() - (eigs[static_cast<std::size_t>(j)] + 1e-13) *
                                     MatrixXd::Identity(d, d);
    Eigen::PartialPivLU<MatrixXd> lu(shifted);
    VectorXd v = VectorXd::Ones(d);
    for (int i = 0; i < d; ++i) v(i) = 1.0 + 0.25 * i * ((i + j) % 2 == 0 ? 1.0 : -1.0);
    v.normalize();
    for (int it = 0; it < 3; ++it) {
      v = lu.solve(v);
      v.normalize();
    }
    V.col(j) = v;
  }
  // Gram-Schmidt pass to clean up near-degenerate directions.
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < j; ++i) V.col(j) -= V.col(i).dot(V.col(j)) * V.col(i);
    double n = V.col(j).norm();
    if (!(n > 0)) throw std::runtime_error("spd_inverse_sqrt: degenerate eigenvector basis");
    V.col(j) /= n;
  }
  VectorXd inv_sqrt(d);
  for (int j = 0; j < d; ++j) inv_sqrt(j) = 1.0 / std::sqrt(eigs[static_cast<std::size_t>(j)]);
  MatrixXd W = V * inv_sqrt.asDiagonal() * V.transpose();
  return 0.5 * (W + W.transpose());
}

// Seeded Gaussian matrix right-normalized to B B^T = I within tol.  The
// spectral inverse square root does the heavy lifting; once the residual is
// small the quadratically convergent polish step B <- (3I - BB^T) B / 2
// drives it below the tolerance.
inline MatrixXd isotropic_instance(int d, int m, std::uint64_t seed, double tol = 1e-10) {
  if (!(d >= 1 && m >= d)) throw std::invalid_argument("isotropic_instance: requires m >= d >= 1");
  MatrixXd B = gaussian_matrix(d, m, seed);
  const MatrixXd I = MatrixXd::Identity(d, d);
  for (int pass = 0; pass < 12; ++pass) {
    MatrixXd A = B * B.transpose();
    A = 0.5 * (A + A.transpose());
    double err = (A - I).cwiseAbs().maxCoeff();
    if (err <= tol) return B;
    if (err < 0.5)
      B = 0.5 * (3.0 * I - A) * B;
    else
      B = spd_inverse_sqrt(SymmetricMatrix<double>(A)) * B;
  }
  throw std::runtime_error("isotropic_instance: normalization did not converge");
}

// Gaussian matrix with a deterministic row/column scaling so the column
// covariance has a genuinely spread spectrum.
inline MatrixXd nonisotropic_instance(int d, int m, std::uint64_t seed) {
  MatrixXd B = gaussian_matrix(d, m, seed);
  for (int i = 0; i < d; ++i) B.row(i) *= 1.0 + 0.5 * i;
  for (int j = 0; j < m; ++j) B.col(j) *= 1.0 + 0.25 * (j % 3);
  return B;
}

// First d rows of a product of integer Householder reflections
// H = I - 2 v v^T / (v^T v): exactly isotropic over the rationals.
inline MatrixX<Rational> rational_isotropic_instance(int d, int m, int variant = 0) {
  if (!(1 <= d && d <= m)) throw std::invalid_argument("rational_isotropic_instance: d <= m");
  auto householder = [&](int salt) {
    VectorX<Rational> v(m);
    bool nonzero = false;
    for (int i = 0; i < m; ++i) {
      int val = ((i + 1) * (salt + 2) + (i * i + salt) % 5) % 7 - 3;
      v(i) = Rational(val);
      if (val != 0) nonzero = true;
    }
    if (!nonzero) v(0) = Rational(1);
    Rational vtv(0);
    for (int i = 0; i < m; ++i) vtv += v(i) * v(i);
    MatrixX<Rational> H = MatrixX<Rational>::Identity(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) H(i, j) -= Rational(2) * v(i) * v(j) / vtv;
    return H;
  };
  MatrixX<Rational> H = householder(variant);
  if (variant % 2 == 1) H = MatrixX<Rational>(H * householder(variant + 3));
  MatrixX<Rational> B(d, m);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < m; ++j) B(i, j) = H(i, j);
  return B;
}

// Small random rational matrix (entries p/q with |p| <= max_num,
// 1 <= q <= max_den), deterministic in the seed.
inline MatrixX<Rational> rational_matrix(int d, int m, std::uint64_t seed, int max_num = 3,
                                         int max_den = 3) {
  if (d < 1 || m < 1) throw std::invalid_argument("rational_matrix: empty shape");
  std::mt19937_64 rng(seed);
  MatrixX<Rational> B(d, m);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < m; ++j) {
      long long p = static_cast<long long>(rng() % (2 * max_num + 1)) - max_num;
      long long q = static_cast<long long>(rng() % max_den) + 1;
      B(i, j) = Rational(BigInt(p), BigInt(q));
    }
  return B;
}

}  // namespace rinv
