#pragma once

// Characteristic polynomials and derived spectral-free quantities.
//
// char_poly uses the Faddeev-LeVerrier recurrence: division-free except for
// the 1/k trace step, so over Rational the result is exact and over double
// it costs d matrix products.  Everything downstream (elementary symmetric
// means, Cauchy-Binet checks, the bivariate determinant) reduces to it.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rinv/matrix.hpp"
#include "rinv/polynomial.hpp"
#include "rinv/roots.hpp"

namespace rinv {

namespace detail {

// det(xI - A) for any square A, monic of degree dim(A).
template <typename T>
Polynomial<T> char_poly_square(const MatrixX<T>& A) {
  const Eigen::Index d = A.rows();
  if (d != A.cols()) throw std::invalid_argument("char_poly: matrix is not square");
  std::vector<T> c(static_cast<std::size_t>(d) + 1, T(0));
  c[0] = T(1);
  MatrixX<T> N = MatrixX<T>::Zero(d, d);
  for (Eigen::Index k = 1; k <= d; ++k) {
    N = MatrixX<T>(A * N);
    for (Eigen::Index i = 0; i < d; ++i) N(i, i) += c[static_cast<std::size_t>(k - 1)];
    MatrixX<T> AN = A * N;
    c[static_cast<std::size_t>(k)] = -AN.trace() / T(static_cast<long long>(k));
  }
  std::vector<T> asc(static_cast<std::size_t>(d) + 1);
  for (Eigen::Index k = 0; k <= d; ++k)
    asc[static_cast<std::size_t>(d - k)] = c[static_cast<std::size_t>(k)];
  return Polynomial<T>(std::move(asc));
}

template <typename T>
T binomial(int n, int k) {
  if (k < 0 || k > n) return T(0);
  T acc(1);
  for (int i = 1; i <= k; ++i) acc = acc * T(n - k + i) / T(i);
  return acc;
}

inline std::uint64_t binomial_count(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  std::uint64_t acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    if (acc > cap) return cap + 1;
  }
  return acc;
}

}  // namespace detail

template <typename T>
Polynomial<T> char_poly(const SymmetricMatrix<T>& A) {
  return detail::char_poly_square(A.mat());
}

// e_0..e_d of the eigenvalues, read off the characteristic coefficients.
template <typename T>
std::vector<T> elementary_symmetric(const SymmetricMatrix<T>& A) {
  Polynomial<T> p = char_poly(A);
  const int d = static_cast<int>(A.dim());
  std::vector<T> e(static_cast<std::size_t>(d) + 1);
  T sgn(1);
  for (int ell = 0; ell <= d; ++ell) {
    e[static_cast<std::size_t>(ell)] = sgn * p.coeff(d - ell);
    sgn = -sgn;
  }
  return e;
}

template <typename T>
T determinant(const MatrixX<T>& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("determinant: matrix is not square");
  if (A.rows() == 0) return T(1);
  Polynomial<T> p = detail::char_poly_square(A);
  T v = p(T(0));
  return A.rows() % 2 == 0 ? v : -v;
}

// Both sides of the Cauchy-Binet identity for e_ell(B^T B): the elementary
// symmetric mean and the sum of det(B_S^T B_S) over all ell-column subsets.
// The subset sum is a hard-capped enumeration.
template <typename T>
std::pair<T, T> cauchy_binet_check(const MatrixX<T>& B, int ell,
                                   std::uint64_t cap = 1000000) {
  const int d = static_cast<int>(B.rows());
  const int m = static_cast<int>(B.cols());
  if (ell < 0 || ell > std::min(d, m))
    throw std::invalid_argument("cauchy_binet_check: ell out of range");
  if (detail::binomial_count(m, ell, cap) > cap)
    throw std::invalid_argument("cauchy_binet_check: subset count exceeds cap");
  SymmetricMatrix<T> G(MatrixX<T>(B.transpose() * B));
  T lhs = elementary_symmetric(G)[static_cast<std::size_t>(ell)];
  T rhs(0);
  std::vector<int> idx(static_cast<std::size_t>(ell));
  for (int i = 0; i < ell; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (ell == 0) {
    rhs = T(1);
  } else {
    while (true) {
      MatrixX<T> sub = columns(B, idx);
      rhs += determinant(MatrixX<T>(sub.transpose() * sub));
      int i = ell - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - ell + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < ell; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return {lhs, rhs};
}

// Polynomial in x whose coefficients are polynomials in t.  Instances come
// from bivariate_det, so the structure is enforced on construction:
//   - monic in x (the x^d coefficient is the constant 1),
//   - the x^(d-i) coefficient has degree at most i in t.
template <typename T>
class BivariatePolynomial {
 public:
  explicit BivariatePolynomial(std::vector<Polynomial<T>> coeffs_by_x_power)
      : xc_(std::move(coeffs_by_x_power)) {
    if (xc_.empty()) throw std::invalid_argument("BivariatePolynomial: empty coefficients");
    const int d = degree_x();
    xc_.back() = Polynomial<T>::one();
    for (int i = 0; i <= d; ++i) {
      Polynomial<T>& q = xc_[static_cast<std::size_t>(i)];
      const int max_t = d - i;
      if (q.degree() > max_t) {
        std::vector<T> c(q.coeffs().begin(), q.coeffs().begin() + max_t + 1);
        q = Polynomial<T>(std::move(c));
      }
    }
  }

  int degree_x() const { return static_cast<int>(xc_.size()) - 1; }
  const Polynomial<T>& coeff_t(int x_power) const {
    return xc_.at(static_cast<std::size_t>(x_power));
  }

  // Specialize t to a constant.
  Polynomial<T> at_t(const T& t) const {
    std::vector<T> c(xc_.size());
    for (std::size_t i = 0; i < xc_.size(); ++i) c[i] = xc_[i](t);
    return Polynomial<T>(std::move(c));
  }

  // Apply (1 - d/dt)^r and evaluate at t = 0.  Acting on t^i, the operator
  // contributes (-1)^i * r(r-1)...(r-i+1) at the origin, so each coefficient
  // collapses via a falling-factorial sum.
  Polynomial<T> one_minus_dt_power(int r) const {
    if (r < 0) throw std::invalid_argument("one_minus_dt_power: negative power");
    std::vector<T> c(xc_.size());
    for (std::size_t ell = 0; ell < xc_.size(); ++ell) {
      const Polynomial<T>& q = xc_[ell];
      T acc(0), falling(1);
      const int top = std::min(r, q.degree());
      for (int i = 0; i <= top; ++i) {
        if (i > 0) falling = falling * T(r - i + 1);
        T term = falling * q.coeff(i);
        acc += (i % 2 == 0) ? term : -term;
      }
      c[ell] = acc;
    }
    return Polynomial<T>(std::move(c));
  }

 private:
  std::vector<Polynomial<T>> xc_;
};

// det(xI - C + tM) as a bivariate polynomial: evaluate the characteristic
// polynomial at the integer nodes t = 0..d and reconstruct each x-coefficient
// by Newton divided differences.  Exact over Rational; over double the nodes
// are small integers so the interpolation stays well conditioned at the
// dimensions this library targets.
template <typename T>
BivariatePolynomial<T> bivariate_det(const SymmetricMatrix<T>& C,
                                     const SymmetricMatrix<T>& M) {
  const Eigen::Index d = C.dim();
  if (M.dim() != d) throw std::invalid_argument("bivariate_det: dimension mismatch");
  const int n = static_cast<int>(d);
  std::vector<Polynomial<T>> at_node;
  at_node.reserve(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    MatrixX<T> A = C.mat() - M.mat() * T(j);
    at_node.push_back(detail::char_poly_square(A));
  }
  std::vector<Polynomial<T>> coeffs(static_cast<std::size_t>(n) + 1);
  for (int xp = 0; xp <= n; ++xp) {
    // divided-difference table over nodes 0..n
    std::vector<T> dd(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j)
      dd[static_cast<std::size_t>(j)] = at_node[static_cast<std::size_t>(j)].coeff(xp);
    for (int level = 1; level <= n; ++level)
      for (int j = n; j >= level; --j)
        dd[static_cast<std::size_t>(j)] =
            (dd[static_cast<std::size_t>(j)] - dd[static_cast<std::size_t>(j - 1)]) /
            T(level);
    // Horner in the Newton basis: a_n, then *(t - t_j) + a_j downwards
    Polynomial<T> acc{dd[static_cast<std::size_t>(n)]};
    for (int j = n - 1; j >= 0; --j)
      acc = acc * Polynomial<T>{T(-j), T(1)} + Polynomial<T>{dd[static_cast<std::size_t>(j)]};
    coeffs[static_cast<std::size_t>(xp)] = std::move(acc);
  }
  return BivariatePolynomial<T>(std::move(coeffs));
}

// squared Frobenius / squared operator norm
inline double stable_rank(const MatrixXd& B) {
  double fro2 = B.squaredNorm();
  if (fro2 == 0.0) throw std::invalid_argument("stable_rank: zero matrix");
  Polynomial<double> p = char_poly(gram_bbt(B));
  double op2 = kth_largest_root(p, 1);
  return fro2 / op2;
}

// trace(A)^2 / trace(A^2), the Schatten 4-norm analogue of stable rank
// (kappa of B B^T).  Agrees with stable_rank on orthogonal projections and
// never falls below it.
template <typename T>
T kappa(const SymmetricMatrix<T>& A) {
  T tr = A.mat().trace();
  if (!(tr > T(0))) throw std::invalid_argument("kappa: trace must be positive");
  T tr2 = MatrixX<T>(A.mat() * A.mat()).trace();
  return tr * tr / tr2;
}

inline double stable_rank4(const MatrixXd& B) {
  if (B.squaredNorm() == 0.0) throw std::invalid_argument("stable_rank4: zero matrix");
  return kappa(gram_bbt(B));
}

}  // namespace rinv
