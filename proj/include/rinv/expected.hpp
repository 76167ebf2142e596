#pragma once

// Expected characteristic polynomials for random column sums, in both
// sampling models, plus the classical orthogonal-polynomial forms they
// collapse to on isotropic input.
//
// With replacement: after fixing j of the k draws the expectation over the
// remaining draws is recovered from the bivariate determinant
// det(xI - C + tM) by applying (1 - d/dt)^(k-j) at t = 0, where C is the sum
// of the fixed rank-one terms and M = B B^T / m.
//
// Without replacement (isotropic B only): the expectation over completions
// of a fixed subset T of size t is a differential lift of char_poly of the
// partial sum:
//   f_T = (m-k)!/(m-t)! * (x-1)^-(m-d-k) * D^(k-t) [ (x-1)^(m-d-t) * p_T ].

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rinv/charpoly.hpp"
#include "rinv/matrix.hpp"
#include "rinv/polynomial.hpp"

namespace rinv {

// Expectation of det(xI - sum of k column outer products), the first j draws
// pinned to `assigned` (repeats allowed), the rest uniform over all m columns
// independently.  Monic of degree d = rows(B).
template <typename T>
Polynomial<T> conditional_expected(const MatrixX<T>& B, const std::vector<int>& assigned,
                                   int k) {
  const int d = static_cast<int>(B.rows());
  const int m = static_cast<int>(B.cols());
  const int j = static_cast<int>(assigned.size());
  if (d < 1 || m < 1) throw std::invalid_argument("conditional_expected: empty matrix");
  if (k < 0 || k > d) throw std::invalid_argument("conditional_expected: requires 0 <= k <= d");
  if (j > k) throw std::invalid_argument("conditional_expected: more assignments than draws");
  SymmetricMatrix<T> C = outer_product_sum(B, assigned);
  if (j == k) return char_poly(C);
  SymmetricMatrix<T> M(MatrixX<T>(B * B.transpose()) / T(m));
  return bivariate_det(C, M).one_minus_dt_power(k - j);
}

// (1 - (1/m) d/dx)^k applied to x^d: the unconditioned expectation above for
// any isotropic B with m columns, written directly as an operator on x^d.
template <typename T>
Polynomial<T> laguerre_operator_poly(int d, int k, int m) {
  if (d < 0 || k < 0 || k > d || m < 1)
    throw std::invalid_argument("laguerre_operator_poly: requires 0 <= k <= d, m >= 1");
  Polynomial<T> p = Polynomial<T>::monomial(d);
  const T inv_m = T(1) / T(m);
  for (int i = 0; i < k; ++i) p = one_minus_lambda_deriv(p, inv_m);
  return p;
}

// Associated Laguerre polynomial L_n^(alpha) via the Rodrigues-type form
// x^-alpha / n! * (d/dx - 1)^n [ x^(n+alpha) ], integer alpha >= 0.
template <typename T>
Polynomial<T> associated_laguerre(int n, int alpha) {
  if (n < 0 || alpha < 0)
    throw std::invalid_argument("associated_laguerre: requires n >= 0, alpha >= 0");
  Polynomial<T> p = Polynomial<T>::monomial(n + alpha);
  for (int i = 0; i < n; ++i) p = p.derivative() - p;
  p = divide_by_x_power(p, alpha);
  T inv_fact(1);
  for (int i = 2; i <= n; ++i) inv_fact = inv_fact / T(i);
  if (n >= 2) p *= inv_fact;
  return p;
}

// Expected characteristic polynomial of a sum of k rank-one draws whose
// covariance has the given eigenvalues: x^(d-k) * prod_i (1 - eig_i d/dx)
// applied to x^k.
template <typename T>
Polynomial<T> nonisotropic_expected(const std::vector<T>& eigs, int k) {
  const int d = static_cast<int>(eigs.size());
  if (k < 0 || k > d)
    throw std::invalid_argument("nonisotropic_expected: requires 0 <= k <= #eigenvalues");
  for (const T& e : eigs)
    if (to_double(e) < 0)
      throw std::invalid_argument("nonisotropic_expected: negative eigenvalue");
  Polynomial<T> p = Polynomial<T>::monomial(k);
  for (const T& e : eigs) p = one_minus_lambda_deriv(p, e);
  return multiply_by_x_power(p, d - k);
}

namespace detail {

// The without-replacement lift: expectation over uniform k-supersets of a
// t-subset whose partial-sum characteristic polynomial is p.  Requires the
// intermediate exponent m - d - t to be nonnegative; callers with m < d + t
// must fall back to direct enumeration.
template <typename T>
Polynomial<T> subset_average_lift(const Polynomial<T>& p, int t, int d, int k, int m) {
  if (!(0 <= t && t <= k && k <= d && d < m))
    throw std::invalid_argument("subset_average_lift: requires 0 <= t <= k <= d < m");
  if (t == k) return p;
  const int e_t = m - d - t;
  if (e_t < 0)
    throw std::invalid_argument(
        "subset_average_lift: unsupported regime m - d - |T| < 0; enumerate instead");
  Polynomial<T> q = p * Polynomial<T>::root_power(T(1), e_t);
  for (int i = t; i < k; ++i) q = q.derivative();
  const int e_k = m - d - k;
  if (e_k >= 0)
    q = divide_by_root_power(q, T(1), e_k);
  else
    q = q * Polynomial<T>::root_power(T(1), -e_k);
  T denom(1);  // (m-t)! / (m-k)!
  for (int i = m - k + 1; i <= m - t; ++i) denom *= T(i);
  return q * (T(1) / denom);
}

}  // namespace detail

// Expectation of det(xI - sum over S of column outer products) over uniform
// size-k supersets S of `subset`, for isotropic B.  Monic of degree d.
template <typename T>
Polynomial<T> jacobi_family_poly(const MatrixX<T>& B, const std::vector<int>& subset, int k,
                                 double iso_tol = 1e-8) {
  const int d = static_cast<int>(B.rows());
  const int m = static_cast<int>(B.cols());
  const int t = static_cast<int>(subset.size());
  if (!(0 <= t && t <= k && k <= d && d < m))
    throw std::invalid_argument("jacobi_family_poly: requires |subset| <= k <= d < m");
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      if (subset[a] == subset[b])
        throw std::invalid_argument("jacobi_family_poly: repeated index in subset");
  if (!is_isotropic(B, iso_tol))
    throw std::invalid_argument("jacobi_family_poly: matrix is not isotropic");
  Polynomial<T> p = char_poly(outer_product_sum(B, subset));
  return detail::subset_average_lift(p, t, d, k, m);
}

// The empty-subset case in closed form; depends only on (d, k, m):
// (m-k)!/m! * (x-1)^-(m-d-k) * D^k [ (x-1)^(m-d) * x^d ].
template <typename T>
Polynomial<T> jacobi_expected_poly(int d, int k, int m) {
  if (!(0 <= k && k <= d && d < m))
    throw std::invalid_argument("jacobi_expected_poly: requires 0 <= k <= d < m");
  return detail::subset_average_lift(Polynomial<T>::monomial(d), 0, d, k, m);
}

// D^d [ (x-1)^(m-k) x^k ]: a degree m-d polynomial whose least root equals
// the least nonzero root of jacobi_expected_poly(d, k, m).
template <typename T>
Polynomial<T> jacobi_root_poly(int d, int k, int m) {
  if (!(1 <= k && k <= d && d < m))
    throw std::invalid_argument("jacobi_root_poly: requires 1 <= k <= d < m");
  Polynomial<T> q =
      Polynomial<T>::root_power(T(1), m - k) * Polynomial<T>::monomial(k);
  for (int i = 0; i < d; ++i) q = q.derivative();
  return q;
}

// Jacobi polynomial P_n^(a,b) via the Rodrigues form
// (-1)^n / (2^n n!) (1-x)^-a (1+x)^-b D^n [ (1-x)^(a+n) (1+x)^(b+n) ],
// integer a, b >= 0.
template <typename T>
Polynomial<T> jacobi_poly(int n, int a, int b) {
  if (n < 0 || a < 0 || b < 0)
    throw std::invalid_argument("jacobi_poly: requires n, a, b >= 0");
  // (1-x)^(a+n) = (-1)^(a+n) (x-1)^(a+n)
  Polynomial<T> q = Polynomial<T>::root_power(T(1), a + n) *
                    Polynomial<T>::root_power(T(-1), b + n);
  if ((a + n) % 2 == 1) q = -q;
  for (int i = 0; i < n; ++i) q = q.derivative();
  q = divide_by_root_power(q, T(1), a);
  if (a % 2 == 1) q = -q;
  q = divide_by_root_power(q, T(-1), b);
  T scale(1);
  for (int i = 1; i <= n; ++i) scale = scale / T(2 * i);
  if (n % 2 == 1) scale = -scale;
  return q * scale;
}

}  // namespace rinv
