#pragma once

// Greedy deterministic column selection.  At each step the candidate that
// maximizes the k-th largest root of the conditional expected characteristic
// polynomial is chosen; interlacing guarantees that root never decreases, so
// the final selection inherits the root lower bound of the unconditioned
// expectation.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rinv/charpoly.hpp"
#include "rinv/expected.hpp"
#include "rinv/matrix.hpp"
#include "rinv/oracle.hpp"
#include "rinv/polynomial.hpp"
#include "rinv/roots.hpp"

namespace rinv {

struct SelectionStep {
  int index;
  double lambda_k;  // k-th largest root of the chosen conditional polynomial
};

struct SelectionResult {
  std::vector<int> indices;
  double sigma_min_sq = 0;
  std::vector<SelectionStep> root_trace;
  SamplingMode mode = SamplingMode::WithReplacement;
  double epsilon = kDefaultRootEps;
};

// Least eigenvalue of the Gram matrix of the selected columns: the certified
// squared least singular value of the selection.
inline double certify(const MatrixXd& B, const std::vector<int>& indices,
                      double eps = kDefaultRootEps) {
  if (indices.empty()) throw std::invalid_argument("certify: empty selection");
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = a + 1; b < indices.size(); ++b)
      if (indices[a] == indices[b])
        throw std::invalid_argument("certify: repeated index");
  return smallest_root(char_poly(gram_of_columns(B, indices)), eps);
}

namespace detail {

// k-th largest root of a degree-d conditional expectation: strip the x^(d-k)
// factor and take the least root of the monic degree-k quotient (all of
// whose roots are nonnegative).
template <typename T>
double conditional_lambda_k(const Polynomial<T>& f, int d, int k, double eps) {
  Polynomial<double> q = divide_by_x_power(to_double_poly(f), d - k);
  return smallest_root(q, eps);
}

// Average of char_poly over all size-k supersets of `base` drawn from the
// columns not in `base`.  Definitional fallback for the without-replacement
// regimes the closed-form lift does not cover.
template <typename T>
Polynomial<T> superset_average(const MatrixX<T>& B, const std::vector<int>& base, int k,
                               std::uint64_t cap) {
  const int m = static_cast<int>(B.cols());
  const int t = static_cast<int>(base.size());
  std::vector<int> rest;
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  for (int i : base) used[static_cast<std::size_t>(i)] = true;
  for (int i = 0; i < m; ++i)
    if (!used[static_cast<std::size_t>(i)]) rest.push_back(i);
  if (binomial_count(static_cast<int>(rest.size()), k - t, cap) > cap)
    throw std::invalid_argument("superset_average: completion count exceeds cap");
  Polynomial<T> sum = Polynomial<T>::zero();
  std::uint64_t count = 0;
  for_each_subset(static_cast<int>(rest.size()), k - t, [&](const std::vector<int>& pick) {
    std::vector<int> full = base;
    for (int p : pick) full.push_back(rest[static_cast<std::size_t>(p)]);
    sum += char_poly(outer_product_sum(B, full));
    ++count;
  });
  return sum * (T(1) / T(static_cast<long long>(count)));
}

}  // namespace detail

// Greedy selection in the with-replacement model.  Candidates already chosen
// are excluded so the result is a usable set of k distinct columns; ties
// break to the smallest index, making the procedure fully deterministic.
template <typename T>
SelectionResult select_with_replacement(const MatrixX<T>& B, int k,
                                        double eps = kDefaultRootEps) {
  const int d = static_cast<int>(B.rows());
  const int m = static_cast<int>(B.cols());
  if (d < 1 || m < 1) throw std::invalid_argument("select_with_replacement: empty matrix");
  if (!(1 <= k && k <= d && d <= m))
    throw std::invalid_argument("select_with_replacement: requires 1 <= k <= d <= m");
  SelectionResult res;
  res.mode = SamplingMode::WithReplacement;
  res.epsilon = eps;
  SymmetricMatrix<T> M(MatrixX<T>(B * B.transpose()) / T(m));
  MatrixX<T> C = MatrixX<T>::Zero(d, d);
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  for (int step = 0; step < k; ++step) {
    const int remaining = k - step - 1;
    int best_idx = -1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      VectorX<T> u = B.col(i);
      SymmetricMatrix<T> Ci(MatrixX<T>(C + u * u.transpose()));
      Polynomial<T> f = remaining == 0
                            ? char_poly(Ci)
                            : bivariate_det(Ci, M).one_minus_dt_power(remaining);
      double v = detail::conditional_lambda_k(f, d, k, eps);
      if (v > best_val) {
        best_val = v;
        best_idx = i;
      }
    }
    VectorX<T> u = B.col(best_idx);
    C += MatrixX<T>(u * u.transpose());
    used[static_cast<std::size_t>(best_idx)] = true;
    res.indices.push_back(best_idx);
    res.root_trace.push_back({best_idx, best_val});
  }
  res.sigma_min_sq = certify(to_double_matrix(B), res.indices, eps);
  return res;
}

// Greedy selection in the without-replacement model; requires isotropic B.
// Children are scored by the closed-form subset-average lift where it
// applies (m - d - t >= 0 at the child) and by definitional enumeration of
// completions otherwise.
template <typename T>
SelectionResult select_without_replacement(const MatrixX<T>& B, int k,
                                           double eps = kDefaultRootEps,
                                           double iso_tol = 1e-8,
                                           std::uint64_t enum_cap = 1000000) {
  const int d = static_cast<int>(B.rows());
  const int m = static_cast<int>(B.cols());
  if (d < 1 || m < 1) throw std::invalid_argument("select_without_replacement: empty matrix");
  if (!(1 <= k && k <= d && d <= m))
    throw std::invalid_argument("select_without_replacement: requires 1 <= k <= d <= m");
  if (!is_isotropic(B, iso_tol))
    throw std::invalid_argument("select_without_replacement: matrix is not isotropic");
  SelectionResult res;
  res.mode = SamplingMode::WithoutReplacement;
  res.epsilon = eps;
  for (int step = 0; step < k; ++step) {
    const int t_child = step + 1;
    const bool closed_form = (d < m) && (m - d - t_child >= 0);
    int best_idx = -1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (std::find(res.indices.begin(), res.indices.end(), i) != res.indices.end())
        continue;
      std::vector<int> child = res.indices;
      child.push_back(i);
      Polynomial<T> f;
      if (closed_form) {
        Polynomial<T> p = char_poly(outer_product_sum(B, child));
        f = detail::subset_average_lift(p, t_child, d, k, m);
      } else {
        f = detail::superset_average(B, child, k, enum_cap);
      }
      double v = detail::conditional_lambda_k(f, d, k, eps);
      if (v > best_val) {
        best_val = v;
        best_idx = i;
      }
    }
    res.indices.push_back(best_idx);
    res.root_trace.push_back({best_idx, best_val});
  }
  res.sigma_min_sq = certify(to_double_matrix(B), res.indices, eps);
  return res;
}

}  // namespace rinv
