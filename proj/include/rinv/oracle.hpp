#pragma once

// Brute-force reference paths.  Everything here is definitional -- direct
// enumeration over draws or subsets -- so the closed-form modules can be
// checked against it.  Enumerations are hard-capped and throw rather than
// silently truncate.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rinv/charpoly.hpp"
#include "rinv/matrix.hpp"
#include "rinv/polynomial.hpp"
#include "rinv/roots.hpp"

namespace rinv {

namespace detail {

inline std::uint64_t power_count(int m, int k, std::uint64_t cap) {
  std::uint64_t acc = 1;
  for (int i = 0; i < k; ++i) {
    if (acc > cap / static_cast<std::uint64_t>(m)) return cap + 1;
    acc *= static_cast<std::uint64_t>(m);
  }
  return acc;
}

template <typename Fn>
void for_each_sequence(int m, int k, Fn&& fn) {
  std::vector<int> seq(static_cast<std::size_t>(k), 0);
  while (true) {
    fn(seq);
    int i = k - 1;
    while (i >= 0 && seq[static_cast<std::size_t>(i)] == m - 1) {
      seq[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++seq[static_cast<std::size_t>(i)];
  }
}

template <typename Fn>
void for_each_subset(int m, int k, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace detail

// Average of det(xI - sum of column outer products) over all m^k index
// sequences (with replacement) or all size-k subsets (without).
template <typename T>
Polynomial<T> enumerate_expected(const MatrixX<T>& B, int k, SamplingMode mode,
                                 std::uint64_t cap = 1000000) {
  const int d = static_cast<int>(B.rows());
  const int m = static_cast<int>(B.cols());
  if (d < 1 || m < 1) throw std::invalid_argument("enumerate_expected: empty matrix");
  if (k < 0 || k > d) throw std::invalid_argument("enumerate_expected: requires 0 <= k <= d");
  std::uint64_t count = 0;
  Polynomial<T> sum = Polynomial<T>::zero();
  auto add = [&](const std::vector<int>& pick) {
    sum += char_poly(outer_product_sum(B, pick));
    ++count;
  };
  if (mode == SamplingMode::WithReplacement) {
    if (detail::power_count(m, k, cap) > cap)
      throw std::invalid_argument("enumerate_expected: m^k exceeds enumeration cap");
    detail::for_each_sequence(m, k, add);
  } else {
    if (k > m)
      throw std::invalid_argument("enumerate_expected: k exceeds m without replacement");
    if (detail::binomial_count(m, k, cap) > cap)
      throw std::invalid_argument("enumerate_expected: C(m,k) exceeds enumeration cap");
    detail::for_each_subset(m, k, add);
  }
  return sum * (T(1) / T(static_cast<long long>(count)));
}

// Exhaustive best size-k subset by least eigenvalue of the column Gram
// matrix.  Ties resolve to the lexicographically smallest subset.
inline std::pair<std::vector<int>, double> brute_force_best_subset(
    const MatrixXd& B, int k, std::uint64_t cap = 1000000,
    double eps = kDefaultRootEps) {
  const int d = static_cast<int>(B.rows());
  const int m = static_cast<int>(B.cols());
  if (k < 1 || k > std::min(d, m))
    throw std::invalid_argument("brute_force_best_subset: requires 1 <= k <= min(d, m)");
  if (detail::binomial_count(m, k, cap) > cap)
    throw std::invalid_argument("brute_force_best_subset: C(m,k) exceeds enumeration cap");
  std::vector<int> best;
  double best_val = 0;
  detail::for_each_subset(m, k, [&](const std::vector<int>& idx) {
    double v = smallest_root(char_poly(gram_of_columns(B, idx)), eps);
    if (best.empty() || v > best_val + eps) {
      best = idx;
      best_val = v;
    }
  });
  return {best, best_val};
}

// Do the given polynomials admit a common interlacing?  Necessary-and-
// sufficient test used here: every pairwise convex combination on the grid
// must be real-rooted.  Requires equal degrees and positive leading
// coefficients.
inline bool common_interlacing_check(const std::vector<Polynomial<double>>& polys,
                                     const std::vector<double>& grid = {0.0, 0.25, 0.5,
                                                                        0.75, 1.0},
                                     double tol = kSquarefreeTol) {
  if (polys.empty()) throw std::invalid_argument("common_interlacing_check: no polynomials");
  const int deg = polys.front().degree();
  for (const auto& p : polys) {
    if (p.degree() != deg)
      throw std::invalid_argument("common_interlacing_check: mixed degrees");
    if (!(p.leading() > 0))
      throw std::invalid_argument("common_interlacing_check: non-positive leading coefficient");
  }
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = i; j < polys.size(); ++j)
      for (double mu : grid) {
        Polynomial<double> mix = mu * polys[i] + (1.0 - mu) * polys[j];
        if (!is_real_rooted(mix, tol)) return false;
      }
  return true;
}

// The defining property of the family's root polynomial: the k-th largest
// root of the expectation is attained or exceeded by some leaf, and not all
// leaves exceed it.  Verified here by full enumeration of the leaves.
template <typename T>
bool kth_root_leaf_check(const MatrixX<T>& B, int k, SamplingMode mode, double tol = 1e-8,
                         std::uint64_t cap = 1000000, double eps = kDefaultRootEps) {
  const int d = static_cast<int>(B.rows());
  const int m = static_cast<int>(B.cols());
  if (k < 1 || k > d) throw std::invalid_argument("kth_root_leaf_check: requires 1 <= k <= d");
  Polynomial<T> root_poly = enumerate_expected(B, k, mode, cap);
  auto lambda_k = [&](const Polynomial<T>& f) {
    Polynomial<double> q = divide_by_x_power(to_double_poly(f), d - k);
    return smallest_root(q, eps);
  };
  double root_val = lambda_k(root_poly);
  double best = 0, worst = 0;
  bool first = true;
  auto visit = [&](const std::vector<int>& pick) {
    double v = lambda_k(char_poly(outer_product_sum(B, pick)));
    if (first) {
      best = worst = v;
      first = false;
    } else {
      best = std::max(best, v);
      worst = std::min(worst, v);
    }
  };
  if (mode == SamplingMode::WithReplacement) {
    if (detail::power_count(m, k, cap) > cap)
      throw std::invalid_argument("kth_root_leaf_check: m^k exceeds enumeration cap");
    detail::for_each_sequence(m, k, visit);
  } else {
    if (k > m)
      throw std::invalid_argument("kth_root_leaf_check: k exceeds m without replacement");
    if (detail::binomial_count(m, k, cap) > cap)
      throw std::invalid_argument("kth_root_leaf_check: C(m,k) exceeds enumeration cap");
    detail::for_each_subset(m, k, visit);
  }
  return best >= root_val - tol && worst <= root_val + tol;
}

}  // namespace rinv
