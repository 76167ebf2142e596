#pragma once

// Real-root machinery over double coefficients: Sturm-chain counting, root
// isolation by bisection, and the barrier-function helpers built on top.
//
// All chains are built from the squarefree part of the input.  Floating-point
// Euclidean remainders accumulate noise, so every remainder is rescaled to
// unit max-coefficient and coefficients below a relative cutoff are dropped
// before the next division.  The cutoff is the `tol` parameter below; the
// bisection target width is the separate `eps` parameter.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rinv/polynomial.hpp"

namespace rinv {

inline constexpr double kDefaultRootEps = 1e-9;
inline constexpr double kSquarefreeTol = 1e-12;

// Half-open bracket (lo, hi] holding `count` roots.
struct RootInterval {
  double lo;
  double hi;
  int count;
};

namespace detail {

inline Polynomial<double> normalized(const Polynomial<double>& p) {
  double m = max_abs_coeff(p);
  if (m == 0) return p;
  return p * (1.0 / m);
}

// Zero out coefficients below an absolute cut.  The chain code keeps every
// working polynomial normalized to unit max-coefficient, so an absolute cut
// of `tol` is exactly "below tol relative to the largest coefficient" of the
// polynomial the remainder came from -- which is what makes a remainder that
// cancelled completely (leaving only rounding noise) collapse to zero.
inline Polynomial<double> strip_below(const Polynomial<double>& p, double cut) {
  std::vector<double> c = p.coeffs();
  for (double& v : c)
    if (std::abs(v) <= cut) v = 0.0;
  return Polynomial<double>(std::move(c));
}

inline std::pair<Polynomial<double>, Polynomial<double>> poly_divmod(
    const Polynomial<double>& a, const Polynomial<double>& b) {
  if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
  std::vector<double> r = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {Polynomial<double>::zero(), a};
  std::vector<double> q(static_cast<std::size_t>(da - db) + 1, 0.0);
  const double lead = b.leading();
  for (int i = da; i >= db; --i) {
    double f = r[static_cast<std::size_t>(i)] / lead;
    q[static_cast<std::size_t>(i - db)] = f;
    if (f == 0.0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(j);
    r[static_cast<std::size_t>(i)] = 0.0;  // eliminate cancellation residue exactly
  }
  r.resize(static_cast<std::size_t>(db));
  return {Polynomial<double>(std::move(q)), Polynomial<double>(std::move(r))};
}

inline Polynomial<double> poly_gcd(Polynomial<double> a, Polynomial<double> b, double tol) {
  a = normalized(a);
  b = normalized(b);
  b = strip_below(b, tol);
  while (!b.is_zero()) {
    auto [q, r] = poly_divmod(a, b);
    (void)q;
    r = strip_below(r, tol);  // a, b have unit max-coefficient
    a = std::move(b);
    b = normalized(std::move(r));
  }
  return a;
}

inline Polynomial<double> squarefree_part(const Polynomial<double>& p, double tol) {
  Polynomial<double> a = normalized(p);
  if (a.degree() <= 1) return a;
  Polynomial<double> g = poly_gcd(a, a.derivative(), tol);
  if (g.degree() == 0) return a;
  auto [q, r] = poly_divmod(a, g);
  (void)r;
  return normalized(q);
}

struct SturmChain {
  std::vector<Polynomial<double>> seq;

  // `q` must already be squarefree.
  static SturmChain build(const Polynomial<double>& q, double tol) {
    SturmChain ch;
    ch.seq.push_back(normalized(q));
    if (q.degree() >= 1) {
      Polynomial<double> d = normalized(q.derivative());
      ch.seq.push_back(d);
      while (ch.seq.back().degree() >= 1) {
        const auto& s0 = ch.seq[ch.seq.size() - 2];
        const auto& s1 = ch.seq.back();
        auto [quot, rem] = poly_divmod(s0, s1);
        (void)quot;
        rem = strip_below(-rem, tol);  // chain entries have unit max-coefficient
        if (rem.is_zero()) break;
        ch.seq.push_back(normalized(rem));
      }
    }
    return ch;
  }

  int sign_changes(double x) const {
    int changes = 0, prev = 0;
    for (const auto& p : seq) {
      double v = p(x);
      int s = (v > 0) - (v < 0);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
    return changes;
  }

  // Number of distinct roots in (lo, hi].
  int count(double lo, double hi) const {
    int c = sign_changes(lo) - sign_changes(hi);
    return c > 0 ? c : 0;
  }
};

}  // namespace detail

// All roots of p lie strictly inside (-bound, bound).
inline double cauchy_root_bound(const Polynomial<double>& p) {
  if (p.is_zero() || p.degree() < 1)
    throw std::invalid_argument("cauchy_root_bound: needs degree >= 1");
  double m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, std::abs(p.coeff(i)));
  return 1.0 + m / std::abs(p.leading());
}

// Distinct real roots of p in (lo, hi].  Rejects the zero polynomial and
// empty/inverted intervals.
inline int sturm_root_count(const Polynomial<double>& p, double lo, double hi,
                            double tol = kSquarefreeTol) {
  if (p.is_zero()) throw std::invalid_argument("sturm_root_count: zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("sturm_root_count: requires lo < hi");
  if (p.degree() == 0) return 0;
  auto chain = detail::SturmChain::build(detail::squarefree_part(p, tol), tol);
  return chain.count(lo, hi);
}

// Ascending distinct real roots, each refined to within eps.
inline std::vector<double> distinct_real_roots(const Polynomial<double>& p,
                                               double eps = kDefaultRootEps,
                                               double tol = kSquarefreeTol) {
  if (p.is_zero()) throw std::invalid_argument("distinct_real_roots: zero polynomial");
  if (p.degree() == 0) return {};
  Polynomial<double> q = detail::squarefree_part(p, tol);
  if (q.degree() == 0) return {};
  auto chain = detail::SturmChain::build(q, tol);
  double bound = cauchy_root_bound(q);
  std::vector<double> out;

  std::function<void(double, double, int)> isolate = [&](double lo, double hi, int cnt) {
    if (cnt <= 0) return;
    if (cnt == 1) {
      while (hi - lo > eps) {
        double mid = 0.5 * (lo + hi);
        if (chain.count(lo, mid) >= 1)
          hi = mid;
        else
          lo = mid;
      }
      out.push_back(0.5 * (lo + hi));
      return;
    }
    if (hi - lo <= eps) {
      // cluster tighter than the resolution target: report the midpoint
      for (int i = 0; i < cnt; ++i) out.push_back(0.5 * (lo + hi));
      return;
    }
    double mid = 0.5 * (lo + hi);
    int left = chain.count(lo, mid);
    isolate(lo, mid, left);
    isolate(mid, hi, cnt - left);
  };
  isolate(-bound, bound, chain.count(-bound, bound));
  std::sort(out.begin(), out.end());
  return out;
}

// Real roots repeated per multiplicity, ascending.  Peels one multiplicity
// layer per pass: the distinct roots of the squarefree part, then recurse on
// gcd(p, p').
inline std::vector<double> real_roots_with_multiplicity(const Polynomial<double>& p,
                                                        double eps = kDefaultRootEps,
                                                        double tol = kSquarefreeTol) {
  if (p.is_zero())
    throw std::invalid_argument("real_roots_with_multiplicity: zero polynomial");
  std::vector<double> out;
  Polynomial<double> g = detail::normalized(p);
  int guard = p.degree() + 1;
  while (g.degree() >= 1 && guard-- > 0) {
    Polynomial<double> q = detail::squarefree_part(g, tol);
    auto roots = distinct_real_roots(q, eps, tol);
    out.insert(out.end(), roots.begin(), roots.end());
    Polynomial<double> g2 = detail::poly_gcd(g, g.derivative(), tol);
    if (g2.degree() >= g.degree()) break;
    g = std::move(g2);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// True iff p splits over the reals (roots counted with multiplicity reach
// the degree).  `tol` is the coefficient-cleanup threshold used before each
// gcd chain; expose it because near-multiple roots are exactly where the
// squarefree reduction gets delicate.
inline bool is_real_rooted(const Polynomial<double>& p, double tol = kSquarefreeTol) {
  if (p.is_zero()) throw std::invalid_argument("is_real_rooted: zero polynomial");
  if (p.degree() == 0) return true;
  int found = 0;
  Polynomial<double> g = detail::normalized(p);
  int guard = p.degree() + 1;
  while (g.degree() >= 1 && guard-- > 0) {
    Polynomial<double> q = detail::squarefree_part(g, tol);
    if (q.degree() >= 1) {
      auto chain = detail::SturmChain::build(q, tol);
      double bound = cauchy_root_bound(q);
      found += chain.count(-bound, bound);
    }
    Polynomial<double> g2 = detail::poly_gcd(g, g.derivative(), tol);
    if (g2.degree() >= g.degree()) break;
    g = std::move(g2);
  }
  return found == p.degree();
}

// Least real root, within eps.  Throws std::domain_error when p has none.
inline double smallest_root(const Polynomial<double>& p, double eps = kDefaultRootEps,
                            double tol = kSquarefreeTol) {
  if (p.is_zero()) throw std::invalid_argument("smallest_root: zero polynomial");
  if (p.degree() == 0) throw std::domain_error("smallest_root: constant polynomial");
  Polynomial<double> q = detail::squarefree_part(p, tol);
  auto chain = detail::SturmChain::build(q, tol);
  double bound = cauchy_root_bound(q);
  double lo = -bound, hi = bound;
  if (chain.count(lo, hi) <= 0) throw std::domain_error("smallest_root: no real roots");
  while (hi - lo > eps) {
    double mid = 0.5 * (lo + hi);
    if (chain.count(lo, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// j-th largest real root counted with multiplicity (j = 1 is the largest).
// Intended for real-rooted inputs; throws std::domain_error when fewer than
// j real roots exist.
inline double kth_largest_root(const Polynomial<double>& p, int j,
                               double eps = kDefaultRootEps, double tol = kSquarefreeTol) {
  if (p.is_zero()) throw std::invalid_argument("kth_largest_root: zero polynomial");
  if (j < 1 || j > p.degree())
    throw std::invalid_argument("kth_largest_root: index out of range");
  auto roots = real_roots_with_multiplicity(p, eps, tol);
  if (static_cast<int>(roots.size()) < j)
    throw std::domain_error("kth_largest_root: fewer real roots than requested");
  return roots[roots.size() - static_cast<std::size_t>(j)];
}

// Phi_p(x) = -p'(x)/p(x), the upper barrier of p at x.
inline double barrier_phi(const Polynomial<double>& p, double x) {
  if (p.is_zero()) throw std::invalid_argument("barrier_phi: zero polynomial");
  double v = p(x);
  if (v == 0.0) throw std::domain_error("barrier_phi: evaluation at a root");
  return -p.derivative()(x) / v;
}

// amin_alpha(p): least root of p + alpha * p', the point below the roots of
// p where the barrier reaches 1/alpha.
inline double alpha_min(const Polynomial<double>& p, double alpha,
                        double eps = kDefaultRootEps) {
  if (!(alpha > 0)) throw std::invalid_argument("alpha_min: alpha must be positive");
  return smallest_root(p + alpha * p.derivative(), eps);
}

}  // namespace rinv
