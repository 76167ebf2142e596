#pragma once

// Dense univariate polynomials over an arbitrary scalar (double for the
// numeric paths, Rational for the exact ones).  Coefficients are stored in
// ascending order of degree and kept canonical: the vector is never empty
// and carries no trailing zero except for the zero polynomial itself, which
// is represented as {0} with degree 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rinv/scalar.hpp"

namespace rinv {

template <typename T>
class Polynomial {
 public:
  Polynomial() : c_{T(0)} {}
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(T(0));
    canon();
  }
  Polynomial(std::initializer_list<T> coeffs) : Polynomial(std::vector<T>(coeffs)) {}

  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() { return Polynomial{T(1)}; }

  // coeff * x^n
  static Polynomial monomial(int n, const T& coeff = T(1)) {
    if (n < 0) throw std::invalid_argument("Polynomial::monomial: negative exponent");
    std::vector<T> c(static_cast<std::size_t>(n) + 1, T(0));
    c.back() = coeff;
    return Polynomial(std::move(c));
  }

  // (x - r_1)(x - r_2)...(x - r_n)
  static Polynomial from_roots(const std::vector<T>& roots) {
    Polynomial p = one();
    for (const T& r : roots) p *= Polynomial{-r, T(1)};
    return p;
  }

  // (x - c)^n
  static Polynomial root_power(const T& c, int n) {
    if (n < 0) throw std::invalid_argument("Polynomial::root_power: negative exponent");
    Polynomial p = one();
    const Polynomial lin{-c, T(1)};
    for (int i = 0; i < n; ++i) p *= lin;
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 1 && c_[0] == T(0); }
  const std::vector<T>& coeffs() const { return c_; }
  const T& leading() const { return c_.back(); }

  // Coefficient of x^i; zero outside the stored range.
  T coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return T(0);
    return c_[static_cast<std::size_t>(i)];
  }

  T operator()(const T& x) const {
    T acc = c_.back();
    for (auto it = c_.rbegin() + 1; it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() == 1) return zero();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = T(static_cast<long long>(i)) * c_[i];
    return Polynomial(std::move(d));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    canon();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    canon();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial& operator*=(const T& s) {
    for (T& c : c_) c *= s;
    canon();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const {
    Polynomial r(*this);
    for (T& c : r.c_) c = -c;
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
      T c = p.coeff(i);
      if (c == T(0) && !(first && i == 0)) continue;
      if (!first) os << " + ";
      os << '(' << c << ')';
      if (i >= 1) os << "*x";
      if (i >= 2) os << '^' << i;
      first = false;
    }
    return os;
  }

 private:
  std::vector<T> c_;

  void canon() {
    while (c_.size() > 1 && c_.back() == T(0)) c_.pop_back();
  }
};

template <typename T>
Polynomial<T> derivative(const Polynomial<T>& p) {
  return p.derivative();
}

// p - lambda * p'.  Degree and leading coefficient are untouched.
template <typename T>
Polynomial<T> one_minus_lambda_deriv(const Polynomial<T>& p, const T& lambda) {
  return p - lambda * p.derivative();
}

template <typename T>
double max_abs_coeff(const Polynomial<T>& p) {
  double m = 0;
  for (const T& c : p.coeffs()) m = std::max(m, std::abs(to_double(c)));
  return m;
}

template <typename T>
Polynomial<T> multiply_by_x_power(const Polynomial<T>& p, int j) {
  if (j < 0) throw std::invalid_argument("multiply_by_x_power: negative exponent");
  if (p.is_zero() || j == 0) return p;
  std::vector<T> c(static_cast<std::size_t>(j), T(0));
  c.insert(c.end(), p.coeffs().begin(), p.coeffs().end());
  return Polynomial<T>(std::move(c));
}

// Exact quotient p / x^j.  The low-order coefficients being dropped must
// vanish: a residue above rel_tol * ||p||_inf signals a computational bug
// upstream, not bad input.
template <typename T>
Polynomial<T> divide_by_x_power(const Polynomial<T>& p, int j, double rel_tol = 1e-8) {
  if (j < 0) throw std::invalid_argument("divide_by_x_power: negative exponent");
  if (j == 0) return p;
  const double cut = rel_tol * std::max(1e-300, max_abs_coeff(p));
  for (int i = 0; i < j; ++i)
    if (std::abs(to_double(p.coeff(i))) > cut)
      throw std::logic_error("divide_by_x_power: non-vanishing remainder at x^" +
                             std::to_string(i));
  if (p.degree() < j) return Polynomial<T>::zero();
  std::vector<T> c(p.coeffs().begin() + j, p.coeffs().end());
  return Polynomial<T>(std::move(c));
}

// Exact quotient p / (x - c)^n by repeated synthetic division; each stage's
// scalar remainder must vanish (same contract as divide_by_x_power).
template <typename T>
Polynomial<T> divide_by_root_power(const Polynomial<T>& p, const T& c, int n,
                                   double rel_tol = 1e-8) {
  if (n < 0) throw std::invalid_argument("divide_by_root_power: negative exponent");
  Polynomial<T> q = p;
  const double cut = rel_tol * std::max(1e-300, max_abs_coeff(p));
  for (int rep = 0; rep < n; ++rep) {
    if (q.degree() < 1) {
      if (std::abs(to_double(q.coeff(0))) > cut)
        throw std::logic_error("divide_by_root_power: non-vanishing remainder");
      return Polynomial<T>::zero();
    }
    const auto& a = q.coeffs();
    std::vector<T> b(a.size() - 1);
    T carry = a.back();
    for (int i = static_cast<int>(a.size()) - 2; i >= 0; --i) {
      b[static_cast<std::size_t>(i)] = carry;
      carry = a[static_cast<std::size_t>(i)] + c * carry;
    }
    if (std::abs(to_double(carry)) > cut)
      throw std::logic_error("divide_by_root_power: non-vanishing remainder");
    q = Polynomial<T>(std::move(b));
  }
  return q;
}

// p(a*x + b)
template <typename T>
Polynomial<T> compose_affine(const Polynomial<T>& p, const T& a, const T& b) {
  const Polynomial<T> lin{b, a};
  Polynomial<T> acc{p.leading()};
  for (int i = p.degree() - 1; i >= 0; --i) acc = acc * lin + Polynomial<T>{p.coeff(i)};
  return acc;
}

template <typename T>
Polynomial<double> to_double_poly(const Polynomial<T>& p) {
  std::vector<double> c(p.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = to_double(p.coeffs()[i]);
  return Polynomial<double>(std::move(c));
}

}  // namespace rinv
