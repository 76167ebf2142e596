#pragma once

// Arbitrary-precision rational scalar for the exact evaluation paths.
//
// A plain value type over boost::multiprecision::cpp_int rather than
// cpp_rational: keeping the operators value-returning and the type free of
// expression templates lets it serve directly as an Eigen matrix scalar.

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "rinv/scalar.hpp"

namespace rinv {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
 public:
  Rational() = default;
  Rational(int n) : num_(n) {}
  Rational(long n) : num_(n) {}
  Rational(long long n) : num_(n) {}
  Rational(BigInt n) : num_(std::move(n)) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

  double to_double() const {
    namespace mp = boost::multiprecision;
    return mp::cpp_rational(num_, den_).convert_to<double>();
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r(*this);
    r.num_ = -r.num_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;  // denominators positive
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend Rational abs(const Rational& a) { return a.num_ < 0 ? -a : a; }

  // Accepts "p/q", integers, plain decimals and scientific notation; every
  // such token denotes an exact rational (e.g. "0.1" is one tenth).
  static std::optional<Rational> try_parse(std::string_view s) {
    auto digits_to_int = [](std::string_view t, BigInt& out) -> bool {
      if (t.empty()) return false;
      out = 0;
      for (char c : t) {
        if (c < '0' || c > '9') return false;
        out = out * 10 + (c - '0');
      }
      return true;
    };
    // strip surrounding whitespace
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
      s.remove_suffix(1);
    if (s.empty()) return std::nullopt;

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      auto parse_int = [&](std::string_view t, BigInt& out) -> bool {
        bool neg = false;
        if (!t.empty() && (t.front() == '+' || t.front() == '-')) {
          neg = t.front() == '-';
          t.remove_prefix(1);
        }
        if (!digits_to_int(t, out)) return false;
        if (neg) out = -out;
        return true;
      };
      BigInt p, q;
      if (!parse_int(s.substr(0, slash), p) || !parse_int(s.substr(slash + 1), q) || q == 0)
        return std::nullopt;
      return Rational(std::move(p), std::move(q));
    }

    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    std::string_view mantissa = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      std::string_view es = s.substr(e + 1);
      bool eneg = false;
      if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
        eneg = es.front() == '-';
        es.remove_prefix(1);
      }
      BigInt ev;
      if (!digits_to_int(es, ev) || ev > 4096) return std::nullopt;
      exp10 = ev.convert_to<long>();
      if (eneg) exp10 = -exp10;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (char c : mantissa) {
      if (c == '.') {
        if (seen_dot) return std::nullopt;
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        seen_digit = true;
        if (seen_dot) ++frac_digits;
      } else {
        return std::nullopt;
      }
    }
    if (!seen_digit) return std::nullopt;
    BigInt p;
    digits_to_int(digits, p);
    if (neg) p = -p;
    long shift = exp10 - frac_digits;
    BigInt den = 1, num = std::move(p);
    if (shift >= 0)
      num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift));
    else
      den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift));
    return Rational(std::move(num), std::move(den));
  }

  static Rational parse(std::string_view s) {
    auto r = try_parse(s);
    if (!r) throw std::invalid_argument("Rational: cannot parse \"" + std::string(s) + "\"");
    return *r;
  }

  std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num_;
    if (r.den_ != 1) os << '/' << r.den_;
    return os;
  }

 private:
  BigInt num_{0}, den_{1};

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }
};

inline double to_double(const Rational& r) { return r.to_double(); }

}  // namespace rinv

namespace Eigen {

template <>
struct NumTraits<rinv::Rational> {
  using Real = rinv::Rational;
  using NonInteger = rinv::Rational;
  using Literal = rinv::Rational;
  using Nested = rinv::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 30,
  };
  static inline Real epsilon() { return rinv::Rational(0); }
  static inline Real dummy_precision() { return rinv::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
