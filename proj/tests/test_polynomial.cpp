#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "rinv/polynomial.hpp"
#include "rinv/rational.hpp"
#include "test_util.hpp"

using rinv::Polynomial;
using rinv::Rational;
using PD = Polynomial<double>;
using PQ = Polynomial<Rational>;

TEST_CASE("canonical form") {
  PD z;
  CHECK(z.is_zero());
  CHECK(z.degree() == 0);
  CHECK(PD{0.0, 0.0, 0.0}.is_zero());
  CHECK(PD{1.0, 2.0, 0.0}.degree() == 1);
  CHECK(PD::monomial(3).degree() == 3);
  CHECK(PD::monomial(0, 0.0).is_zero());
}

TEST_CASE("evaluation and arithmetic") {
  PD p{2.0, -3.0, 1.0};  // x^2 - 3x + 2
  CHECK(p(1.0) == 0.0);
  CHECK(p(2.0) == 0.0);
  CHECK(p(0.0) == 2.0);
  CHECK((p + PD{-2.0}).coeff(0) == 0.0);
  CHECK((p - p).is_zero());
  PD q = p * PD{-1.0, 1.0};  // (x^2-3x+2)(x-1)
  CHECK(q.degree() == 3);
  CHECK(q(1.0) == 0.0);
  CHECK(q(3.0) == doctest::Approx(2.0 * 2.0));  // (9-9+2)(2)
  CHECK((2.0 * p).leading() == 2.0);
}

TEST_CASE("derivative") {
  // d/dx (x^3 - 2x) = 3x^2 - 2
  PD p{0.0, -2.0, 0.0, 1.0};
  CHECK(p.derivative() == PD{-2.0, 0.0, 3.0});
  CHECK(PD{5.0}.derivative().is_zero());
}

TEST_CASE("one_minus_lambda_deriv keeps degree and leading coefficient") {
  // (1 - d/dx) x^2 = x^2 - 2x
  CHECK(rinv::one_minus_lambda_deriv(PD::monomial(2), 1.0) == PD{0.0, -2.0, 1.0});
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    PD p = rinv_test::random_real_rooted(rng, 1 + int(rng() % 6));
    PD r = rinv::one_minus_lambda_deriv(p, 0.3);
    CHECK(r.degree() == p.degree());
    CHECK(r.leading() == p.leading());
  }
}

TEST_CASE("product rule holds exactly over rationals") {
  std::mt19937_64 rng(11);
  auto rand_poly = [&](int deg) {
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i)
      c.emplace_back(rinv::BigInt(int(rng() % 11) - 5), rinv::BigInt(1 + int(rng() % 4)));
    c.back() = Rational(1);
    return PQ(c);
  };
  for (int trial = 0; trial < 10; ++trial) {
    PQ p = rand_poly(2 + int(rng() % 4));
    PQ q = rand_poly(1 + int(rng() % 4));
    CHECK((p * q).derivative() == p.derivative() * q + p * q.derivative());
  }
}

TEST_CASE("x-power shifts round trip") {
  PQ p{Rational(2), Rational(-3), Rational(1)};
  PQ shifted = rinv::multiply_by_x_power(p, 3);
  CHECK(shifted.degree() == 5);
  CHECK(rinv::divide_by_x_power(shifted, 3) == p);
  CHECK_THROWS_AS(rinv::divide_by_x_power(p, 1), std::logic_error);
}

TEST_CASE("root-power division round trips") {
  PQ p{Rational(1), Rational(4), Rational(1)};
  PQ prod = p * PQ::root_power(Rational(1), 4);
  CHECK(rinv::divide_by_root_power(prod, Rational(1), 4) == p);
  // (x-1)^2 / (x-2) leaves a remainder
  CHECK_THROWS_AS(rinv::divide_by_root_power(PQ::root_power(Rational(1), 2), Rational(2), 1),
                  std::logic_error);
}

TEST_CASE("root_power expands binomially") {
  CHECK(PQ::root_power(Rational(1), 3) ==
        PQ{Rational(-1), Rational(3), Rational(-3), Rational(1)});
  CHECK(PQ::root_power(Rational(-1), 2) == PQ{Rational(1), Rational(2), Rational(1)});
  CHECK(PQ::root_power(Rational(5), 0) == PQ::one());
}

TEST_CASE("compose_affine") {
  // p(x) = x^2 + 1 composed with 2x - 1: (2x-1)^2 + 1 = 4x^2 - 4x + 2
  PQ p{Rational(1), Rational(0), Rational(1)};
  CHECK(rinv::compose_affine(p, Rational(2), Rational(-1)) ==
        PQ{Rational(2), Rational(-4), Rational(4)});
  // composing with x + b then x - b is the identity
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Rational> c;
    for (int i = 0; i <= 4; ++i) c.emplace_back(int(rng() % 9) - 4);
    PQ q(c);
    Rational b(int(rng() % 7) - 3);
    CHECK(rinv::compose_affine(rinv::compose_affine(q, Rational(1), b), Rational(1), -b) == q);
  }
}

TEST_CASE("from_roots places the roots") {
  PD p = PD::from_roots({1.0, 2.0, 3.0});
  CHECK(p.degree() == 3);
  CHECK(p.leading() == 1.0);
  CHECK(p(1.0) == doctest::Approx(0.0));
  CHECK(p(2.5) == doctest::Approx(1.5 * 0.5 * -0.5));
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/4") == Rational(rinv::BigInt(3), rinv::BigInt(4)));
  CHECK(Rational::parse("-6/8") == Rational(rinv::BigInt(-3), rinv::BigInt(4)));
  CHECK(Rational::parse("0.1") == Rational(rinv::BigInt(1), rinv::BigInt(10)));
  CHECK(Rational::parse("-2.5e-1") == Rational(rinv::BigInt(-1), rinv::BigInt(4)));
  CHECK(Rational::parse("12") == Rational(12));
  CHECK(Rational::parse(" 7/2 ") == Rational(rinv::BigInt(7), rinv::BigInt(2)));
  CHECK(!Rational::try_parse("1/0").has_value());
  CHECK(!Rational::try_parse("abc").has_value());
  CHECK(!Rational::try_parse("1.2.3").has_value());
  CHECK(Rational::parse("2/4").str() == "1/2");
  CHECK(rinv::to_double(Rational(rinv::BigInt(1), rinv::BigInt(4))) == 0.25);
}

TEST_CASE("rational comparisons and arithmetic") {
  Rational a(rinv::BigInt(1), rinv::BigInt(3)), b(rinv::BigInt(1), rinv::BigInt(2));
  CHECK(a < b);
  CHECK(a + a + a == Rational(1));
  CHECK(b * Rational(2) == Rational(1));
  CHECK(a / b == Rational(rinv::BigInt(2), rinv::BigInt(3)));
  CHECK(abs(-b) == b);
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
}
