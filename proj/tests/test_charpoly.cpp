#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "rinv/charpoly.hpp"
#include "rinv/instance.hpp"
#include "rinv/rational.hpp"
#include "test_util.hpp"

using rinv::BivariatePolynomial;
using rinv::MatrixX;
using rinv::MatrixXd;
using rinv::Polynomial;
using rinv::Rational;
using rinv::SymmetricMatrix;
using PQ = Polynomial<Rational>;
using MQ = MatrixX<Rational>;

namespace {

MQ rational_sym(int d, std::uint64_t seed) {
  MQ a = rinv::rational_matrix(d, d, seed);
  return MQ(a + MQ(a.transpose()));
}

}  // namespace

TEST_CASE("char_poly on small fixed matrices") {
  CHECK(rinv::char_poly(SymmetricMatrix<double>(MatrixXd::Identity(2, 2))) ==
        Polynomial<double>{1.0, -2.0, 1.0});
  MatrixXd d12 = MatrixXd::Zero(2, 2);
  d12(0, 0) = 1;
  d12(1, 1) = 2;
  CHECK(rinv::char_poly(SymmetricMatrix<double>(d12)) == Polynomial<double>{2.0, -3.0, 1.0});
  CHECK(rinv::char_poly(SymmetricMatrix<double>(MatrixXd::Zero(3, 3))) ==
        Polynomial<double>::monomial(3));
  MatrixXd pair(2, 2);
  pair << 2, 1, 1, 2;  // eigenvalues 1 and 3
  CHECK(rinv::char_poly(SymmetricMatrix<double>(pair)) == Polynomial<double>{3.0, -4.0, 1.0});
}

TEST_CASE("char_poly matches the direct 2x2 and 3x3 expansions exactly") {
  std::mt19937_64 seeds(5);
  for (int trial = 0; trial < 6; ++trial) {
    MQ a2 = rational_sym(2, seeds());
    PQ p = rinv::char_poly(SymmetricMatrix<Rational>(a2));
    Rational tr = a2(0, 0) + a2(1, 1);
    Rational det = a2(0, 0) * a2(1, 1) - a2(0, 1) * a2(1, 0);
    CHECK(p == PQ{det, -tr, Rational(1)});

    MQ a3 = rational_sym(3, seeds());
    PQ q = rinv::char_poly(SymmetricMatrix<Rational>(a3));
    Rational tr3 = a3(0, 0) + a3(1, 1) + a3(2, 2);
    Rational e2 = a3(0, 0) * a3(1, 1) - a3(0, 1) * a3(1, 0) + a3(0, 0) * a3(2, 2) -
                  a3(0, 2) * a3(2, 0) + a3(1, 1) * a3(2, 2) - a3(1, 2) * a3(2, 1);
    Rational det3 = a3(0, 0) * (a3(1, 1) * a3(2, 2) - a3(1, 2) * a3(2, 1)) -
                    a3(0, 1) * (a3(1, 0) * a3(2, 2) - a3(1, 2) * a3(2, 0)) +
                    a3(0, 2) * (a3(1, 0) * a3(2, 1) - a3(1, 1) * a3(2, 0));
    CHECK(q == PQ{-det3, e2, -tr3, Rational(1)});
  }
}

TEST_CASE("SymmetricMatrix rejects asymmetric input") {
  MatrixXd a(2, 2);
  a << 1, 2, 3, 4;
  CHECK_THROWS_AS(SymmetricMatrix<double>{a}, std::invalid_argument);
  MatrixXd r(2, 3);
  CHECK_THROWS_AS(SymmetricMatrix<double>{r}, std::invalid_argument);
  // asymmetry within tolerance is symmetrized away
  MatrixXd b(2, 2);
  b << 1, 1 + 1e-14, 1, 1;
  SymmetricMatrix<double> sb(b);
  CHECK(sb.mat()(0, 1) == sb.mat()(1, 0));
}

TEST_CASE("elementary_symmetric reads off the eigenvalue sums") {
  MatrixXd d123 = MatrixXd::Zero(3, 3);
  d123(0, 0) = 1;
  d123(1, 1) = 2;
  d123(2, 2) = 3;
  auto e = rinv::elementary_symmetric(SymmetricMatrix<double>(d123));
  REQUIRE(e.size() == 4);
  CHECK(e[0] == 1.0);
  CHECK(e[1] == 6.0);
  CHECK(e[2] == 11.0);
  CHECK(e[3] == 6.0);
}

TEST_CASE("determinant from the characteristic polynomial") {
  MatrixXd a(2, 2);
  a << 1, 2, 3, 4;
  CHECK(rinv::determinant(a) == doctest::Approx(-2.0));
  MQ b(3, 3);
  b << Rational(1), Rational(2), Rational(0), Rational(0), Rational(1), Rational(4),
      Rational(1), Rational(0), Rational(1);
  CHECK(rinv::determinant(b) == Rational(9));
  CHECK(rinv::determinant(MQ(MQ::Identity(4, 4) * Rational(2))) == Rational(16));
}

TEST_CASE("cauchy_binet identity") {
  auto [l1, r1] = rinv::cauchy_binet_check(MatrixXd(MatrixXd::Identity(2, 2)), 1);
  CHECK(l1 == doctest::Approx(2.0));
  CHECK(r1 == doctest::Approx(2.0));
  auto [l2, r2] = rinv::cauchy_binet_check(MatrixXd(MatrixXd::Identity(2, 2)), 2);
  CHECK(l2 == doctest::Approx(1.0));
  CHECK(r2 == doctest::Approx(1.0));
  std::mt19937_64 seeds(17);
  for (int trial = 0; trial < 4; ++trial) {
    MQ B = rinv::rational_matrix(2 + int(trial % 2), 4 + trial, seeds());
    for (int ell = 0; ell <= 2; ++ell) {
      auto [lhs, rhs] = rinv::cauchy_binet_check(B, ell);
      CHECK(lhs == rhs);
    }
  }
  CHECK_THROWS_AS(rinv::cauchy_binet_check(MatrixXd(MatrixXd::Identity(2, 2)), 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(rinv::cauchy_binet_check(MatrixXd(MatrixXd::Ones(3, 30)), 3, 100),
                  std::invalid_argument);
}

TEST_CASE("bivariate_det structure on C = 0, M = I") {
  SymmetricMatrix<Rational> C(MQ(MQ::Zero(2, 2)));
  SymmetricMatrix<Rational> M(MQ(MQ::Identity(2, 2)));
  auto F = rinv::bivariate_det(C, M);  // det(xI + tI) = (x + t)^2
  CHECK(F.degree_x() == 2);
  CHECK(F.coeff_t(2) == PQ::one());
  CHECK(F.coeff_t(1) == PQ{Rational(0), Rational(2)});
  CHECK(F.coeff_t(0) == PQ{Rational(0), Rational(0), Rational(1)});
  CHECK(F.at_t(Rational(3)) == PQ{Rational(9), Rational(6), Rational(1)});
  // (1 - d/dt)(x+t)^2 at t=0 is x^2 - 2x; twice gives x^2 - 4x + 2
  CHECK(F.one_minus_dt_power(0) == PQ{Rational(0), Rational(0), Rational(1)});
  CHECK(F.one_minus_dt_power(1) == PQ{Rational(0), Rational(-2), Rational(1)});
  CHECK(F.one_minus_dt_power(2) == PQ{Rational(2), Rational(-4), Rational(1)});
}

TEST_CASE("bivariate_det specializes to the shifted characteristic polynomial") {
  std::mt19937_64 seeds(19);
  for (int d : {1, 2, 3, 4}) {
    MQ c = rational_sym(d, seeds());
    MQ m = rational_sym(d, seeds());
    SymmetricMatrix<Rational> C(c), M(m);
    auto F = rinv::bivariate_det(C, M);
    CHECK(F.coeff_t(d) == PQ::one());
    for (int i = 0; i <= d; ++i) CHECK(F.coeff_t(i).degree() <= d - i);
    for (int tv : {-2, 0, 1, 5, 9}) {
      Rational t(tv);
      PQ direct = rinv::char_poly(SymmetricMatrix<Rational>(MQ(c - m * t)));
      CHECK(F.at_t(t) == direct);
    }
  }
}

TEST_CASE("stable_rank") {
  CHECK(rinv::stable_rank(MatrixXd::Identity(3, 3)) == doctest::Approx(3.0));
  MatrixXd d21 = MatrixXd::Zero(2, 2);
  d21(0, 0) = 2;
  d21(1, 1) = 1;
  CHECK(rinv::stable_rank(d21) == doctest::Approx(1.25));
  MatrixXd rank1(2, 2);
  rank1 << 1, 1, 1, 1;
  CHECK(rinv::stable_rank(rank1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(rinv::stable_rank(MatrixXd::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("stable_rank4 and kappa") {
  CHECK(rinv::stable_rank4(MatrixXd::Identity(4, 4)) == doctest::Approx(4.0));
  MatrixXd d211 = MatrixXd::Zero(3, 3);
  d211(0, 0) = 2;
  d211(1, 1) = 1;
  d211(2, 2) = 1;
  // singular values (2,1,1): kappa of the 4-1-1 eigenvalue profile is 36/18
  CHECK(rinv::stable_rank4(d211) == doctest::Approx(2.0));
  CHECK(rinv::kappa(SymmetricMatrix<double>(d211)) == doctest::Approx(8.0 / 3.0));
  CHECK(rinv::kappa(SymmetricMatrix<Rational>(MQ(MQ::Identity(3, 3) * Rational(2)))) ==
        Rational(3));
  CHECK_THROWS_AS(rinv::kappa(SymmetricMatrix<double>(MatrixXd::Zero(2, 2))),
                  std::invalid_argument);
}

TEST_CASE("stable_rank4 never falls below stable_rank") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    MatrixXd B = rinv::gaussian_matrix(3, 6, seed);
    CHECK(rinv::stable_rank4(B) >= rinv::stable_rank(B) - 1e-9);
  }
}
