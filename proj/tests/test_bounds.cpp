#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "rinv/bounds.hpp"
#include "rinv/expected.hpp"
#include "rinv/instance.hpp"
#include "rinv/roots.hpp"
#include "test_util.hpp"

using rinv::MatrixXd;
using rinv::SymmetricMatrix;

TEST_CASE("ss_bound on the identity") {
  MatrixXd I4 = MatrixXd::Identity(4, 4);
  // stable rank 4, squared norm 4, m = 4: (1 - sqrt(k/4))^2
  CHECK(rinv::ss_bound(I4, 1) == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(rinv::ss_bound(I4, 4) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK_THROWS_AS(rinv::ss_bound(I4, 5), std::invalid_argument);
  CHECK_THROWS_AS(rinv::ss_bound(I4, -1), std::invalid_argument);
}

TEST_CASE("schatten_bound on a fixed spectrum") {
  MatrixXd A(3, 3);
  A << 2, 0, 0, 0, 1, 0, 0, 0, 1;
  // kappa = 16/6, bound = (1 - sqrt(6/16))^2 * 4/4 = 11/8 - sqrt(6)/2
  CHECK(rinv::schatten_bound(SymmetricMatrix<double>{A}, 1, 4) ==
        doctest::Approx(1.375 - std::sqrt(6.0) / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(rinv::schatten_bound(SymmetricMatrix<double>{A}, 3, 4),
                  std::invalid_argument);
}

TEST_CASE("muroot_bound equals schatten_bound through the covariance") {
  for (std::uint64_t seed : {1, 5, 9}) {
    MatrixXd B = rinv::nonisotropic_instance(3, 6, seed);
    SymmetricMatrix<double> M{MatrixXd(B * B.transpose() / 6.0)};
    double kap = rinv::kappa(M);
    for (int k = 1; k <= 3 && k <= kap; ++k)
      CHECK(rinv::muroot_bound(M, k) ==
            doctest::Approx(rinv::schatten_bound(rinv::gram_bbt(B), k, 6)).epsilon(1e-13));
  }
  SymmetricMatrix<double> Q{MatrixXd(MatrixXd::Identity(4, 4) / 4.0)};
  CHECK(rinv::muroot_bound(Q, 1) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("schatten_bound dominates ss_bound") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    MatrixXd B = rinv::nonisotropic_instance(4, 7, seed);
    double sr = rinv::stable_rank(B);
    for (int k = 1; k <= sr; ++k)
      CHECK(rinv::schatten_bound(rinv::gram_bbt(B), k, 7) >=
            rinv::ss_bound(B, k) - 1e-12);
  }
}

TEST_CASE("krasikov_bound sits below the true least Laguerre zero") {
  for (int k = 1; k <= 6; ++k)
    for (int alpha = 0; alpha <= 6; ++alpha) {
      double bound = rinv::krasikov_bound(k, alpha);
      double truth =
          rinv::smallest_root(rinv::associated_laguerre<double>(k, alpha));
      CHECK(bound > 0.0);
      CHECK(bound <= truth + 1e-9);
      // not wildly loose either
      CHECK(bound >= 0.5 * truth);
    }
  CHECK_THROWS_AS(rinv::krasikov_bound(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rinv::krasikov_bound(2, -1.0), std::invalid_argument);
}

TEST_CASE("krasikov_bound strictly improves the square-root gap") {
  for (int d = 2; d <= 10; ++d)
    for (int k = 1; k < d; ++k) {
      double gap = std::sqrt(double(d)) - std::sqrt(double(k));
      CHECK(rinv::krasikov_bound(k, double(d - k)) > gap * gap);
    }
}

TEST_CASE("jacobi_bound sits below the true least zero") {
  for (int m = 2; m <= 10; ++m)
    for (int d = 1; d < m; ++d)
      for (int k = 1; k <= d; ++k) {
        double truth = rinv::smallest_root(rinv::jacobi_root_poly<double>(d, k, m));
        CHECK(rinv::jacobi_bound(d, k, m) <= truth + 1e-9);
      }
}

TEST_CASE("jacobi_bound edge values") {
  CHECK(rinv::jacobi_bound(3, 3, 7) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rinv::jacobi_bound(3, 0, 7) == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
  CHECK_THROWS_AS(rinv::jacobi_bound(3, 4, 7), std::invalid_argument);
  CHECK_THROWS_AS(rinv::jacobi_bound(4, 2, 3), std::invalid_argument);
}

TEST_CASE("improved_jacobi_bound strictly dominates jacobi_bound") {
  for (int m = 2; m <= 12; ++m)
    for (int d = 1; d < m; ++d)
      for (int k = 1; k <= d; ++k)
        CHECK(rinv::improved_jacobi_bound(d, k, m) > rinv::jacobi_bound(d, k, m));
  CHECK_THROWS_AS(rinv::improved_jacobi_bound(3, 2, 3), std::invalid_argument);
}

TEST_CASE("u_alpha peaks at alpha_star with value jacobi_bound") {
  CHECK(rinv::u_alpha(0.0, 6, 3, 2) == doctest::Approx(0.0).epsilon(1e-15));
  for (int m = 2; m <= 12; ++m)
    for (int d = 1; d < m; ++d)
      for (int k = 1; k <= d; ++k) {
        double astar = rinv::alpha_star(m, d, k);
        CHECK(astar >= 0.0);
        double peak = rinv::u_alpha(astar, m, d, k);
        CHECK(peak == doctest::Approx(rinv::jacobi_bound(d, k, m)).epsilon(1e-11));
        if (astar > 1e-9) {
          // local maximum
          CHECK(rinv::u_alpha(astar * 0.9, m, d, k) <= peak + 1e-12);
          CHECK(rinv::u_alpha(astar * 1.1, m, d, k) <= peak + 1e-12);
        }
      }
  CHECK_THROWS_AS(rinv::u_alpha(-0.1, 6, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(rinv::alpha_star(3, 3, 1), std::invalid_argument);
}

TEST_CASE("make_bounds_report on an isotropic instance") {
  MatrixXd B = rinv::isotropic_instance(3, 6, 12);
  rinv::BoundsReport r = rinv::make_bounds_report(B, 2);
  CHECK(r.d == 3);
  CHECK(r.m == 6);
  CHECK(r.k == 2);
  CHECK(r.isotropic);
  CHECK(r.guarantees_applicable);
  CHECK(r.srank == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(r.frob_sq == doctest::Approx(3.0).epsilon(1e-8));
  REQUIRE(r.ss.has_value());
  CHECK(*r.ss == doctest::Approx(rinv::ss_bound(B, 2)).epsilon(1e-13));
  REQUIRE(r.schatten.has_value());
  REQUIRE(r.jacobi.has_value());
  CHECK(*r.jacobi == doctest::Approx(rinv::jacobi_bound(3, 2, 6)).epsilon(1e-13));
  REQUIRE(r.improved_jacobi.has_value());
  REQUIRE(r.krasikov_over_m.has_value());
  CHECK(*r.krasikov_over_m ==
        doctest::Approx(rinv::krasikov_bound(2, 1.0) / 6.0).epsilon(1e-13));
  CHECK_FALSE(r.ss_vacuous);
  CHECK_FALSE(r.jacobi_vacuous);
  CHECK_FALSE(r.achieved_sigma_min_sq.has_value());
}

TEST_CASE("make_bounds_report flags the inapplicable regime") {
  MatrixXd B(2, 2);
  B << 1, 0, 0, 0.1;  // stable rank just above 1
  rinv::BoundsReport r = rinv::make_bounds_report(B, 2);
  CHECK_FALSE(r.guarantees_applicable);
  CHECK_FALSE(r.ss.has_value());
  CHECK_FALSE(r.schatten.has_value());
  REQUIRE(r.jacobi.has_value());  // k = d = m: the bound exists and is zero
  CHECK(r.jacobi_vacuous);
  CHECK_FALSE(r.improved_jacobi.has_value());
  REQUIRE(r.krasikov_over_m.has_value());
}

TEST_CASE("make_bounds_report marks vacuous boundary bounds") {
  MatrixXd I2 = MatrixXd::Identity(2, 2);
  rinv::BoundsReport r = rinv::make_bounds_report(I2, 2);
  REQUIRE(r.ss.has_value());
  CHECK(r.ss_vacuous);
  REQUIRE(r.schatten.has_value());
  CHECK(r.schatten_vacuous);
  CHECK_THROWS_AS(rinv::make_bounds_report(I2, 0), std::invalid_argument);
  CHECK_THROWS_AS(rinv::make_bounds_report(I2, 3), std::invalid_argument);
}
