#pragma once

// Self-checks over built-in instances: every cross-module identity and
// guarantee the library relies on, runnable at two sizes.  Each check stops
// at its first violation and records both sides of the failed identity.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rinv/bounds.hpp"
#include "rinv/charpoly.hpp"
#include "rinv/expected.hpp"
#include "rinv/instance.hpp"
#include "rinv/io.hpp"
#include "rinv/matrix.hpp"
#include "rinv/oracle.hpp"
#include "rinv/polynomial.hpp"
#include "rinv/rational.hpp"
#include "rinv/roots.hpp"
#include "rinv/select.hpp"

namespace rinv {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;  // first violated identity, both sides
};

namespace detail {

class Checker {
 public:
  explicit Checker(std::string name) { res_.name = std::move(name); }

  void expect(bool ok, const std::string& what) {
    if (res_.pass && !ok) {
      res_.pass = false;
      res_.detail = what;
    }
  }

  void expect_ge(double lhs, double rhs, double tol, const std::string& label) {
    if (!res_.pass || lhs >= rhs - tol) return;
    std::ostringstream os;
    os.precision(17);
    os << label << ": " << lhs << " < " << rhs << " (slack " << tol << ")";
    res_.pass = false;
    res_.detail = os.str();
  }

  void expect_close(double lhs, double rhs, double tol, const std::string& label) {
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (!res_.pass || std::abs(lhs - rhs) <= tol * scale) return;
    std::ostringstream os;
    os.precision(17);
    os << label << ": " << lhs << " != " << rhs << " (tol " << tol << ")";
    res_.pass = false;
    res_.detail = os.str();
  }

  template <typename T>
  void expect_poly_close(const Polynomial<T>& lhs, const Polynomial<T>& rhs, double tol,
                         const std::string& label) {
    if (!res_.pass) return;
    const int deg = std::max(lhs.degree(), rhs.degree());
    double scale = std::max({1.0, max_abs_coeff(lhs), max_abs_coeff(rhs)});
    for (int i = 0; i <= deg; ++i) {
      double a = to_double(lhs.coeff(i));
      double b = to_double(rhs.coeff(i));
      if (std::abs(a - b) <= tol * scale) continue;
      std::ostringstream os;
      os << label << ": coefficient " << i << " differs: " << lhs.str() << " vs "
         << rhs.str();
      res_.pass = false;
      res_.detail = os.str();
      return;
    }
  }

  template <typename T>
  void expect_poly_eq(const Polynomial<T>& lhs, const Polynomial<T>& rhs,
                      const std::string& label) {
    if (!res_.pass || lhs == rhs) return;
    res_.pass = false;
    res_.detail = label + ": " + lhs.str() + " != " + rhs.str();
  }

  template <typename Fn>
  void guarded(Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      expect(false, std::string("exception: ") + e.what());
    }
  }

  CheckResult take() { return std::move(res_); }

 private:
  CheckResult res_;
};

inline Polynomial<double> random_rooted_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  std::vector<double> roots(static_cast<std::size_t>(degree));
  for (double& r : roots) r = unif(rng);
  return Polynomial<double>::from_roots(roots);
}

}  // namespace detail

// Run every built-in check; `full` widens the instance grids.
inline std::vector<CheckResult> run_verification(bool full) {
  using PD = Polynomial<double>;
  using PQ = Polynomial<Rational>;
  std::vector<CheckResult> out;
  auto run = [&](const char* name, auto&& body) {
    detail::Checker c(name);
    c.guarded([&] { body(c); });
    out.push_back(c.take());
  };

  const int poly_trials = full ? 40 : 12;
  const std::vector<double> shift_grid =
      full ? std::vector<double>{0.25, 1.0, 4.0} : std::vector<double>{0.5, 2.0};
  const std::vector<std::uint64_t> seeds =
      full ? std::vector<std::uint64_t>{1, 2, 3} : std::vector<std::uint64_t>{1};

  run("smoothing-barrier-shift", [&](detail::Checker& c) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < poly_trials; ++trial) {
      PD p = detail::random_rooted_poly(rng, 2 + static_cast<int>(rng() % 5));
      for (double lambda : shift_grid)
        for (double alpha : shift_grid) {
          PD q = one_minus_lambda_deriv(p, lambda);
          c.expect(is_real_rooted(q), "smoothed polynomial lost real-rootedness: " + q.str());
          double shift = 1.0 / (1.0 / lambda + 1.0 / alpha);
          c.expect_ge(alpha_min(q, alpha), alpha_min(p, alpha) + shift, 1e-8,
                      "alpha_min shift under 1 - lambda d/dx");
        }
    }
  });

  run("derivative-barrier-shift", [&](detail::Checker& c) {
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < poly_trials; ++trial) {
      PD p = detail::random_rooted_poly(rng, 2 + static_cast<int>(rng() % 5));
      for (double alpha : shift_grid)
        c.expect_ge(alpha_min(p.derivative(), alpha), alpha_min(p, alpha) + alpha, 1e-8,
                    "alpha_min shift under d/dx");
    }
  });

  run("alpha-min-below-least-root", [&](detail::Checker& c) {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < poly_trials; ++trial) {
      PD p = detail::random_rooted_poly(rng, 1 + static_cast<int>(rng() % 6));
      for (double alpha : shift_grid)
        c.expect_ge(smallest_root(p), alpha_min(p, alpha) + alpha, 1e-8,
                    "alpha_min + alpha vs least root");
    }
  });

  run("sturm-count-additivity", [&](detail::Checker& c) {
    std::mt19937_64 rng(104);
    for (int trial = 0; trial < poly_trials; ++trial) {
      PD p = detail::random_rooted_poly(rng, 2 + static_cast<int>(rng() % 5));
      double a = -4.0, b = 0.25, cc = 4.0;
      int left = sturm_root_count(p, a, b);
      int right = sturm_root_count(p, b, cc);
      int whole = sturm_root_count(p, a, cc);
      std::ostringstream os;
      os << "count(a,b) + count(b,c) = " << left << " + " << right << " vs count(a,c) = "
         << whole << " for " << p.str();
      c.expect(left + right == whole, os.str());
    }
  });

  run("smallest-vs-kth-largest-root", [&](detail::Checker& c) {
    std::mt19937_64 rng(105);
    for (int trial = 0; trial < poly_trials; ++trial) {
      int deg = 1 + static_cast<int>(rng() % 6);
      PD p = detail::random_rooted_poly(rng, deg);
      c.expect_close(smallest_root(p), kth_largest_root(p, deg), 5e-9,
                     "smallest_root vs kth_largest_root at the bottom");
    }
  });

  run("charpoly-kills-eigenvalues", [&](detail::Checker& c) {
    MatrixXd A = MatrixXd::Zero(3, 3);
    A(0, 0) = 1.0;
    A(1, 1) = 2.5;
    A(2, 2) = -0.75;
    PD p = char_poly(SymmetricMatrix<double>(A));
    for (double ev : {1.0, 2.5, -0.75})
      c.expect_close(p(ev), 0.0, 1e-8, "char_poly at a diagonal eigenvalue");
  });

  run("bivariate-specialization", [&](detail::Checker& c) {
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    for (std::uint64_t seed : seeds) {
      MatrixXd G = gaussian_matrix(3, 3, 900 + seed);
      SymmetricMatrix<double> C(MatrixXd(G + G.transpose()));
      MatrixXd H = gaussian_matrix(3, 5, 950 + seed);
      SymmetricMatrix<double> M(MatrixXd(H * H.transpose() / 5.0));
      auto biv = bivariate_det(C, M);
      for (int probe = 0; probe < 10; ++probe) {
        double t = unif(rng);
        SymmetricMatrix<double> S(MatrixXd(C.mat() - t * M.mat()));
        c.expect_poly_close(biv.at_t(t), char_poly(S), 1e-8,
                            "det(xI - C + tM) specialized at t");
      }
    }
  });

  run("cauchy-binet-sums", [&](detail::Checker& c) {
    for (std::uint64_t seed : seeds) {
      MatrixXd B = gaussian_matrix(3, 5, 700 + seed);
      for (int ell = 0; ell <= 3; ++ell) {
        auto [lhs, rhs] = cauchy_binet_check(B, ell);
        c.expect_close(lhs, rhs, 1e-8, "elementary symmetric vs subset determinant sum");
      }
    }
  });

  run("srank4-dominates-srank", [&](detail::Checker& c) {
    for (std::uint64_t seed : seeds) {
      MatrixXd B = nonisotropic_instance(4, 7, seed);
      c.expect_ge(stable_rank4(B), stable_rank(B), 1e-9, "srank4 vs srank");
      MatrixXd G = gaussian_matrix(3, 6, seed);
      c.expect_ge(stable_rank4(G), stable_rank(G), 1e-9, "srank4 vs srank");
    }
  });

  run("isotropic-expectation-collapse", [&](detail::Checker& c) {
    for (std::uint64_t seed : seeds) {
      MatrixXd B = isotropic_instance(3, 6, seed);
      for (int k = 1; k <= 3; ++k)
        c.expect_poly_close(conditional_expected(B, {}, k),
                            laguerre_operator_poly<double>(3, k, 6), 1e-8,
                            "conditional expectation vs operator form");
    }
  });

  run("conditional-expectation-enumeration", [&](detail::Checker& c) {
    for (std::uint64_t seed : seeds) {
      MatrixX<Rational> B = rational_matrix(3, 4, seed);
      for (int k = 0; k <= 3; ++k) {
        c.expect_poly_eq(conditional_expected(B, {}, k),
                         enumerate_expected(B, k, SamplingMode::WithReplacement),
                         "conditional expectation vs enumeration");
        if (k >= 1) {
          for (int j = 1; j <= (full ? k : std::min(k, 1)); ++j) {
            std::vector<int> pinned;
            for (int i = 0; i < j; ++i) pinned.push_back((i * 2 + static_cast<int>(seed)) % 4);
            PQ sum = PQ::zero();
            long long count = 0;
            detail::for_each_sequence(4, k - j, [&](const std::vector<int>& rest) {
              std::vector<int> pick = pinned;
              pick.insert(pick.end(), rest.begin(), rest.end());
              sum += char_poly(outer_product_sum(B, pick));
              ++count;
            });
            c.expect_poly_eq(conditional_expected(B, pinned, k),
                             sum * Rational(1, count),
                             "pinned conditional expectation vs enumeration");
          }
        }
      }
    }
  });

  run("subset-family-averaging", [&](detail::Checker& c) {
    MatrixX<Rational> B = rational_isotropic_instance(3, 6, 0);
    for (int k = 2; k <= 3; ++k)
      for (const std::vector<int>& base :
           {std::vector<int>{}, std::vector<int>{0}, std::vector<int>{1, 3}}) {
        if (static_cast<int>(base.size()) >= k) continue;
        PQ avg = PQ::zero();
        int n = 0;
        for (int i = 0; i < 6; ++i) {
          if (std::find(base.begin(), base.end(), i) != base.end()) continue;
          std::vector<int> child = base;
          child.push_back(i);
          avg += jacobi_family_poly(B, child, k);
          ++n;
        }
        c.expect_poly_eq(jacobi_family_poly(B, base, k), avg * Rational(1, n),
                         "subset expectation vs average of children");
      }
  });

  run("expected-monic-real-rooted", [&](detail::Checker& c) {
    for (std::uint64_t seed : seeds) {
      MatrixXd N = nonisotropic_instance(4, 6, seed);
      MatrixXd J = isotropic_instance(3, 6, seed);
      for (int k = 1; k <= 3; ++k) {
        for (PD f : {conditional_expected(N, {}, k), jacobi_family_poly(J, {}, k)}) {
          c.expect_close(f.leading(), 1.0, 1e-9, "leading coefficient");
          c.expect(is_real_rooted(f), "expectation not real-rooted: " + f.str());
        }
        c.expect(conditional_expected(N, {}, k).degree() == 4, "unexpected degree");
      }
    }
  });

  run("expected-root-beats-gap-bound", [&](detail::Checker& c) {
    for (std::uint64_t seed : seeds)
      for (auto [d, m] : {std::pair<int, int>{3, 6}, std::pair<int, int>{4, 8}}) {
        MatrixXd B = isotropic_instance(d, m, seed);
        for (int k = 1; k < d; ++k) {
          PD f = conditional_expected(B, {}, k);
          double gap = std::sqrt(double(d)) - std::sqrt(double(k));
          c.expect_ge(detail::conditional_lambda_k(f, d, k, kDefaultRootEps),
                      gap * gap / m, -1e-12, "k-th largest root vs gap bound");
        }
      }
  });

  run("covariance-eigenvalue-form", [&](detail::Checker& c) {
    for (std::uint64_t seed : seeds) {
      MatrixXd B = nonisotropic_instance(3, 5, seed);
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(B * B.transpose() / 5.0);
      std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 3);
      for (int k = 1; k <= 3; ++k)
        c.expect_poly_close(enumerate_expected(B, k, SamplingMode::WithReplacement),
                            nonisotropic_expected(ev, k), 1e-8,
                            "enumeration vs covariance eigenvalue form");
    }
  });

  run("subset-tree-averaging-enumerated", [&](detail::Checker& c) {
    const int m = 5, k = full ? 3 : 2;
    MatrixXd B = isotropic_instance(3, m, 42);
    std::vector<std::vector<int>> nodes{{}};
    for (int i = 0; i < m; ++i) nodes.push_back({i});
    if (k == 3)
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) nodes.push_back({i, j});
    for (const auto& base : nodes) {
      if (static_cast<int>(base.size()) >= k) continue;
      PD parent = detail::superset_average(B, base, k, 100000);
      PD avg = PD::zero();
      int n = 0;
      for (int i = 0; i < m; ++i) {
        if (std::find(base.begin(), base.end(), i) != base.end()) continue;
        std::vector<int> child = base;
        child.push_back(i);
        avg += detail::superset_average(B, child, k, 100000);
        ++n;
      }
      c.expect_poly_close(parent, avg * (1.0 / n), 1e-8,
                          "enumerated node vs average of enumerated children");
    }
  });

  run("subset-derivative-recurrence", [&](detail::Checker& c) {
    // sum over children of p_{T+i}  ==  (x-1)^-(m-d-t-1) D [ (x-1)^(m-d-t) p_T ]
    MatrixX<Rational> B = rational_isotropic_instance(3, 6, 1);
    const int d = 3, m = 6;
    for (const std::vector<int>& base :
         {std::vector<int>{}, std::vector<int>{2}, std::vector<int>{0, 4}}) {
      const int t = static_cast<int>(base.size());
      PQ p = char_poly(outer_product_sum(B, base));
      PQ lhs = PQ::zero();
      for (int i = 0; i < m; ++i) {
        if (std::find(base.begin(), base.end(), i) != base.end()) continue;
        std::vector<int> child = base;
        child.push_back(i);
        lhs += char_poly(outer_product_sum(B, child));
      }
      PQ rhs = (p * PQ::root_power(Rational(1), m - d - t)).derivative();
      rhs = divide_by_root_power(rhs, Rational(1), m - d - t - 1);
      c.expect_poly_eq(lhs, rhs, "children sum vs derivative form");
    }
  });

  run("selection-meets-applicable-bounds", [&](detail::Checker& c) {
    for (std::uint64_t seed : seeds) {
      struct Case {
        MatrixXd B;
        bool iso;
      };
      std::vector<Case> cases{{isotropic_instance(4, 8, seed), true},
                              {nonisotropic_instance(3, 6, seed), false}};
      if (full) cases.push_back({isotropic_instance(6, 12, seed), true});
      for (const Case& cs : cases) {
        const int d = static_cast<int>(cs.B.rows());
        for (int k = 1; k < d; ++k) {
          BoundsReport rep = make_bounds_report(cs.B, k);
          if (!rep.guarantees_applicable) continue;
          SelectionResult with = select_with_replacement(cs.B, k);
          if (rep.ss) c.expect_ge(with.sigma_min_sq, *rep.ss, 1e-7, "sigma^2 vs srank bound");
          if (rep.schatten)
            c.expect_ge(with.sigma_min_sq, *rep.schatten, 1e-7, "sigma^2 vs schatten bound");
          if (cs.iso && rep.krasikov_over_m)
            c.expect_ge(with.sigma_min_sq, *rep.krasikov_over_m, 1e-7,
                        "sigma^2 vs Laguerre zero bound");
          if (cs.iso) {
            SelectionResult wo = select_without_replacement(cs.B, k);
            if (rep.ss) c.expect_ge(wo.sigma_min_sq, *rep.ss, 1e-7, "sigma^2 vs srank bound");
            if (rep.jacobi)
              c.expect_ge(wo.sigma_min_sq, *rep.jacobi, 1e-7, "sigma^2 vs jacobi bound");
            if (rep.improved_jacobi)
              c.expect_ge(wo.sigma_min_sq, *rep.improved_jacobi, 1e-7,
                          "sigma^2 vs improved jacobi bound");
          }
        }
      }
    }
  });

  run("schatten-dominates-ss", [&](detail::Checker& c) {
    for (std::uint64_t seed : seeds) {
      MatrixXd B = nonisotropic_instance(4, 7, seed);
      double sr = stable_rank(B);
      for (int k = 1; k <= sr; ++k)
        c.expect_ge(schatten_bound(gram_bbt(B), k, 7), ss_bound(B, k), 1e-12,
                    "schatten bound vs stable rank bound");
    }
  });

  run("jacobi-dominates-gap-comparison", [&](detail::Checker& c) {
    const int top = full ? 12 : 8;
    for (int m = 2; m <= top; ++m)
      for (int d = 1; d < m; ++d)
        for (int k = 1; k <= d; ++k) {
          double base = (1.0 + std::sqrt(double(d) * k) / m) *
                        std::pow(1.0 - std::sqrt(double(k) / d), 2) * d / m;
          c.expect_ge(jacobi_bound(d, k, m), base, 1e-12,
                      "jacobi bound vs strengthened gap form");
        }
  });

  run("krasikov-beats-gap", [&](detail::Checker& c) {
    for (int d = 2; d <= 10; ++d)
      for (int k = 1; k < d; ++k) {
        double gap = std::sqrt(double(d)) - std::sqrt(double(k));
        c.expect_ge(krasikov_bound(k, double(d - k)), gap * gap, -1e-12,
                    "Laguerre zero bound vs gap");
      }
  });

  run("monotone-selection-trace", [&](detail::Checker& c) {
    for (std::uint64_t seed : seeds) {
      MatrixXd B = gaussian_matrix(4, 8, seed);
      MatrixXd J = isotropic_instance(4, 8, seed);
      for (const SelectionResult& res :
           {select_with_replacement(B, 3), select_without_replacement(J, 3)})
        for (std::size_t s = 1; s < res.root_trace.size(); ++s)
          c.expect_ge(res.root_trace[s].lambda_k, res.root_trace[s - 1].lambda_k, 2e-9,
                      "root trace monotonicity");
    }
  });

  run("selection-determinism", [&](detail::Checker& c) {
    MatrixXd B = gaussian_matrix(4, 8, 55);
    c.expect(select_with_replacement(B, 3).indices ==
                 select_with_replacement(B, 3).indices,
             "with-replacement selection differs between runs");
    MatrixXd J = isotropic_instance(4, 8, 55);
    c.expect(select_without_replacement(J, 2).indices ==
                 select_without_replacement(J, 2).indices,
             "without-replacement selection differs between runs");
  });

  run("greedy-within-bruteforce-bracket", [&](detail::Checker& c) {
    for (std::uint64_t seed : seeds) {
      MatrixXd B = gaussian_matrix(3, 6, seed);  // C(6,2) = 15 <= 200
      SelectionResult res = select_with_replacement(B, 2);
      auto [idx, best] = brute_force_best_subset(B, 2);
      c.expect_ge(best, res.sigma_min_sq, 1e-8, "brute force vs greedy");
      double root = detail::conditional_lambda_k(conditional_expected(B, {}, 2), 3, 2,
                                                 kDefaultRootEps);
      c.expect_ge(res.sigma_min_sq, root, 1e-7, "greedy vs expected root");
    }
  });

  run("matrix-file-roundtrip", [&](detail::Checker& c) {
    MatrixXd B = isotropic_instance(3, 5, 77);
    std::stringstream csv;
    write_matrix_csv(csv, B);
    ParsedMatrix back = parse_matrix_csv(csv);
    c.expect(back.values.rows() == 3 && back.values.cols() == 5, "csv shape changed");
    c.expect((back.values - B).cwiseAbs().maxCoeff() == 0.0, "csv values changed");
    std::stringstream js;
    write_matrix_json(js, B);
    ParsedMatrix jback = parse_matrix_json(js);
    c.expect(jback.values.rows() == 3 && jback.values.cols() == 5, "json shape changed");
    c.expect((jback.values - B).cwiseAbs().maxCoeff() == 0.0, "json values changed");
  });

  run("report-carries-required-fields", [&](detail::Checker& c) {
    MatrixXd B = isotropic_instance(3, 6, 5);
    SelectionResult sel = select_without_replacement(B, 2);
    BoundsReport rep = make_bounds_report(B, 2);
    nlohmann::json j = report_to_json(sel, rep, false);
    for (const char* field : {"inputs", "indices", "sigma_min_sq", "trace", "bounds",
                              "guarantees"})
      c.expect(j.contains(field), std::string("report missing field ") + field);
    c.expect(j["inputs"].contains("mode") && j["inputs"].contains("epsilon"),
             "report inputs missing mode or epsilon");
    bool all_satisfied = true;
    for (const auto& g : j["guarantees"])
      if (g["applicable"].get<bool>() && !g["satisfied"].get<bool>()) all_satisfied = false;
    c.expect(all_satisfied, "an applicable guarantee is reported unsatisfied");
  });

  return out;
}

}  // namespace rinv
