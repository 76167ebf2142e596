#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "rinv/instance.hpp"
#include "rinv/io.hpp"
#include "rinv/select.hpp"
#include "test_util.hpp"

using rinv::MatrixXd;
using rinv::ParsedMatrix;
using rinv::Rational;

TEST_CASE("csv parsing: decimals, scientific notation, fractions") {
  std::istringstream in("1.25,3e-2,1/3\n-2,0.5,7\n");
  ParsedMatrix pm = rinv::parse_matrix_csv(in);
  REQUIRE(pm.values.rows() == 2);
  REQUIRE(pm.values.cols() == 3);
  CHECK(pm.values(0, 0) == 1.25);
  CHECK(pm.values(0, 1) == 0.03);
  CHECK(pm.values(0, 2) == doctest::Approx(1.0 / 3.0));
  CHECK(pm.values(1, 0) == -2.0);
  CHECK(pm.saw_fraction);
  REQUIRE(pm.has_exact());
  // every token names an exact rational, including the decimals
  CHECK((*pm.exact)(0, 0) == Rational(5, 4));
  CHECK((*pm.exact)(0, 1) == Rational(3, 100));
  CHECK((*pm.exact)(0, 2) == Rational(1, 3));
  CHECK((*pm.exact)(1, 1) == Rational(1, 2));
}

TEST_CASE("csv parsing tolerates blank lines, spaces, and CRLF") {
  std::istringstream in("1, 2\r\n\n  \n3,4\r\n");
  ParsedMatrix pm = rinv::parse_matrix_csv(in);
  REQUIRE(pm.values.rows() == 2);
  CHECK(pm.values(0, 1) == 2.0);
  CHECK(pm.values(1, 0) == 3.0);
  CHECK_FALSE(pm.saw_fraction);
}

TEST_CASE("csv parsing rejects malformed input") {
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(rinv::parse_matrix_csv(ragged), std::invalid_argument);
  std::istringstream bad("1,two\n");
  CHECK_THROWS_AS(rinv::parse_matrix_csv(bad), std::invalid_argument);
  std::istringstream empty("");
  CHECK_THROWS_AS(rinv::parse_matrix_csv(empty), std::invalid_argument);
  std::istringstream zero_den("1/0,1\n");
  CHECK_THROWS_AS(rinv::parse_matrix_csv(zero_den), std::invalid_argument);
}

TEST_CASE("json parsing: integers and token strings stay exact") {
  std::istringstream in(R"({"rows":2,"cols":2,"data":[[1,"1/3"],["0.5",-4]]})");
  ParsedMatrix pm = rinv::parse_matrix_json(in);
  REQUIRE(pm.values.rows() == 2);
  CHECK(pm.values(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(pm.saw_fraction);
  REQUIRE(pm.has_exact());
  CHECK((*pm.exact)(0, 0) == Rational(1));
  CHECK((*pm.exact)(0, 1) == Rational(1, 3));
  CHECK((*pm.exact)(1, 0) == Rational(1, 2));
  CHECK((*pm.exact)(1, 1) == Rational(-4));
}

TEST_CASE("json float entries forfeit the exact form") {
  // a JSON double only approximates the written text, so no exact matrix
  std::istringstream in(R"({"rows":1,"cols":2,"data":[[0.1,2]]})");
  ParsedMatrix pm = rinv::parse_matrix_json(in);
  CHECK(pm.values(0, 0) == doctest::Approx(0.1));
  CHECK_FALSE(pm.has_exact());
}

TEST_CASE("json parsing rejects malformed input") {
  std::istringstream not_obj("[1,2]");
  CHECK_THROWS_AS(rinv::parse_matrix_json(not_obj), std::invalid_argument);
  std::istringstream missing(R"({"rows":1,"data":[[1]]})");
  CHECK_THROWS_AS(rinv::parse_matrix_json(missing), std::invalid_argument);
  std::istringstream bad_rows(R"({"rows":2,"cols":1,"data":[[1]]})");
  CHECK_THROWS_AS(rinv::parse_matrix_json(bad_rows), std::invalid_argument);
  std::istringstream bad_cols(R"({"rows":1,"cols":2,"data":[[1]]})");
  CHECK_THROWS_AS(rinv::parse_matrix_json(bad_cols), std::invalid_argument);
  std::istringstream bad_entry(R"({"rows":1,"cols":1,"data":[[true]]})");
  CHECK_THROWS_AS(rinv::parse_matrix_json(bad_entry), std::invalid_argument);
  std::istringstream garbage("{not json");
  CHECK_THROWS_AS(rinv::parse_matrix_json(garbage), std::invalid_argument);
}

TEST_CASE("csv write/parse round trip preserves doubles bit for bit") {
  MatrixXd B = rinv::nonisotropic_instance(3, 5, 11);
  std::ostringstream out;
  rinv::write_matrix_csv(out, B);
  std::istringstream in(out.str());
  ParsedMatrix pm = rinv::parse_matrix_csv(in);
  REQUIRE(pm.values.rows() == B.rows());
  REQUIRE(pm.values.cols() == B.cols());
  CHECK((pm.values - B).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("json write/parse round trip preserves doubles bit for bit") {
  MatrixXd B = rinv::isotropic_instance(2, 4, 9);
  std::ostringstream out;
  rinv::write_matrix_json(out, B);
  std::istringstream in(out.str());
  ParsedMatrix pm = rinv::parse_matrix_json(in);
  REQUIRE(pm.values.rows() == B.rows());
  REQUIRE(pm.values.cols() == B.cols());
  CHECK((pm.values - B).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("read_matrix_file dispatches on extension and reports open failures") {
  CHECK_THROWS_AS(rinv::read_matrix_file("/nonexistent/path.csv"), std::invalid_argument);
}

TEST_CASE("bounds_to_json writes null for absent bounds") {
  MatrixXd B = MatrixXd::Zero(2, 2);
  B(0, 0) = 1.0;
  B(1, 1) = 0.1;
  nlohmann::json b = rinv::bounds_to_json(rinv::make_bounds_report(B, 2));
  CHECK(b["ss"].is_null());
  CHECK(b["schatten"].is_null());
  CHECK_FALSE(b["guarantees_applicable"].get<bool>());
  CHECK(b["jacobi"].is_number());
}

TEST_CASE("report_to_json carries inputs, trace, and guarantee verdicts") {
  MatrixXd B = rinv::isotropic_instance(3, 6, 4);
  rinv::SelectionResult sel = rinv::select_without_replacement(B, 2);
  rinv::BoundsReport rep = rinv::make_bounds_report(B, 2);
  nlohmann::json j = rinv::report_to_json(sel, rep, false);
  CHECK(j["inputs"]["mode"] == "without");
  CHECK(j["inputs"]["epsilon"].is_number());
  CHECK(j["inputs"]["exact"] == false);
  CHECK(j["indices"].size() == 2);
  CHECK(j["trace"].size() == 2);
  CHECK(j["sigma_min_sq"].get<double>() == sel.sigma_min_sq);
  bool saw_jacobi = false;
  for (const auto& g : j["guarantees"]) {
    if (g["name"] == "jacobi") {
      saw_jacobi = true;
      CHECK(g["applicable"].get<bool>());
      CHECK(g["satisfied"].get<bool>());
    }
    if (g["name"] == "krasikov_over_m") CHECK_FALSE(g["applicable"].get<bool>());
  }
  CHECK(saw_jacobi);
}
