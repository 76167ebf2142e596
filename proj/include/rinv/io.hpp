#pragma once

// Matrix file formats and the JSON report.
//
// CSV: one row per line, comma-separated tokens; a token is a decimal
// ("1.25", "3e-2") or a rational "p/q".  JSON: {"rows": d, "cols": m,
// "data": [[...]]} with entries given as numbers or as token strings.
//
// Every CSV token and every string entry denotes an exact rational, so a
// parsed matrix carries the exact form alongside the double form whenever
// all entries admit one (JSON numbers count only when integral, since a
// JSON double does not name a decimal exactly).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "rinv/bounds.hpp"
#include "rinv/matrix.hpp"
#include "rinv/rational.hpp"
#include "rinv/select.hpp"

namespace rinv {

struct ParsedMatrix {
  MatrixXd values;
  std::optional<MatrixX<Rational>> exact;  // present when every entry is exact
  bool saw_fraction = false;               // some token used the p/q form

  bool has_exact() const { return exact.has_value(); }
};

namespace detail {

inline ParsedMatrix from_token_rows(const std::vector<std::vector<std::string>>& rows,
                                    const char* what) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument(std::string(what) + ": empty matrix");
  const std::size_t m = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != m)
      throw std::invalid_argument(std::string(what) + ": ragged rows");
  const std::size_t d = rows.size();
  MatrixX<Rational> exact(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(m));
  MatrixXd vals(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(m));
  bool all_exact = true;
  bool saw_fraction = false;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const std::string& tok = rows[i][j];
      if (tok.find('/') != std::string::npos) saw_fraction = true;
      auto r = Rational::try_parse(tok);
      if (r) {
        exact(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = *r;
        vals(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r->to_double();
      } else {
        all_exact = false;
        std::size_t pos = 0;
        double v = 0;
        try {
          v = std::stod(tok, &pos);
        } catch (const std::exception&) {
          throw std::invalid_argument(std::string(what) + ": bad token \"" + tok + "\"");
        }
        if (pos != tok.size() || !std::isfinite(v))
          throw std::invalid_argument(std::string(what) + ": bad token \"" + tok + "\"");
        vals(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      }
    }
  ParsedMatrix out;
  out.values = std::move(vals);
  out.saw_fraction = saw_fraction;
  if (all_exact) out.exact = std::move(exact);
  return out;
}

}  // namespace detail

inline ParsedMatrix parse_matrix_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line)
      if (c != ' ' && c != '\t') blank = false;
    if (blank) continue;
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) row.push_back(tok);
    rows.push_back(std::move(row));
  }
  return detail::from_token_rows(rows, "csv");
}

inline ParsedMatrix parse_matrix_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("json: parse failure: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw std::invalid_argument("json: expected object with rows, cols, data");
  const auto rows_n = j.at("rows").get<std::int64_t>();
  const auto cols_n = j.at("cols").get<std::int64_t>();
  const auto& data = j.at("data");
  if (!data.is_array() || static_cast<std::int64_t>(data.size()) != rows_n)
    throw std::invalid_argument("json: data does not match rows");
  std::vector<std::vector<std::string>> toks;
  bool exact_tokens = true;  // JSON doubles pass through binary, losing the written text
  for (const auto& row : data) {
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != cols_n)
      throw std::invalid_argument("json: data does not match cols");
    std::vector<std::string> r;
    for (const auto& v : row) {
      if (v.is_string())
        r.push_back(v.get<std::string>());
      else if (v.is_number_integer())
        r.push_back(std::to_string(v.get<std::int64_t>()));
      else if (v.is_number()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        r.push_back(buf);
        exact_tokens = false;
      } else
        throw std::invalid_argument("json: entries must be numbers or strings");
    }
    toks.push_back(std::move(r));
  }
  ParsedMatrix out = detail::from_token_rows(toks, "json");
  if (!exact_tokens) out.exact.reset();
  return out;
}

inline ParsedMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
    return parse_matrix_json(in);
  return parse_matrix_csv(in);
}

inline void write_matrix_csv(std::ostream& os, const MatrixXd& B) {
  char buf[64];
  for (Eigen::Index i = 0; i < B.rows(); ++i) {
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", B(i, j));
      os << (j ? "," : "") << buf;
    }
    os << '\n';
  }
}

inline void write_matrix_json(std::ostream& os, const MatrixXd& B) {
  nlohmann::json j;
  j["rows"] = B.rows();
  j["cols"] = B.cols();
  auto data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < B.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index jj = 0; jj < B.cols(); ++jj) row.push_back(B(i, jj));
    data.push_back(std::move(row));
  }
  j["data"] = std::move(data);
  os << j.dump(2) << '\n';
}

inline nlohmann::json bounds_to_json(const BoundsReport& r) {
  nlohmann::json b;
  b["d"] = r.d;
  b["m"] = r.m;
  b["k"] = r.k;
  b["srank"] = r.srank;
  b["srank4"] = r.srank4;
  b["frobenius_sq"] = r.frob_sq;
  b["isotropic"] = r.isotropic;
  b["guarantees_applicable"] = r.guarantees_applicable;
  auto put = [&](const char* name, const std::optional<double>& v) {
    if (v)
      b[name] = *v;
    else
      b[name] = nullptr;
  };
  put("ss", r.ss);
  put("schatten", r.schatten);
  put("jacobi", r.jacobi);
  put("improved_jacobi", r.improved_jacobi);
  put("krasikov_over_m", r.krasikov_over_m);
  b["ss_vacuous"] = r.ss_vacuous;
  b["schatten_vacuous"] = r.schatten_vacuous;
  b["jacobi_vacuous"] = r.jacobi_vacuous;
  return b;
}

// The full report for one selection run: inputs, chosen indices (0-based),
// certified sigma_min^2, the per-step root trace, every applicable bound,
// and a pass/fail line per bound at slack epsilon.
inline nlohmann::json report_to_json(const SelectionResult& sel, const BoundsReport& bounds,
                                     bool exact_mode) {
  nlohmann::json j;
  j["inputs"] = {
      {"d", bounds.d},
      {"m", bounds.m},
      {"k", bounds.k},
      {"mode", sel.mode == SamplingMode::WithReplacement ? "with" : "without"},
      {"epsilon", sel.epsilon},
      {"exact", exact_mode},
  };
  j["indices"] = sel.indices;
  j["sigma_min_sq"] = sel.sigma_min_sq;
  auto trace = nlohmann::json::array();
  for (const auto& s : sel.root_trace)
    trace.push_back({{"index", s.index}, {"lambda_k", s.lambda_k}});
  j["trace"] = std::move(trace);
  j["bounds"] = bounds_to_json(bounds);
  auto guarantees = nlohmann::json::array();
  auto add_guarantee = [&](const char* name, const std::optional<double>& v,
                           bool applicable) {
    if (!v) return;
    guarantees.push_back({{"name", name},
                          {"bound", *v},
                          {"applicable", applicable},
                          {"satisfied", sel.sigma_min_sq >= *v - sel.epsilon}});
  };
  const bool iso = bounds.isotropic;
  const bool app = bounds.guarantees_applicable;
  const bool with = sel.mode == SamplingMode::WithReplacement;
  add_guarantee("ss", bounds.ss, app);
  add_guarantee("schatten", bounds.schatten, app && with);
  add_guarantee("jacobi", bounds.jacobi, app && iso && !with);
  add_guarantee("improved_jacobi", bounds.improved_jacobi, app && iso && !with);
  add_guarantee("krasikov_over_m", bounds.krasikov_over_m, app && iso && with);
  j["guarantees"] = std::move(guarantees);
  return j;
}

}  // namespace rinv
