// Command-line front end: matrix ingestion, selection runs, bounds reports,
// verification suites, and reproducible isotropic instance generation.
//
// Exit codes: 0 success, 1 error, 2 completed with the guarantees
// inapplicable (k above the stable rank).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rinv/bounds.hpp"
#include "rinv/instance.hpp"
#include "rinv/io.hpp"
#include "rinv/select.hpp"
#include "rinv/verify.hpp"

namespace {

using rinv::BoundsReport;
using rinv::SamplingMode;
using rinv::SelectionResult;

void emit_json(const nlohmann::json& doc, const std::string& output) {
  if (output.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream os(output);
  if (!os) throw std::invalid_argument("cannot write " + output);
  os << doc.dump(2) << "\n";
}

void print_bounds_block(const BoundsReport& r) {
  std::printf("srank = %.9g   srank4 = %.9g   frobenius^2 = %.9g   isotropic = %s\n",
              r.srank, r.srank4, r.frob_sq, r.isotropic ? "yes" : "no");
  if (!r.guarantees_applicable)
    std::printf("warning: k = %d exceeds the stable rank %.6g; guarantees are inapplicable\n",
                r.k, r.srank);
  std::printf("bounds:\n");
  auto row = [](const char* name, const std::optional<double>& v, bool vacuous) {
    if (!v) return;
    std::printf("  %-16s %.12g%s\n", name, *v, vacuous ? "  (vacuous)" : "");
  };
  row("ss", r.ss, r.ss_vacuous);
  row("schatten", r.schatten, r.schatten_vacuous);
  row("jacobi", r.jacobi, r.jacobi_vacuous);
  row("improved_jacobi", r.improved_jacobi, false);
  row("krasikov_over_m", r.krasikov_over_m, false);
}

int cmd_select(const std::string& input, int k, const std::string& mode_name, double eps,
               bool exact_flag, const std::string& output) {
  rinv::ParsedMatrix pm = rinv::read_matrix_file(input);
  const SamplingMode mode =
      mode_name == "without" ? SamplingMode::WithoutReplacement : SamplingMode::WithReplacement;
  if (exact_flag && !pm.has_exact())
    throw std::invalid_argument("--exact requires every entry to parse as a rational");
  const bool exact_mode = (exact_flag || pm.saw_fraction) && pm.has_exact();

  SelectionResult sel;
  if (exact_mode) {
    sel = mode == SamplingMode::WithReplacement
              ? rinv::select_with_replacement(*pm.exact, k, eps)
              : rinv::select_without_replacement(*pm.exact, k, eps);
  } else {
    sel = mode == SamplingMode::WithReplacement
              ? rinv::select_with_replacement(pm.values, k, eps)
              : rinv::select_without_replacement(pm.values, k, eps);
  }
  BoundsReport rep = rinv::make_bounds_report(pm.values, k);
  rep.achieved_sigma_min_sq = sel.sigma_min_sq;
  nlohmann::json doc = rinv::report_to_json(sel, rep, exact_mode);

  std::printf("d=%d m=%d k=%d mode=%s epsilon=%g exact=%s\n", rep.d, rep.m, rep.k,
              mode == SamplingMode::WithReplacement ? "with" : "without", eps,
              exact_mode ? "yes" : "no");
  std::printf("selected columns (0-based):");
  for (int i : sel.indices) std::printf(" %d", i);
  std::printf("\nsigma_min^2 = %.12g\n", sel.sigma_min_sq);
  std::printf("trace:\n");
  for (std::size_t s = 0; s < sel.root_trace.size(); ++s)
    std::printf("  step %zu: column %d, lambda_k = %.12g\n", s + 1,
                sel.root_trace[s].index, sel.root_trace[s].lambda_k);
  print_bounds_block(rep);
  std::printf("guarantees:\n");
  for (const auto& g : doc["guarantees"])
    std::printf("  %-16s %-16.12g %-13s %s\n", g["name"].get<std::string>().c_str(),
                g["bound"].get<double>(),
                g["applicable"].get<bool>() ? "applicable" : "informational",
                g["satisfied"].get<bool>() ? "ok" : "VIOLATED");

  emit_json(doc, output);
  return rep.guarantees_applicable ? 0 : 2;
}

int cmd_bounds(int d, int m, int k, const std::string& input, const std::string& output) {
  if (!input.empty()) {
    rinv::ParsedMatrix pm = rinv::read_matrix_file(input);
    BoundsReport rep = rinv::make_bounds_report(pm.values, k);
    std::printf("d=%d m=%d k=%d (from %s)\n", rep.d, rep.m, rep.k, input.c_str());
    print_bounds_block(rep);
    emit_json(rinv::bounds_to_json(rep), output);
    return 0;
  }
  if (!(1 <= d && d <= m && 0 <= k && k <= d))
    throw std::invalid_argument("bounds: requires 0 <= k <= d <= m");
  nlohmann::json doc;
  doc["d"] = d;
  doc["m"] = m;
  doc["k"] = k;
  nlohmann::json b;
  std::printf("d=%d m=%d k=%d (isotropic dimensions only)\n", d, m, k);
  std::printf("bounds:\n");
  auto row = [&](const char* name, double v) {
    std::printf("  %-16s %.12g\n", name, v);
    b[name] = v;
  };
  double gap = std::sqrt(static_cast<double>(d)) - std::sqrt(static_cast<double>(k));
  row("ss_isotropic", gap * gap / m);
  row("jacobi", rinv::jacobi_bound(d, k, m));
  if (k >= 1 && d + 1 <= m) row("improved_jacobi", rinv::improved_jacobi_bound(d, k, m));
  if (k >= 1) row("krasikov_over_m", rinv::krasikov_bound(k, static_cast<double>(d - k)) / m);
  doc["bounds"] = std::move(b);
  emit_json(doc, output);
  return 0;
}

int cmd_verify(const std::string& level) {
  std::vector<rinv::CheckResult> results = rinv::run_verification(level == "full");
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%-36s %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL");
    if (!r.pass) {
      std::printf("    %s\n", r.detail.c_str());
      ++failed;
    }
  }
  std::printf("%zu checks, %d failed (%s)\n", results.size(), failed, level.c_str());
  return failed == 0 ? 0 : 1;
}

int cmd_gen(int d, int m, std::uint64_t seed, const std::string& output) {
  rinv::MatrixXd B = rinv::isotropic_instance(d, m, seed);
  std::ofstream os(output);
  if (!os) throw std::invalid_argument("cannot write " + output);
  if (output.size() >= 5 && output.compare(output.size() - 5, 5, ".json") == 0)
    rinv::write_matrix_json(os, B);
  else
    rinv::write_matrix_csv(os, B);
  std::printf("wrote %dx%d isotropic matrix (seed %llu) to %s\n", d, m,
              static_cast<unsigned long long>(seed), output.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic column selection with certified least singular value"};
  app.require_subcommand(1);

  std::string sel_input, sel_mode = "with", sel_output;
  int sel_k = 0;
  double sel_eps = 1e-9;
  bool sel_exact = false;
  CLI::App* sel = app.add_subcommand("select", "pick k columns and certify sigma_min^2");
  sel->add_option("input", sel_input, "matrix file (CSV, or JSON with .json extension)")
      ->required();
  sel->add_option("--k", sel_k, "number of columns to select")->required();
  sel->add_option("--mode", sel_mode, "sampling model: with | without")
      ->check(CLI::IsMember({"with", "without"}));
  sel->add_option("--epsilon", sel_eps, "root-finding tolerance")
      ->check(CLI::PositiveNumber);
  sel->add_flag("--exact", sel_exact, "require exact rational arithmetic");
  sel->add_option("--output", sel_output, "write the JSON report here instead of stdout");

  int b_d = 0, b_m = 0, b_k = 0;
  std::string b_input, b_output;
  CLI::App* bnd = app.add_subcommand("bounds", "evaluate the selection guarantees");
  bnd->add_option("input", b_input, "optional matrix file; otherwise give --d and --m");
  bnd->add_option("--d", b_d, "ambient dimension");
  bnd->add_option("--m", b_m, "number of columns");
  bnd->add_option("--k", b_k, "selection size")->required();
  bnd->add_option("--output", b_output, "write the JSON document here instead of stdout");

  std::string v_level = "quick";
  CLI::App* ver = app.add_subcommand("verify", "run the built-in identity checks");
  ver->add_option("--level", v_level, "quick | full")
      ->check(CLI::IsMember({"quick", "full"}));

  int g_d = 0, g_m = 0;
  std::uint64_t g_seed = 0;
  std::string g_output;
  CLI::App* gen = app.add_subcommand("gen", "generate a seeded isotropic instance");
  gen->add_option("--d", g_d, "ambient dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--m", g_m, "number of columns")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", g_seed, "random seed");
  gen->add_option("--output", g_output, "destination file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sel->parsed()) return cmd_select(sel_input, sel_k, sel_mode, sel_eps, sel_exact, sel_output);
    if (bnd->parsed()) return cmd_bounds(b_d, b_m, b_k, b_input, b_output);
    if (ver->parsed()) return cmd_verify(v_level);
    if (gen->parsed()) return cmd_gen(g_d, g_m, g_seed, g_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
