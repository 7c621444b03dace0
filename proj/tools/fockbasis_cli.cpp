// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: basis generation, Gram verification, k-body
// projection, verification suite, and the Hamiltonian truncation bound
// explorer.  Exit codes: 0 success, 2 verification failure, 3 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockbasis/basis_builder.hpp"
#include "fockbasis/hamiltonian_bounds.hpp"
#include "fockbasis/operator_file.hpp"
#include "fockbasis/parallel.hpp"
#include "fockbasis/projection_rdm.hpp"
#include "fockbasis/verify.hpp"

namespace {

using namespace fockbasis;
using nlohmann::json;

constexpr int kExitVerificationFailure = 2;
constexpr int kExitInputError = 3;

BasisFamily parse_family(const std::string& tag) {
  if (tag == "B") return BasisFamily::B;
  if (tag == "BR") return BasisFamily::BReal;
  if (tag == "M") return BasisFamily::Majorana;
  throw std::runtime_error("invalid family (expected B, BR or M): " + tag);
}

std::vector<BasisElement> enumerate_family(int n, BasisFamily family,
                                           std::optional<int> k) {
  switch (family) {
    case BasisFamily::B:
      return k ? enumerate_basis_Bk(n, *k) : enumerate_basis_B(n);
    case BasisFamily::BReal:
      return enumerate_basis_BReal(n, k);
    case BasisFamily::Majorana:
      return enumerate_basis_Majorana(n, k);
  }
  throw std::runtime_error("invalid family");
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  return file;
}

int cmd_basis(int n, const std::string& family_tag, std::optional<int> k,
              const std::string& out_path) {
  const BasisFamily family = parse_family(family_tag);
  const std::vector<BasisElement> elements = enumerate_family(n, family, k);
  std::ofstream file;
  std::ostream& out = open_or_stdout(file, out_path);
  for (const BasisElement& e : elements) {
    // One line per element: identifier, then the normalized expansion.
    out << e.id() << "\t" << io::terms_to_json(e.normalized_poly()).dump() << "\n";
  }
  std::cerr << elements.size() << " elements\n";
  return 0;
}

int cmd_gram(int n, const std::string& family_tag, std::optional<int> k,
             const std::string& mode) {
  const BasisFamily family = parse_family(family_tag);
  if (mode == "exact" && n > 5) throw std::runtime_error("exact Gram limited to n <= 5");
  if (mode == "dense" && n > 3) throw std::runtime_error("dense Gram limited to n <= 3");
  const std::vector<BasisElement> elements = enumerate_family(n, family, k);
  double off = 0, diag = 0;
  if (mode == "exact") {
    const GramReport report = gram_check_exact(elements);
    off = report.max_off_diagonal;
    diag = report.max_diagonal_dev;
  } else if (mode == "dense") {
    std::vector<DenseOperator> dense(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
      dense[i] = poly_to_dense(elements[i].poly);
      dense[i].mat *= elements[i].normalization();
    }
    std::vector<double> row_off(elements.size(), 0.0), row_diag(elements.size(), 0.0);
    parallel_for(elements.size(), [&](std::size_t i) {
      for (std::size_t j = i; j < elements.size(); ++j) {
        const Complex g = hs_inner_dense(dense[i], dense[j]);
        if (i == j)
          row_diag[i] = std::max(row_diag[i], std::abs(g - Complex(1)));
        else
          row_off[i] = std::max(row_off[i], std::abs(g));
      }
    });
    for (double v : row_off) off = std::max(off, v);
    for (double v : row_diag) diag = std::max(diag, v);
  } else {
    throw std::runtime_error("invalid mode (expected exact or dense): " + mode);
  }
  std::printf("elements: %zu\n", elements.size());
  std::printf("max off-diagonal |<e,f>|: %.17g\n", off);
  std::printf("max |<e,e> - 1|:          %.17g\n", diag);
  const bool ok = mode == "exact" ? (off == 0.0 && diag == 0.0)
                                  : (off <= 1e-10 && diag <= 1e-10);
  return ok ? 0 : kExitVerificationFailure;
}

int cmd_project(const std::string& in_path, int k, const std::string& family_tag,
                bool density, const std::string& out_path,
                const std::string& report_path) {
  const BasisFamily family = parse_family(family_tag);
  const OperatorPoly input = io::read_operator_file(in_path);
  ProjectionReport report;
  json report_json = json::object();
  if (density) {
    const DensityMatrix rho =
        DensityMatrix::validated(poly_to_dense(input), 1e-9, 1e-9);
    report = project_kbody(rho.op, k, family);
    report.output_poly = dense_to_poly(*report.output_dense);
    report.output_poly->prune(1e-13);
    const OneBodyMatrix gamma = one_rdm(rho);
    json gamma_json = json::array();
    for (int r = 0; r < gamma.n; ++r) {
      json row = json::array();
      for (int c = 0; c < gamma.n; ++c)
        row.push_back({gamma.gamma(r, c).real(), gamma.gamma(r, c).imag()});
      gamma_json.push_back(std::move(row));
    }
    report_json["oneRdm"] = std::move(gamma_json);
  } else {
    report = project_kbody(input, k, family);
  }
  json merged = io::projection_report_to_json(report);
  merged.update(report_json);
  if (!out_path.empty() && report.output_poly)
    io::write_operator_file(out_path, *report.output_poly);
  std::ofstream file;
  std::ostream& out = open_or_stdout(file, report_path);
  out << merged.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& level_tag, std::uint64_t seed,
               const std::string& inject_fault) {
  verify::Level level;
  if (level_tag == "quick")
    level = verify::Level::Quick;
  else if (level_tag == "full")
    level = verify::Level::Full;
  else
    throw std::runtime_error("invalid level (expected quick or full): " + level_tag);
  if (!inject_fault.empty()) {
    if (inject_fault == "multi-sign-flip")
      testing::corrupt_multi_sign = true;
    else
      throw std::runtime_error("unknown fault id: " + inject_fault);
  }
  const std::vector<verify::CheckResult> results = verify::run_all(level, seed);
  bool all_pass = true;
  std::string first_failure;
  for (const auto& r : results) {
    std::printf("[%s] %-28s %s", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (level == verify::Level::Full) std::printf("  (%.2fs)", r.seconds);
    std::printf("\n");
    if (!r.pass && all_pass) {
      all_pass = false;
      first_failure = r.name;
    }
  }
  if (!all_pass)
    std::printf("FAILED: invariant '%s' violated\n", first_failure.c_str());
  return all_pass ? 0 : kExitVerificationFailure;
}

std::vector<BasisElement> parse_subset_spec(const std::string& spec, int n) {
  if (spec == "none") return {};
  if (spec == "B") return enumerate_basis_B(n);
  if (spec == "M") return enumerate_basis_Majorana(n);
  if (spec.rfind("Bk=", 0) == 0)
    return enumerate_basis_Bk(n, std::stoi(spec.substr(3)));
  if (spec.rfind("Mk=", 0) == 0)
    return enumerate_basis_Majorana(n, std::stoi(spec.substr(3)));
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw std::runtime_error("cannot open subset file: " + spec.substr(5));
    std::vector<BasisElement> subset;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      subset.push_back(io::parse_basis_id(line, n));
    }
    return subset;
  }
  throw std::runtime_error(
      "invalid subset spec (expected none, B, M, Bk=<k>, Mk=<k> or file:<path>): " +
      spec);
}

int cmd_bound(const std::string& fcidump_path, const std::string& instance,
              const std::string& subset_spec, const std::string& out_path) {
  TwoBodyIntegrals ints;
  if (!fcidump_path.empty()) {
    std::ifstream in(fcidump_path);
    if (!in) throw std::runtime_error("cannot open FCIDUMP: " + fcidump_path);
    ints = parse_fcidump(in);
  } else if (!instance.empty()) {
    ints = builtin_instance(instance);
  } else {
    throw std::runtime_error("bound: provide --fcidump or --instance");
  }
  const std::vector<BasisElement> subset = parse_subset_spec(subset_spec, ints.n);
  const BoundReport report = compute_bound(ints, subset);
  std::printf("E0(H)            = %.12f\n", report.e0_full);
  std::printf("E0(H_A)          = %.12f\n", report.e0_truncated);
  std::printf("min-eig(H - H_A) = %.3e\n", report.gap_min_eig);
  std::printf("certificate      = %s\n", report.certificate ? "yes" : "no");
  if (report.certificate)
    std::printf("E0(H_A) <= E0(H): lower bound certified for this instance\n");
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << io::bound_report_to_json(report).dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fockbasis: orthonormal operator bases and k-body projections on "
      "fermion Fock space"};
  app.require_subcommand(1);

  int threads = 1;
  std::uint64_t seed = kDefaultSeed;
  app.add_option("--threads", threads, "worker thread bound")->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized suites")->capture_default_str();

  // basis
  auto* basis = app.add_subcommand("basis", "enumerate a basis family");
  int b_n = 2;
  std::string b_family = "B", b_out;
  std::optional<int> b_k;
  basis->add_option("--n", b_n, "orbital count")->required();
  basis->add_option("--family", b_family, "family: B, BR or M");
  basis->add_option("--k", b_k, "restrict to the k-body subfamily");
  basis->add_option("--out", b_out, "output path (default stdout)");

  // gram
  auto* gram = app.add_subcommand("gram", "verify Gram matrix orthonormality");
  int g_n = 2;
  std::string g_family = "B", g_mode = "exact";
  std::optional<int> g_k;
  gram->add_option("--n", g_n, "orbital count")->required();
  gram->add_option("--family", g_family, "family: B, BR or M");
  gram->add_option("--k", g_k, "restrict to the k-body subfamily");
  gram->add_option("--mode", g_mode, "exact or dense");

  // project
  auto* project = app.add_subcommand("project", "orthogonal projection onto O_k");
  std::string p_in, p_family = "B", p_out, p_report;
  int p_k = 1;
  bool p_density = false;
  project->add_option("--in", p_in, "input operator file")->required();
  project->add_option("--k", p_k, "target k")->required();
  project->add_option("--family", p_family, "basis family: B or M");
  project->add_flag("--density", p_density,
                    "treat input as a density matrix (dense path, emits 1-RDM)");
  project->add_option("--out", p_out, "projected operator file");
  project->add_option("--report", p_report, "report JSON path (default stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
  std::string v_level = "quick", v_fault;
  verify_cmd->add_option("--level", v_level, "quick or full")->capture_default_str();
  verify_cmd->add_option("--inject-fault", v_fault,
                         "deliberate-fault harness (testing only)")
      ->group("");  // hidden

  // bound
  auto* bound = app.add_subcommand("bound", "Hamiltonian truncation bound explorer");
  std::string d_fcidump, d_instance, d_subset = "B", d_out;
  bound->add_option("--fcidump", d_fcidump, "FCIDUMP file path");
  bound->add_option("--instance", d_instance,
                    "built-in instance id (n2-free, n2-repulsive, n3-ring)");
  bound->add_option("--subset", d_subset,
                    "subset spec: none, B, M, Bk=<k>, Mk=<k>, file:<path>")
      ->capture_default_str();
  bound->add_option("--out", d_out, "bound report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  worker_threads() = threads;
  try {
    if (basis->parsed()) return cmd_basis(b_n, b_family, b_k, b_out);
    if (gram->parsed()) return cmd_gram(g_n, g_family, g_k, g_mode);
    if (project->parsed())
      return cmd_project(p_in, p_k, p_family, p_density, p_out, p_report);
    if (verify_cmd->parsed()) return cmd_verify(v_level, seed, v_fault);
    if (bound->parsed()) return cmd_bound(d_fcidump, d_instance, d_subset, d_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return 0;
}
