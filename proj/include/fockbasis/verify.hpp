// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fockbasis/basis_builder.hpp"
#include "fockbasis/dense_oracle.hpp"
#include "fockbasis/hamiltonian_bounds.hpp"
#include "fockbasis/projection_rdm.hpp"
#include "fockbasis/rng.hpp"
#include "fockbasis/trace_formulas.hpp"

namespace fockbasis::verify {

enum class Level { Quick, Full };

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace detail {

using fockbasis::detail::ascending_submasks;

inline OperatorPoly single_monomial(std::uint32_t A, std::uint32_t B, int n) {
  OperatorPoly p(n);
  p.add_term(A, B, Complex(1));
  return p;
}

/// All disjoint triples (K, A, B) over n orbitals, (K, A, B) ascending.
struct Triple {
  std::uint32_t K, A, B;
};
inline std::vector<Triple> disjoint_triples(int n) {
  const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
  std::vector<Triple> out;
  for (std::uint32_t k = 0;; ++k) {
    if (k > full) break;
    for (std::uint32_t a : ascending_submasks(full & ~k))
      for (std::uint32_t b : ascending_submasks(full & ~k & ~a))
        out.push_back(Triple{k, a, b});
    if (full == 0) break;
  }
  return out;
}

inline DenseOperator random_dense(int n, Rng& rng) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = rng.complex_box();
  return DenseOperator(n, std::move(m));
}

inline Eigen::MatrixXcd random_hermitian(int size, Rng& rng) {
  Eigen::MatrixXcd g(size, size);
  for (Eigen::Index r = 0; r < size; ++r)
    for (Eigen::Index c = 0; c < size; ++c) g(r, c) = rng.complex_box();
  return 0.5 * (g + g.adjoint().eval());
}

}  // namespace detail

/// 1. hs_inner_general equals the dense trace for every quadruple (A,B,C,D).
inline CheckResult check_trace_formula_general(Level level, std::uint64_t) {
  const int n = level == Level::Full ? 3 : 2;
  const std::uint32_t count = 1u << n;
  std::vector<DenseOperator> dense(count * count);
  for (std::uint32_t a = 0; a < count; ++a)
    for (std::uint32_t b = 0; b < count; ++b)
      dense[a * count + b] = poly_to_dense(detail::single_monomial(a, b, n));
  long long mismatches = 0, quadruples = 0;
  for (std::uint32_t a = 0; a < count; ++a)
    for (std::uint32_t b = 0; b < count; ++b)
      for (std::uint32_t c = 0; c < count; ++c)
        for (std::uint32_t d = 0; d < count; ++d) {
          ++quadruples;
          const long long combinatorial =
              hs_inner_general(OrbitalSet(a, n), OrbitalSet(b, n),
                               OrbitalSet(c, n), OrbitalSet(d, n));
          const Complex oracle =
              hs_inner_dense(dense[a * count + b], dense[c * count + d]);
          if (oracle.imag() != 0.0 || double(combinatorial) != oracle.real())
            ++mismatches;
        }
  std::ostringstream note;
  note << quadruples << " quadruples at n=" << n << ", " << mismatches
         << " mismatches";
  return CheckResult{"trace-formula-general", mismatches == 0, note.str()};
}

/// 2. hs_inner_disjoint equals the dense trace on all pairs of disjoint triples.
inline CheckResult check_trace_formula_disjoint(Level level, std::uint64_t) {
  const int n = level == Level::Full ? 4 : 3;
  const std::vector<detail::Triple> triples = detail::disjoint_triples(n);
  std::vector<DenseOperator> dense(triples.size());
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    OperatorPoly p(n);
    p.add_term(monomial_to_canonical(OrbitalSet(t.K, n), OrbitalSet(t.A, n),
                                     OrbitalSet(t.B, n)));
    dense[i] = poly_to_dense(p);
  }
  long long mismatches = 0;
  for (std::size_t i = 0; i < triples.size(); ++i)
    for (std::size_t j = 0; j < triples.size(); ++j) {
      const auto& x = triples[i];
      const auto& y = triples[j];
      const long long combinatorial = hs_inner_disjoint(
          OrbitalSet(x.K, n), OrbitalSet(x.A, n), OrbitalSet(x.B, n),
          OrbitalSet(y.K, n), OrbitalSet(y.A, n), OrbitalSet(y.B, n));
      const Complex oracle = hs_inner_dense(dense[i], dense[j]);
      if (oracle.imag() != 0.0 || double(combinatorial) != oracle.real())
        ++mismatches;
    }
  std::ostringstream note;
  note << triples.size() << "x" << triples.size() << " pairs at n=" << n << ", "
         << mismatches << " mismatches";
  return CheckResult{"trace-formula-disjoint", mismatches == 0, note.str()};
}

/// 3. Gram(B) is the identity: exact-integer path for n <= nmax_exact,
///    dense path for n <= nmax_dense.
inline CheckResult check_gram_B(Level level, std::uint64_t) {
  const int nmax_exact = level == Level::Full ? 5 : 3;
  const int nmax_dense = level == Level::Full ? 3 : 2;
  std::ostringstream note;
  bool pass = true;
  for (int n = 1; n <= nmax_exact; ++n) {
    const GramReport report = gram_check_exact(enumerate_basis_B(n));
    if (report.max_off_diagonal != 0.0 || report.max_diagonal_dev != 0.0) pass = false;
    note << "exact n=" << n << " offdiag=" << report.max_off_diagonal
           << " diagdev=" << report.max_diagonal_dev << "; ";
  }
  for (int n = 1; n <= nmax_dense; ++n) {
    const std::vector<BasisElement> basis = enumerate_basis_B(n);
    std::vector<DenseOperator> dense(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      dense[i] = poly_to_dense(basis[i].poly);
      dense[i].mat *= basis[i].normalization();
    }
    double off = 0, diag = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j) {
        const Complex g = hs_inner_dense(dense[i], dense[j]);
        if (i == j)
          diag = std::max(diag, std::abs(g - Complex(1)));
        else
          off = std::max(off, std::abs(g));
      }
    if (off > 1e-12 || diag > 1e-12) pass = false;
    note << "dense n=" << n << " offdiag=" << off << " diagdev=" << diag << "; ";
  }
  return CheckResult{"gram-B-identity", pass, note.str()};
}

/// 4. |B| = 4^n and |B_k| = sum C(2n,2l) = |Majorana_k| for all k, n <= 8.
inline CheckResult check_dimension_counts(Level level, std::uint64_t) {
  const int nmax = level == Level::Full ? 8 : 5;
  bool pass = true;
  std::ostringstream note;
  for (int n = 1; n <= nmax; ++n) {
    if (count_basis_B(n) != (1LL << (2 * n))) {
      pass = false;
      note << "count(B) wrong at n=" << n << "; ";
    }
    for (int k = 0; k <= n; ++k) {
      const long long expected = dim_kbody(n, k);
      if (count_basis_Bk(n, k) != expected || count_basis_Majorana_k(n, k) != expected) {
        pass = false;
        note << "count mismatch at n=" << n << " k=" << k << "; ";
      }
    }
  }
  if (pass) note << "all counts match for n <= " << nmax;
  return CheckResult{"dimension-counts", pass, note.str()};
}

/// 5. Rank of B_k over canonical monomials equals dim O_k, and projections
///    through B_k and through the Majorana family agree.
inline CheckResult check_span_equality(Level level, std::uint64_t seed) {
  const int n = level == Level::Full ? 3 : 2;
  const int ops = level == Level::Full ? 20 : 5;
  bool pass = true;
  std::ostringstream note;
  for (int k = 0; k <= n; ++k) {
    const std::vector<BasisElement> basis = enumerate_basis_Bk(n, k);
    // Coefficient matrix over the canonical monomial dictionary.
    std::map<MonomialKey, int> column;
    for (const BasisElement& e : basis)
      for (const auto& [key, coeff] : e.poly.terms())
        column.emplace(key, int(column.size()));
    Eigen::MatrixXcd coeffs =
        Eigen::MatrixXcd::Zero(Eigen::Index(basis.size()), Eigen::Index(column.size()));
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (const auto& [key, coeff] : basis[r].poly.terms())
        coeffs(Eigen::Index(r), column[key]) = coeff;
    const auto rank = Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>(coeffs).rank();
    if (rank != Eigen::Index(dim_kbody(n, k))) {
      pass = false;
      note << "rank(B_" << k << ")=" << rank << " expected " << dim_kbody(n, k)
             << "; ";
    }
  }
  Rng rng(seed);
  double worst = 0;
  for (int k = 0; k <= n; ++k)
    for (int rep = 0; rep < ops; ++rep) {
      const DenseOperator x = detail::random_dense(n, rng);
      const auto via_b = project_kbody(x, k, BasisFamily::B);
      const auto via_m = project_kbody(x, k, BasisFamily::Majorana);
      worst = std::max(worst,
                       (via_b.output_dense->mat - via_m.output_dense->mat)
                           .cwiseAbs()
                           .maxCoeff());
    }
  if (worst > 1e-10) pass = false;
  note << "max family disagreement " << worst << " over " << ops
         << " ops/k at n=" << n;
  return CheckResult{"span-equality", pass, note.str()};
}

/// 6. Every BReal element is self-adjoint; real Gram is the identity;
///    filtered counts equal dim O_k.
inline CheckResult check_breal(Level level, std::uint64_t) {
  const int nmax = level == Level::Full ? 3 : 2;
  bool pass = true;
  std::ostringstream note;
  for (int n = 1; n <= nmax; ++n) {
    const std::vector<BasisElement> basis = enumerate_basis_BReal(n);
    double adjoint_defect = 0;
    for (const BasisElement& e : basis)
      adjoint_defect = std::max(adjoint_defect,
                                max_abs_diff(e.poly, e.poly.adjoint()));
    if (adjoint_defect > 1e-12) {
      pass = false;
      note << "adjoint defect " << adjoint_defect << " at n=" << n << "; ";
    }
    if (basis.size() != std::size_t(1) << (2 * n)) {
      pass = false;
      note << "|BReal| != 4^n at n=" << n << "; ";
    }
    const GramReport gram = gram_check_exact(basis);
    if (gram.max_off_diagonal != 0.0 || gram.max_diagonal_dev != 0.0) {
      pass = false;
      note << "BReal Gram deviates at n=" << n << "; ";
    }
    for (int k = 0; k <= n; ++k)
      if (enumerate_basis_BReal(n, k).size() != std::size_t(dim_kbody(n, k))) {
        pass = false;
        note << "BReal_k count mismatch at n=" << n << " k=" << k << "; ";
      }
  }
  if (pass) note << "self-adjoint, Gram=identity, counts match for n <= " << nmax;
  return CheckResult{"real-basis", pass, note.str()};
}

/// 7. Majorana relations {a_j, a_k} = 2 delta 1, tr a_J = 0 (J nonempty),
///    and B intersect Majorana = { 2^(-n/2) 1 }.
inline CheckResult check_majorana(Level level, std::uint64_t) {
  const int nmax = level == Level::Full ? 3 : 2;
  const int nmax_intersection = level == Level::Full ? 4 : 2;
  bool pass = true;
  std::ostringstream note;
  for (int n = 1; n <= nmax; ++n) {
    double defect = 0;
    std::vector<DenseOperator> a(2 * n);
    for (int j = 1; j <= 2 * n; ++j) a[j - 1] = poly_to_dense(build_majorana(j, n));
    const Eigen::MatrixXcd id2 =
        2.0 * Eigen::MatrixXcd::Identity(a[0].dim(), a[0].dim());
    for (int j = 0; j < 2 * n; ++j) {
      if ((a[j].mat - a[j].mat.adjoint()).cwiseAbs().maxCoeff() != 0.0) pass = false;
      for (int k = 0; k < 2 * n; ++k) {
        Eigen::MatrixXcd anti = a[j].mat * a[k].mat + a[k].mat * a[j].mat;
        if (j == k) anti -= id2;
        defect = std::max(defect, anti.cwiseAbs().maxCoeff());
      }
    }
    if (defect != 0.0) {
      pass = false;
      note << "CAR defect " << defect << " at n=" << n << "; ";
    }
    for (std::uint32_t jmask = 1; jmask < (1u << (2 * n)); ++jmask) {
      const OperatorPoly aJ = build_majorana_product(jmask, n);
      if (std::abs(poly_to_dense(aJ).mat.trace()) != 0.0) {
        pass = false;
        note << "tr a_J != 0 at n=" << n << " mask=" << jmask << "; ";
        break;
      }
    }
  }
  for (int n = 1; n <= nmax_intersection; ++n) {
    const std::vector<BasisElement> common = basis_intersection_check(n);
    const bool single_identity =
        common.size() == 1 && common[0].poly.term_count() == 1 &&
        common[0].poly.coefficient(0, 0) == Complex(1);
    if (!single_identity) {
      pass = false;
      note << "B ^ Majorana at n=" << n << " is {";
      for (std::size_t i = 0; i < common.size(); ++i)
        note << (i ? ", " : "") << common[i].id();
      note << "}, not the claimed singleton (a_{2k-1}a_{2k} = -i(1-2n_k), so "
              "a_{1..2n} = (-i)^n b_{1..n}; the phases cancel when n is a "
              "multiple of 4); ";
    }
  }
  if (pass) note << "CAR exact, traceless, intersection singleton for n <= "
                   << nmax_intersection;
  return CheckResult{"majorana-relations", pass, note.str()};
}

/// 8. The pi_1 reconstruction identity on seeded number-preserving densities.
inline CheckResult check_pi1_reconstruction(Level level, std::uint64_t seed) {
  const std::vector<int> ns =
      level == Level::Full ? std::vector<int>{2, 3, 4} : std::vector<int>{2};
  const int reps = level == Level::Full ? 50 : 10;
  Rng rng(seed);
  double worst = 0;
  for (int n : ns) {
    const double scale = std::exp2(double(n));
    for (int rep = 0; rep < reps; ++rep) {
      const DensityMatrix rho = random_number_preserving_density(n, rng);
      const auto projected = project_kbody(rho.op, 1, BasisFamily::B);
      const DenseOperator rhs = pi1_reconstruction_rhs(rho);
      const double dev =
          scale * hs_norm_dense(*projected.output_dense - rhs);
      worst = std::max(worst, dev);
    }
  }
  std::ostringstream note;
  note << "max ||2^n pi_1(rho) - rhs||_HS = " << worst << " over " << reps
         << " densities per n";
  return CheckResult{"pi1-reconstruction-identity", worst <= 1e-10, note.str()};
}

/// 9. tr N = n 2^(n-1) exactly through the formula path, n <= 16.
inline CheckResult check_number_trace(Level level, std::uint64_t) {
  const int nmax = level == Level::Full ? 16 : 8;
  bool pass = true;
  std::ostringstream note;
  for (int n = 1; n <= nmax; ++n) {
    const Complex via_formula = OperatorPoly::number_operator(n).trace();
    long long via_binomials = 0;
    for (int k = 0; k <= n; ++k) via_binomials += k * binomial(n, k);
    const long long expected = (long long)(n) << (n - 1);
    if (via_formula.imag() != 0.0 || via_formula.real() != double(expected) ||
        via_binomials != expected) {
      pass = false;
      note << "mismatch at n=" << n << "; ";
    }
  }
  if (pass) note << "tr N matches n 2^(n-1) and sum k C(n,k) for n <= " << nmax;
  return CheckResult{"number-operator-trace", pass, note.str()};
}

/// 10. Projection operator laws: idempotence, adjoint preservation,
///     contraction, and nesting pi_j pi_k = pi_j for j <= k.
inline CheckResult check_projection_laws(Level level, std::uint64_t seed) {
  const int nmax = level == Level::Full ? 4 : 3;
  const int reps = level == Level::Full ? 5 : 2;
  Rng rng(seed);
  double worst = 0;
  bool contraction_ok = true;
  for (int n = 1; n <= nmax; ++n)
    for (int rep = 0; rep < reps; ++rep) {
      const DenseOperator x = detail::random_dense(n, rng);
      const double input_norm = hs_norm_dense(x);
      for (int k = 0; k <= n; ++k) {
        const auto once = project_kbody(x, k, BasisFamily::B);
        const auto twice = project_kbody(*once.output_dense, k, BasisFamily::B);
        worst = std::max(worst, hs_norm_dense(*twice.output_dense - *once.output_dense));
        const auto adj_then_project =
            project_kbody(x.adjoint(), k, BasisFamily::B);
        worst = std::max(worst, hs_norm_dense(adj_then_project.output_dense->adjoint() -
                                              *once.output_dense));
        if (once.output_norm > input_norm + 1e-10) contraction_ok = false;
        if (once.residual_norm <= 1e-10 &&
            std::abs(once.output_norm - input_norm) > 1e-9)
          contraction_ok = false;
        for (int j = 0; j <= k; ++j) {
          const auto nested = project_kbody(*once.output_dense, j, BasisFamily::B);
          const auto direct = project_kbody(x, j, BasisFamily::B);
          worst = std::max(worst, hs_norm_dense(*nested.output_dense -
                                                *direct.output_dense));
        }
      }
    }
  std::ostringstream note;
  note << "max law deviation " << worst << ", contraction "
         << (contraction_ok ? "holds" : "violated") << " (n <= " << nmax << ")";
  return CheckResult{"projection-laws", worst <= 1e-10 && contraction_ok,
                     note.str()};
}

/// 11. Free-fermion ground energies: E0(H(t, 0)) equals the sum of the
///     negative eigenvalues of t.
inline CheckResult check_free_fermion(Level level, std::uint64_t seed) {
  const int n = level == Level::Full ? 4 : 3;
  const int reps = level == Level::Full ? 10 : 4;
  Rng rng(seed);
  double worst = 0;
  for (int rep = 0; rep < reps; ++rep) {
    TwoBodyIntegrals ints = TwoBodyIntegrals::zero(n);
    ints.t = detail::random_hermitian(n, rng);
    const double e0 = ground_energy(build_hamiltonian(ints));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(ints.t,
                                                           Eigen::EigenvaluesOnly);
    double negative_sum = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
      negative_sum += std::min(0.0, solver.eigenvalues()(i));
    worst = std::max(worst, std::abs(e0 - negative_sum));
  }
  std::ostringstream note;
  note << "max |E0 - sum of negative one-body eigenvalues| = " << worst
         << " over " << reps << " instances at n=" << n;
  return CheckResult{"free-fermion-spectrum", worst <= 1e-9, note.str()};
}

/// 12. Bound-explorer soundness gate: whenever the certificate
///     min-eig(H - H_A) >= -1e-9 holds, E0(H_A) <= E0(H) + 1e-9.
inline CheckResult check_bound_gate(Level level, std::uint64_t seed) {
  const std::vector<int> ns =
      level == Level::Full ? std::vector<int>{2, 3} : std::vector<int>{2};
  Rng rng(seed);
  bool pass = true;
  int certified = 0, total = 0;
  std::ostringstream note;
  for (int n : ns) {
    std::vector<TwoBodyIntegrals> instances;
    if (n == 2) instances.push_back(builtin_instance("n2-repulsive"));
    // Seeded random repulsive instances: V = G G* symmetrized physically.
    for (int rep = 0; rep < 2; ++rep) {
      TwoBodyIntegrals ints = TwoBodyIntegrals::zero(n);
      ints.t = detail::random_hermitian(n, rng);
      Eigen::MatrixXcd g(n * n, n * n);
      for (Eigen::Index r = 0; r < n * n; ++r)
        for (Eigen::Index c = 0; c < n * n; ++c) g(r, c) = rng.complex_box();
      Eigen::MatrixXcd w = g * g.adjoint();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              const Complex sym = 0.5 * (w(i * n + j, k * n + l) +
                                         w(j * n + i, l * n + k));
              ints.v(i, j, k, l) = sym;
            }
      instances.push_back(std::move(ints));
    }
    for (const TwoBodyIntegrals& ints : instances) {
      // The first half of the O_1 basis genuinely mutilates the quartic
      // term (pair annihilators are 1-particle operators, so the full O_1
      // families leave H untouched); its certificate may legitimately fail,
      // which is exactly what the gate is for.
      std::vector<BasisElement> half = enumerate_basis_Bk(n, 1);
      half.resize(half.size() / 2);
      const std::vector<std::vector<BasisElement>> subsets = {
          {},
          enumerate_basis_Bk(n, 1),
          enumerate_basis_B(n),
          enumerate_basis_Majorana(n, 1),
          std::move(half),
      };
      for (const auto& subset : subsets) {
        const BoundReport report = compute_bound(ints, subset);
        ++total;
        if (report.certificate) {
          ++certified;
          if (report.e0_truncated > report.e0_full + 1e-9) {
            pass = false;
            note << "certified instance violates bound (n=" << n << "); ";
          }
        }
        if (subset.size() == std::size_t(1) << (2 * n)) {
          // Full basis: H_A must reproduce H.
          if (std::abs(report.e0_truncated - report.e0_full) > 1e-9 ||
              std::abs(report.gap_min_eig) > 1e-9) {
            pass = false;
            note << "full-basis truncation deviates (n=" << n << "); ";
          }
        }
      }
    }
  }
  note << certified << "/" << total
       << " instances certified; the bound held on every certified instance";
  return CheckResult{"bound-soundness-gate", pass, note.str()};
}

using CheckFunction = std::function<CheckResult(Level, std::uint64_t)>;

struct NamedCheck {
  int criterion;
  CheckFunction run;
};

inline const std::vector<NamedCheck>& all_checks() {
  static const std::vector<NamedCheck> checks = {
      {1, check_trace_formula_general},  {2, check_trace_formula_disjoint},
      {3, check_gram_B},                 {4, check_dimension_counts},
      {5, check_span_equality},          {6, check_breal},
      {7, check_majorana},               {8, check_pi1_reconstruction},
      {9, check_number_trace},           {10, check_projection_laws},
      {11, check_free_fermion},          {12, check_bound_gate},
  };
  return checks;
}

inline std::vector<CheckResult> run_all(Level level, std::uint64_t seed = kDefaultSeed) {
  std::vector<CheckResult> results;
  results.reserve(all_checks().size());
  for (const NamedCheck& check : all_checks()) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r = check.run(level, seed);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace fockbasis::verify
