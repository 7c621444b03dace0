// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cctype>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockbasis/basis_builder.hpp"
#include "fockbasis/dense_oracle.hpp"
#include "fockbasis/projection_rdm.hpp"

namespace fockbasis {

/// One- and two-body integrals of a second-quantized Hamiltonian
///   H = sum_{ij} t_{ij} c*_i c_j + 1/2 sum_{ijkl} V_{ij;kl} c*_i c*_j c_l c_k.
/// V is stored as an n^2 x n^2 matrix on the doubled index space with row
/// (i*n + j) and column (k*n + l), 0-based.
struct TwoBodyIntegrals {
  int n = 0;
  Eigen::MatrixXcd t;  // n x n
  Eigen::MatrixXcd V;  // n^2 x n^2
  double core_energy = 0;

  static TwoBodyIntegrals zero(int n) {
    return TwoBodyIntegrals{n, Eigen::MatrixXcd::Zero(n, n),
                            Eigen::MatrixXcd::Zero(n * n, n * n), 0.0};
  }

  Complex v(int i, int j, int k, int l) const { return V(i * n + j, k * n + l); }
  Complex& v(int i, int j, int k, int l) { return V(i * n + j, k * n + l); }

  /// t Hermitian, V Hermitian on the doubled space, and the physical
  /// exchange symmetry V_{ij;kl} = V_{ji;lk}.
  void validate(double tol = 1e-10) const {
    if ((t - t.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("TwoBodyIntegrals: t is not Hermitian");
    if ((V - V.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("TwoBodyIntegrals: V is not Hermitian");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            if (std::abs(v(i, j, k, l) - v(j, i, l, k)) > tol)
              throw std::invalid_argument(
                  "TwoBodyIntegrals: physical symmetry V_{ij;kl} = V_{ji;lk} violated");
  }

  /// "Repulsive" in the sense used by the truncation bound: V >= 0 as a
  /// matrix on the doubled index space.
  bool repulsive(double tol = 1e-10) const {
    if (n == 0) return true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(V, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol;
  }
};

namespace detail {

/// Canonical form of the quartic string: c*_i c*_j c_l c_k = sign * c_{{i,j},{k,l}}
/// (0-based bit positions; zero when i == j or k == l).
inline bool quartic_canonical(int i, int j, int l, int k, std::uint32_t& A,
                              std::uint32_t& B, int& sign) {
  if (i == j || k == l) return false;
  A = (1u << i) | (1u << j);
  B = (1u << k) | (1u << l);
  sign = 1;
  if (i > j) sign = -sign;  // c*_i c*_j = -c*_{{j,i} ascending} when i > j
  if (l < k) sign = -sign;  // c_l c_k = -c_{{k,l}} when l < k
  return true;
}

}  // namespace detail

/// Canonical-polynomial form of H; exact for exactly-representable integrals.
inline OperatorPoly hamiltonian_poly(const TwoBodyIntegrals& ints) {
  ints.validate();
  OperatorPoly h(ints.n);
  for (int i = 0; i < ints.n; ++i)
    for (int j = 0; j < ints.n; ++j)
      h.add_term(1u << i, 1u << j, ints.t(i, j));
  for (int i = 0; i < ints.n; ++i)
    for (int j = 0; j < ints.n; ++j)
      for (int k = 0; k < ints.n; ++k)
        for (int l = 0; l < ints.n; ++l) {
          std::uint32_t A, B;
          int sign;
          if (!detail::quartic_canonical(i, j, l, k, A, B, sign)) continue;
          h.add_term(A, B, 0.5 * double(sign) * ints.v(i, j, k, l));
        }
  h.prune(0.0);
  return h;
}

inline DenseOperator build_hamiltonian(const TwoBodyIntegrals& ints) {
  return poly_to_dense(hamiltonian_poly(ints));
}

/// E_0(H) for Hermitian H: in finite dimension the infimum over states is
/// attained at the bottom of the spectrum.
inline double ground_energy(const DenseOperator& h) { return min_eigenvalue(h); }

/// H_A: each annihilation pair c_l c_k is replaced by its Hilbert-Schmidt
/// projection P_A[c_l c_k] = sum_{theta in A} <theta, c_l c_k> theta before
/// composing with c*_i c*_j.  P_A acts on L^2(F) (it is a projection on
/// operators, not on Fock space), and the result is Hermitized as
/// (X + X*)/2 to cover subsets A that are not adjoint-closed.
inline DenseOperator build_truncated_hamiltonian(
    const TwoBodyIntegrals& ints, const std::vector<BasisElement>& subset) {
  ints.validate();
  if (!ints.repulsive())
    throw std::invalid_argument(
        "build_truncated_hamiltonian: V is not positive semidefinite, bound claim void");
  const int n = ints.n;
  for (const BasisElement& e : subset)
    if (e.n != n)
      throw std::invalid_argument("build_truncated_hamiltonian: subset element n mismatch");

  // P_A applied to c_{empty,{k,l}}, for every unordered pair {k,l}.
  std::vector<OperatorPoly> projected(std::size_t(n) * n, OperatorPoly(n));
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      OperatorPoly pair(n);
      pair.add_term(0, (1u << k) | (1u << l), Complex(1));
      OperatorPoly acc(n);
      for (const BasisElement& theta : subset) {
        const double norm_sq = std::exp2(-double(theta.norm_half_exp));
        const Complex c = norm_sq * hs_inner_poly(theta.poly, pair);
        if (c == Complex(0)) continue;
        OperatorPoly scaled = theta.poly;
        scaled *= c;
        acc += scaled;
      }
      projected[std::size_t(k) * n + l] = acc;
    }

  OperatorPoly h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h.add_term(1u << i, 1u << j, ints.t(i, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (k == l) continue;
          // c_l c_k = sign * c_{empty, {k,l}} with sign = +1 iff l > k.
          const int pair_sign = (l > k) ? +1 : -1;
          const OperatorPoly& base =
              projected[std::size_t(std::min(k, l)) * n + std::max(k, l)];
          if (base.is_zero()) continue;
          OperatorPoly term = leftmul_creation(i, leftmul_creation(j, base));
          term *= 0.5 * double(pair_sign) * ints.v(i, j, k, l);
          h += term;
        }
    }
  h.prune(1e-14);
  DenseOperator dense = poly_to_dense(h);
  dense.mat = 0.5 * (dense.mat + dense.mat.adjoint().eval());
  return dense;
}

/// Certificate-carrying result of one truncation-bound experiment.
struct BoundReport {
  double e0_full = 0;
  double e0_truncated = 0;
  double gap_min_eig = 0;  // min eigenvalue of H - H_A
  bool certificate = false;  // gap_min_eig >= -1e-9
  double core_energy = 0;
  std::vector<std::string> subset_ids;
};

inline BoundReport compute_bound(const TwoBodyIntegrals& ints,
                                 const std::vector<BasisElement>& subset) {
  const DenseOperator h = build_hamiltonian(ints);
  const DenseOperator ha = build_truncated_hamiltonian(ints, subset);
  BoundReport report;
  report.e0_full = ground_energy(h) + ints.core_energy;
  report.e0_truncated = ground_energy(ha) + ints.core_energy;
  report.gap_min_eig = min_eigenvalue(h - ha);
  report.certificate = report.gap_min_eig >= -1e-9;
  report.core_energy = ints.core_energy;
  report.subset_ids.reserve(subset.size());
  for (const BasisElement& e : subset) report.subset_ids.push_back(e.id());
  return report;
}

/// FCIDUMP reader.  Namelist header "&FCI NORB=...&END" (or "/" terminator),
/// then "value i j k l" lines: chemists' (ij|kl) two-electron integrals,
/// "i j 0 0" one-body integrals, "0 0 0 0" the core energy.  Orbitals are
/// treated as n spin orbitals indexed 1..n; the chemist integral (pq|rs)
/// lands at V_{pr;qs} with the full eightfold real symmetry expanded.
inline TwoBodyIntegrals parse_fcidump(std::istream& in) {
  std::string header;
  int line_number = 0;
  // Collect the namelist, which may span several lines.
  bool header_done = false;
  std::string line;
  while (!header_done && std::getline(in, line)) {
    ++line_number;
    header += line + " ";
    const auto upper = [&](std::size_t pos) {
      return header.find("&END", pos) != std::string::npos ||
             header.find("/", pos) != std::string::npos;
    };
    header_done = upper(0);
  }
  if (!header_done)
    throw std::runtime_error("FCIDUMP: unterminated &FCI namelist header");
  const std::size_t norb_pos = header.find("NORB");
  if (norb_pos == std::string::npos)
    throw std::runtime_error("FCIDUMP: missing NORB in header");
  std::size_t p = header.find('=', norb_pos);
  if (p == std::string::npos)
    throw std::runtime_error("FCIDUMP: malformed NORB field");
  ++p;
  while (p < header.size() && std::isspace(static_cast<unsigned char>(header[p]))) ++p;
  int n = 0;
  while (p < header.size() && std::isdigit(static_cast<unsigned char>(header[p])))
    n = 10 * n + (header[p++] - '0');
  if (n < 1 || n > kMaxOrbitals)
    throw std::runtime_error("FCIDUMP: NORB out of supported range");

  TwoBodyIntegrals ints = TwoBodyIntegrals::zero(n);
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream fields(line);
    double value;
    int i, j, k, l;
    if (!(fields >> value >> i >> j >> k >> l))
      throw std::runtime_error("FCIDUMP: malformed integral line " +
                               std::to_string(line_number));
    const auto check = [&](int idx) {
      if (idx < 0 || idx > n)
        throw std::runtime_error("FCIDUMP: orbital index out of range on line " +
                                 std::to_string(line_number));
    };
    check(i); check(j); check(k); check(l);
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      ints.core_energy = value;
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0)
        throw std::runtime_error("FCIDUMP: bad one-body indices on line " +
                                 std::to_string(line_number));
      ints.t(i - 1, j - 1) = value;
      ints.t(j - 1, i - 1) = value;
    } else {
      if (i == 0 || j == 0 || k == 0 || l == 0)
        throw std::runtime_error("FCIDUMP: bad two-body indices on line " +
                                 std::to_string(line_number));
      const int p0 = i - 1, q0 = j - 1, r0 = k - 1, s0 = l - 1;
      const int images[8][4] = {
          {p0, q0, r0, s0}, {q0, p0, r0, s0}, {p0, q0, s0, r0}, {q0, p0, s0, r0},
          {r0, s0, p0, q0}, {s0, r0, p0, q0}, {r0, s0, q0, p0}, {s0, r0, q0, p0}};
      for (const auto& im : images) {
        // Chemist (pq|rs) = physicist <pr|qs> = V_{pr;qs}.
        ints.v(im[0], im[2], im[1], im[3]) = value;
      }
    }
  }
  return ints;
}

/// Small self-contained instances for the CLI bound explorer.
inline TwoBodyIntegrals builtin_instance(const std::string& name) {
  if (name == "n2-free") {
    TwoBodyIntegrals ints = TwoBodyIntegrals::zero(2);
    ints.t(0, 0) = -1.0;
    ints.t(1, 1) = -0.6;
    return ints;
  }
  if (name == "n2-repulsive") {
    TwoBodyIntegrals ints = TwoBodyIntegrals::zero(2);
    ints.t(0, 0) = -1.0;
    ints.t(1, 1) = -0.6;
    // V_{12;12} = V_{21;21} = 1: the quartic part is n_1 n_2, PSD on the
    // doubled index space.
    ints.v(0, 1, 0, 1) = 1.0;
    ints.v(1, 0, 1, 0) = 1.0;
    return ints;
  }
  if (name == "n3-ring") {
    // Nearest-neighbour hopping on a 3-ring with on-site-style repulsion.
    TwoBodyIntegrals ints = TwoBodyIntegrals::zero(3);
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      ints.t(i, j) = -1.0;
      ints.t(j, i) = -1.0;
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) {
          ints.v(i, j, i, j) = 0.5;
        }
    return ints;
  }
  throw std::invalid_argument("unknown built-in instance: " + name);
}

}  // namespace fockbasis
