// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fockbasis/operator_poly.hpp"
#include "fockbasis/orbital_set.hpp"

namespace fockbasis {

/// Brute-force 2^n x 2^n matrix realization of a Fock space operator.
/// Rows and columns are indexed by the OrbitalSet bitmask value, so index 0
/// is the vacuum and index 2^n - 1 the fully occupied state.
struct DenseOperator {
  int n = 0;
  Eigen::MatrixXcd mat;

  DenseOperator() = default;
  DenseOperator(int n_, Eigen::MatrixXcd m) : n(n_), mat(std::move(m)) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    if (mat.rows() != dim || mat.cols() != dim)
      throw std::invalid_argument("DenseOperator: matrix dimension mismatch");
  }

  static DenseOperator zero(int n) {
    require_dense_n(n);
    const Eigen::Index dim = Eigen::Index(1) << n;
    return DenseOperator(n, Eigen::MatrixXcd::Zero(dim, dim));
  }

  static DenseOperator identity(int n) {
    require_dense_n(n);
    const Eigen::Index dim = Eigen::Index(1) << n;
    return DenseOperator(n, Eigen::MatrixXcd::Identity(dim, dim));
  }

  static void require_dense_n(int n) {
    if (n < 0 || n > kMaxDenseOrbitals)
      throw std::invalid_argument("dense realization limited to n <= 8");
  }

  Eigen::Index dim() const { return mat.rows(); }

  DenseOperator adjoint() const { return DenseOperator(n, mat.adjoint()); }

  double hermiticity_defect() const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
  }
  bool is_hermitian(double tol = 1e-12) const {
    return hermiticity_defect() <= tol;
  }

  friend DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) {
    check_match(a, b);
    return DenseOperator(a.n, a.mat + b.mat);
  }
  friend DenseOperator operator-(const DenseOperator& a, const DenseOperator& b) {
    check_match(a, b);
    return DenseOperator(a.n, a.mat - b.mat);
  }
  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
    check_match(a, b);
    return DenseOperator(a.n, a.mat * b.mat);
  }
  friend DenseOperator operator*(Complex s, const DenseOperator& a) {
    return DenseOperator(a.n, s * a.mat);
  }

  static void check_match(const DenseOperator& a, const DenseOperator& b) {
    if (a.n != b.n)
      throw std::invalid_argument("DenseOperator: dimension mismatch");
  }
};

/// Matrix of the single-orbital creation operator c*_i (1-based orbital).
/// c*_i phi_I = 1(i not in I) (-1)^{|{j in I : j < i}|} phi_{I u {i}},
/// so every entry is -1, 0 or +1.
inline DenseOperator creation_matrix(int orbital, int n) {
  DenseOperator::require_dense_n(n);
  if (orbital < 1 || orbital > n)
    throw std::invalid_argument("creation_matrix: orbital out of range");
  const std::uint32_t pbit = 1u << (orbital - 1);
  const std::uint32_t below = pbit - 1u;
  DenseOperator out = DenseOperator::zero(n);
  const std::uint32_t dim = 1u << n;
  for (std::uint32_t I = 0; I < dim; ++I) {
    if (I & pbit) continue;
    const int parity = std::popcount(I & below) & 1;
    out.mat(I | pbit, I) = parity ? -1.0 : 1.0;
  }
  return out;
}

/// Matrix of c_i = (c*_i)^*.
inline DenseOperator annihilation_matrix(int orbital, int n) {
  return creation_matrix(orbital, n).adjoint();
}

namespace detail {

/// Sign of the dyad |phi_{A u N}><phi_{B u N}| inside c*_A c_B, for
/// N disjoint from A u B.  Derived from the action on phi_{B u N}.
inline int monomial_dyad_sign(std::uint32_t A, std::uint32_t B, std::uint32_t N) {
  const int parity = (crossing_count(B, N) + crossing_count(A, N)) & 1;
  return parity ? -1 : +1;
}

}  // namespace detail

/// Sum of coeff * (matrix of c*_A)(matrix of c_B) over all terms, assembled
/// entrywise: c*_A c_B = sum over N subset of (A u B)^c of
/// sign * |phi_{A u N}><phi_{B u N}|.  Exact for integer coefficients.
inline DenseOperator poly_to_dense(const OperatorPoly& poly) {
  DenseOperator out = DenseOperator::zero(poly.n());
  const std::uint32_t full = poly.n() == 0 ? 0u : ((1u << poly.n()) - 1u);
  for (const auto& [key, coeff] : poly.terms()) {
    const std::uint32_t free = full & ~(key.A | key.B);
    for_each_submask(free, [&](std::uint32_t N) {
      const int sign = detail::monomial_dyad_sign(key.A, key.B, N);
      out.mat(key.A | N, key.B | N) += double(sign) * coeff;
    });
  }
  return out;
}

/// Hilbert-Schmidt inner product tr(X* Y), anti-linear in the first slot.
inline Complex hs_inner_dense(const DenseOperator& X, const DenseOperator& Y) {
  DenseOperator::check_match(X, Y);
  return (X.mat.conjugate().cwiseProduct(Y.mat)).sum();
}

inline double hs_norm_dense(const DenseOperator& X) {
  return std::sqrt(std::abs(hs_inner_dense(X, X)));
}

/// Inverse of poly_to_dense: the unique coefficient family x_{A,B} with
/// X = sum x_{A,B} c*_A c_B.
///
/// The change of basis from dyads |phi_I><phi_J| to monomials is block
/// diagonal over the difference class (P, Q) = (I \ J, J \ I): within a class
/// the dyad index M = I n J and the monomial index R = A n B satisfy R subset
/// of M with unit diagonal, so each block is solved by back-substitution over
/// the subset lattice (no factorization library needed, exact signs).
inline OperatorPoly dense_to_poly(const DenseOperator& X) {
  const int n = X.n;
  const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
  OperatorPoly out(n);
  std::vector<std::uint32_t> submasks;
  std::vector<Complex> y;  // solved coefficients, indexed like submasks
  for (std::uint32_t P = 0; P <= full; ++P) {
    const std::uint32_t notP = full & ~P;
    std::uint32_t Q = notP;
    while (true) {  // all Q disjoint from P
      const std::uint32_t F = full & ~(P | Q);
      submasks.clear();
      for_each_submask(F, [&](std::uint32_t m) { submasks.push_back(m); });
      // for_each_submask yields descending masks; reverse for subsets-first.
      std::reverse(submasks.begin(), submasks.end());
      y.assign(submasks.size(), Complex(0));
      for (std::size_t mi = 0; mi < submasks.size(); ++mi) {
        const std::uint32_t M = submasks[mi];
        Complex rhs = X.mat(P | M, Q | M);
        for (std::size_t ri = 0; ri < mi; ++ri) {
          const std::uint32_t R = submasks[ri];
          if ((R & ~M) != 0 || y[ri] == Complex(0)) continue;
          const int sign = detail::monomial_dyad_sign(P | R, Q | R, M & ~R);
          rhs -= double(sign) * y[ri];
        }
        y[mi] = rhs;  // diagonal sign (N = 0) is +1
        out.add_term(P | M, Q | M, rhs);
      }
      if (Q == 0) break;
      Q = (Q - 1) & notP;
    }
  }
  return out;
}

/// Smallest eigenvalue of a Hermitian operator.
inline double min_eigenvalue(const DenseOperator& X, double hermitian_tol = 1e-10) {
  if (X.hermiticity_defect() > hermitian_tol)
    throw std::invalid_argument("min_eigenvalue: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(X.mat,
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// Positive, trace-one operator; the input to RDM and projection operations.
struct DensityMatrix {
  DenseOperator op;

  static DensityMatrix validated(DenseOperator candidate,
                                 double psd_tol = 1e-12,
                                 double trace_tol = 1e-12) {
    if (!candidate.is_hermitian(1e-12))
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(candidate.mat.trace() - Complex(1)) > trace_tol)
      throw std::invalid_argument("DensityMatrix: trace differs from one");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(candidate.mat,
                                                           Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -psd_tol)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    return DensityMatrix{std::move(candidate)};
  }
};

}  // namespace fockbasis
