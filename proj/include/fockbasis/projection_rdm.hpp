// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fockbasis/basis_builder.hpp"
#include "fockbasis/dense_oracle.hpp"
#include "fockbasis/parallel.hpp"
#include "fockbasis/rng.hpp"
#include "fockbasis/trace_formulas.hpp"

namespace fockbasis {

/// One-body reduced density matrix gamma of a density matrix.
///
/// Entrywise convention: gamma_{ij} = tr(rho c*_i c_j).  This is the unique
/// convention under which the pi_1 reconstruction identity
///   2^n pi_1(rho) = (n+1) - 2 tr(gamma) - 2 N + 4 dGamma(gamma)
/// holds with dGamma(gamma) = sum_{i,j} gamma_{ji} c*_i c_j; the transposed
/// convention fails it for complex-valued gamma (checked in the test suite).
struct OneBodyMatrix {
  int n = 0;
  Eigen::MatrixXcd gamma;
};

/// Outcome of an orthogonal projection onto O_k.
struct ProjectionReport {
  int k = 0;
  BasisFamily family = BasisFamily::B;
  double input_norm = 0;
  double output_norm = 0;
  double residual_norm = 0;
  std::optional<OperatorPoly> output_poly;
  std::optional<DenseOperator> output_dense;
};

namespace detail {

inline std::vector<BasisElement> kbody_basis(int n, int k, BasisFamily family) {
  switch (family) {
    case BasisFamily::B: return enumerate_basis_Bk(n, k);
    case BasisFamily::Majorana: return enumerate_basis_Majorana(n, k);
    case BasisFamily::BReal: return enumerate_basis_BReal(n, k);
  }
  throw std::invalid_argument("project_kbody: unknown family");
}

}  // namespace detail

/// pi_k(X) = sum over basis elements b of O_k of <b, X> b, evaluated with the
/// exact combinatorial inner product.  The coefficient loop runs in parallel;
/// accumulation is a fixed-order reduction, so output is thread-count stable.
inline ProjectionReport project_kbody(const OperatorPoly& X, int k,
                                      BasisFamily family = BasisFamily::B) {
  const int n = X.n();
  if (k < 0 || k > n) throw std::invalid_argument("project_kbody: invalid k");
  const std::vector<BasisElement> basis = detail::kbody_basis(n, k, family);
  std::vector<Complex> coeff(basis.size());
  parallel_for(basis.size(), [&](std::size_t i) {
    const double norm_sq = std::exp2(-double(basis[i].norm_half_exp));
    coeff[i] = norm_sq * hs_inner_poly(basis[i].poly, X);
  });
  OperatorPoly out(n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    OperatorPoly scaled = basis[i].poly;
    scaled *= coeff[i];
    out += scaled;
  }
  out.prune(0.0);
  ProjectionReport report;
  report.k = k;
  report.family = family;
  report.input_norm = hs_norm_poly(X);
  report.output_norm = hs_norm_poly(out);
  report.residual_norm = hs_norm_poly(X - out);
  report.output_poly = std::move(out);
  return report;
}

/// Dense-path projection; requires n <= 8.
inline ProjectionReport project_kbody(const DenseOperator& X, int k,
                                      BasisFamily family = BasisFamily::B) {
  const int n = X.n;
  if (k < 0 || k > n) throw std::invalid_argument("project_kbody: invalid k");
  const std::vector<BasisElement> basis = detail::kbody_basis(n, k, family);
  std::vector<DenseOperator> dense(basis.size());
  std::vector<Complex> coeff(basis.size());
  parallel_for(basis.size(), [&](std::size_t i) {
    dense[i] = poly_to_dense(basis[i].poly);
    const double norm_sq = std::exp2(-double(basis[i].norm_half_exp));
    coeff[i] = norm_sq * hs_inner_dense(dense[i], X);
  });
  DenseOperator out = DenseOperator::zero(n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    out.mat += coeff[i] * dense[i].mat;
  ProjectionReport report;
  report.k = k;
  report.family = family;
  report.input_norm = hs_norm_dense(X);
  report.output_norm = hs_norm_dense(out);
  report.residual_norm = hs_norm_dense(X - out);
  report.output_dense = std::move(out);
  return report;
}

/// gamma_{ij} = tr(rho c*_i c_j) (see OneBodyMatrix for why this orientation).
/// Each trace touches only the 2^(n-1) nonzero entries of the monomial.
inline OneBodyMatrix one_rdm(const DensityMatrix& rho) {
  const int n = rho.op.n;
  OneBodyMatrix out{n, Eigen::MatrixXcd::Zero(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // tr(rho c*_{i+1} c_{j+1}): the monomial maps column J u {j} to row
      // J u {i} with a crossing sign, for J avoiding both.
      const std::uint32_t ibit = 1u << i, jbit = 1u << j;
      const std::uint32_t free = ((n == 0 ? 0u : (1u << n) - 1u)) & ~ibit & ~jbit;
      Complex sum(0);
      for_each_submask(free, [&](std::uint32_t N) {
        const int sign = detail::monomial_dyad_sign(ibit, jbit, N);
        sum += double(sign) * rho.op.mat(jbit | N, ibit | N);
      });
      out.gamma(i, j) = sum;
    }
  }
  return out;
}

/// Differential second quantization dGamma(gamma) = sum_{i,j} gamma_{ji} c*_i c_j.
inline OperatorPoly second_quantize(const OneBodyMatrix& gamma) {
  OperatorPoly out(gamma.n);
  for (int i = 0; i < gamma.n; ++i)
    for (int j = 0; j < gamma.n; ++j)
      out.add_term(1u << i, 1u << j, gamma.gamma(j, i));
  return out;
}

/// Right-hand side of the pi_1 reconstruction identity, divided by 2^n:
///   pi_1(rho) = 2^-n [ ((n+1) - 2 tr gamma) 1 - 2 N + 4 dGamma(gamma) ].
/// Requires rho particle-number-preserving ([rho, N] = 0), which is the
/// hypothesis of the identity.
inline DenseOperator pi1_reconstruction_rhs(const DensityMatrix& rho,
                                       double commutator_tol = 1e-10) {
  const int n = rho.op.n;
  const DenseOperator number = poly_to_dense(OperatorPoly::number_operator(n));
  const double defect =
      (rho.op.mat * number.mat - number.mat * rho.op.mat).cwiseAbs().maxCoeff();
  if (defect > commutator_tol)
    throw std::invalid_argument("pi1_reconstruction_rhs: density is not particle-number-preserving");
  const OneBodyMatrix gamma = one_rdm(rho);
  OperatorPoly rhs = OperatorPoly::identity(n);
  rhs *= Complex(double(n + 1)) - 2.0 * gamma.gamma.trace();
  rhs -= 2.0 * OperatorPoly::number_operator(n);
  rhs += 4.0 * second_quantize(gamma);
  DenseOperator out = poly_to_dense(rhs);
  out.mat *= std::exp2(-double(n));
  return out;
}

/// Random particle-number-preserving density matrix: an independent positive
/// block G G* on every particle sector, normalized to unit trace.
inline DensityMatrix random_number_preserving_density(int n, Rng& rng) {
  DenseOperator::require_dense_n(n);
  const std::uint32_t dim = 1u << n;
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k <= n; ++k) {
    std::vector<std::uint32_t> sector;
    for (std::uint32_t mask = 0; mask < dim; ++mask)
      if (std::popcount(mask) == k) sector.push_back(mask);
    const Eigen::Index s = Eigen::Index(sector.size());
    Eigen::MatrixXcd g(s, s);
    for (Eigen::Index r = 0; r < s; ++r)
      for (Eigen::Index c = 0; c < s; ++c) g(r, c) = rng.complex_box();
    const Eigen::MatrixXcd block = g * g.adjoint();
    for (Eigen::Index r = 0; r < s; ++r)
      for (Eigen::Index c = 0; c < s; ++c) mat(sector[r], sector[c]) = block(r, c);
  }
  mat /= mat.trace().real();
  return DensityMatrix::validated(DenseOperator(n, std::move(mat)));
}

}  // namespace fockbasis
