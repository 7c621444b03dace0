// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fockbasis/operator_poly.hpp"
#include "fockbasis/orbital_set.hpp"

namespace fockbasis {

/// The family M(A,B,C,D) of Fock basis indices I contributing to
/// tr{(c*_A c_B)* c*_C c_D}: all I with B u D subset of I and
/// A + (I\B) = C + (I\D) as disjoint unions.  When nonempty it is exactly
/// { (B u D) + N | N subset of freeMask }, with freeMask the complement
/// of A u B u C u D.
struct MFamily {
  OrbitalSet A, B, C, D;
  bool nonempty = false;
  OrbitalSet base;       // B u D, meaningful when nonempty
  OrbitalSet free_mask;  // complement of A u C u B u D

  std::size_t size() const {
    return nonempty ? (std::size_t(1) << free_mask.size()) : 0;
  }

  /// Materialize the family, ascending by bitmask value.
  std::vector<OrbitalSet> enumerate() const {
    std::vector<OrbitalSet> out;
    if (!nonempty) return out;
    out.reserve(size());
    for_each_submask(free_mask.bits(), [&](std::uint32_t nbits) {
      out.emplace_back(base.bits() | nbits, base.n());
    });
    std::reverse(out.begin(), out.end());
    return out;
  }
};

/// Truth of condition A + (D\B) = C + (B\D) (disjoint unions on both sides).
/// Set-theoretically equivalent to A\B = C\D and B\A = D\C.
inline bool set_equiv_check(OrbitalSet A, OrbitalSet B, OrbitalSet C, OrbitalSet D) {
  const OrbitalSet left_extra = D.set_minus(B);
  const OrbitalSet right_extra = B.set_minus(D);
  return A.disjoint_with(left_extra) && C.disjoint_with(right_extra) &&
         A.set_union(left_extra) == C.set_union(right_extra);
}

/// Characterize M(A,B,C,D) without enumeration.
inline MFamily m_family(OrbitalSet A, OrbitalSet B, OrbitalSet C, OrbitalSet D) {
  const int n = A.n();
  if (B.n() != n || C.n() != n || D.n() != n)
    throw std::invalid_argument("m_family: orbital count mismatch");
  MFamily fam{A, B, C, D, false, OrbitalSet::empty(n), OrbitalSet::empty(n)};
  fam.nonempty = (A.set_minus(B) == C.set_minus(D)) &&
                 (B.set_minus(A) == D.set_minus(C));
  if (fam.nonempty) {
    fam.base = B.set_union(D);
    fam.free_mask = A.set_union(B).set_union(C).set_union(D).complement();
  }
  return fam;
}

/// <c_{A,B}, c_{C,D}> for arbitrary (not necessarily disjoint) index sets,
/// evaluated oracle-free as the signed integer
///   sum over I in M of  sign(A, I\B ; C, I\D) sign(I ; B, I\B) sign(I ; D, I\D).
inline long long hs_inner_general(OrbitalSet A, OrbitalSet B, OrbitalSet C,
                                  OrbitalSet D) {
  const MFamily fam = m_family(A, B, C, D);
  if (!fam.nonempty) return 0;
  const int n = A.n();
  long long sum = 0;
  for_each_submask(fam.free_mask.bits(), [&](std::uint32_t nbits) {
    const OrbitalSet I(fam.base.bits() | nbits, n);
    const OrbitalSet ImB = I.set_minus(B);
    const OrbitalSet ImD = I.set_minus(D);
    const std::array<OrbitalSet, 2> top1{A, ImB}, bot1{C, ImD};
    const std::array<OrbitalSet, 1> top2{I};
    const std::array<OrbitalSet, 2> bot2{B, ImB}, bot3{D, ImD};
    sum += (long long)(multi_sign(top1, bot1)) * multi_sign(top2, bot2) *
           multi_sign(top2, bot3);
  });
  return sum;
}

/// <n_K c_{A,B}, n_L c_{C,D}> = delta_{A,C} delta_{B,D} 2^{n - |A u B u K u L|}
/// for K,A,B pairwise disjoint and L,C,D pairwise disjoint.  No sign appears.
inline long long hs_inner_disjoint(OrbitalSet K, OrbitalSet A, OrbitalSet B,
                                   OrbitalSet L, OrbitalSet C, OrbitalSet D) {
  if (!K.disjoint_with(A) || !K.disjoint_with(B) || !A.disjoint_with(B) ||
      !L.disjoint_with(C) || !L.disjoint_with(D) || !C.disjoint_with(D))
    throw std::invalid_argument("hs_inner_disjoint: triples must be pairwise disjoint");
  if (A != C || B != D) return 0;
  const int occupied =
      std::popcount(A.bits() | B.bits() | K.bits() | L.bits());
  return 1LL << (A.n() - occupied);
}

/// sum over I subset K, J subset L of (-2)^{|I|+|J|} 2^{-|I u J|} = delta_{K,L}.
/// Every term equals (-1)^{|I|+|J|} 2^{|I n J|}, so the sum is an exact integer.
inline long long binomial_orthogonality(OrbitalSet K, OrbitalSet L) {
  long long sum = 0;
  for_each_submask(K.bits(), [&](std::uint32_t ibits) {
    const int isz = std::popcount(ibits);
    for_each_submask(L.bits(), [&](std::uint32_t jbits) {
      const int jsz = std::popcount(jbits);
      const long long magnitude = 1LL << std::popcount(ibits & jbits);
      sum += ((isz + jsz) & 1) ? -magnitude : magnitude;
    });
  });
  return sum;
}

/// Exact Hilbert-Schmidt inner product of two canonical polynomials,
/// anti-linear in the first slot.  Every monomial pairing is an integer.
inline Complex hs_inner_poly(const OperatorPoly& X, const OperatorPoly& Y) {
  if (X.n() != Y.n())
    throw std::invalid_argument("hs_inner_poly: orbital count mismatch");
  const int n = X.n();
  Complex sum(0);
  for (const auto& [xkey, xcoeff] : X.terms()) {
    const OrbitalSet A(xkey.A, n), B(xkey.B, n);
    for (const auto& [ykey, ycoeff] : Y.terms()) {
      const long long pairing =
          hs_inner_general(A, B, OrbitalSet(ykey.A, n), OrbitalSet(ykey.B, n));
      if (pairing != 0)
        sum += std::conj(xcoeff) * ycoeff * double(pairing);
    }
  }
  return sum;
}

inline double hs_norm_poly(const OperatorPoly& X) {
  return std::sqrt(std::abs(hs_inner_poly(X, X)));
}

}  // namespace fockbasis
