// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "fockbasis/orbital_set.hpp"

namespace fockbasis {

using Complex = std::complex<double>;

/// Key of a normal-ordered monomial c*_A c_B.  A and B are bitmasks over the
/// same orbital count and need not be disjoint.
struct MonomialKey {
  std::uint32_t A = 0;
  std::uint32_t B = 0;
  auto operator<=>(const MonomialKey&) const = default;
};

/// One monomial coeff * c*_A c_B in canonical form.
struct CanonicalMonomial {
  OrbitalSet A;
  OrbitalSet B;
  Complex coeff;
};

/// n_K c*_A c_B = sign * c*_{A u K} c_{B u K} for pairwise disjoint K, A, B.
///
/// The sign is fixed by evaluating both sides on the minimal occupied state
/// phi_{B u K}, where each side reduces to a single signed basis vector.
inline CanonicalMonomial monomial_to_canonical(OrbitalSet K, OrbitalSet A,
                                               OrbitalSet B) {
  if (!K.disjoint_with(A) || !K.disjoint_with(B) || !A.disjoint_with(B))
    throw std::invalid_argument("monomial_to_canonical: sets must be pairwise disjoint");
  const int parity = (detail::crossing_count(B.bits(), K.bits()) +
                      detail::crossing_count(A.bits(), K.bits())) & 1;
  return CanonicalMonomial{A.set_union(K), B.set_union(K),
                           Complex(parity ? -1.0 : 1.0)};
}

/// Finite linear combination of normal-ordered monomials c*_A c_B, stored
/// canonically: at most one coefficient per (A, B) key, zeros pruned.
/// These span all of B(F) in finite dimension, so any Fock space operator
/// has a unique such expansion.
class OperatorPoly {
 public:
  OperatorPoly() = default;
  explicit OperatorPoly(int n) : n_(n) {
    if (n < 0 || n > kMaxOrbitals)
      throw std::invalid_argument("OperatorPoly: orbital count out of range");
  }

  static OperatorPoly identity(int n) {
    OperatorPoly p(n);
    p.add_term(0, 0, Complex(1));
    return p;
  }

  static OperatorPoly zero(int n) { return OperatorPoly(n); }

  /// Particle number operator N = sum_i c*_i c_i.
  static OperatorPoly number_operator(int n) {
    OperatorPoly p(n);
    for (int i = 0; i < n; ++i) p.add_term(1u << i, 1u << i, Complex(1));
    return p;
  }

  int n() const { return n_; }
  const std::map<MonomialKey, Complex>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Complex coefficient(std::uint32_t A, std::uint32_t B) const {
    auto it = terms_.find(MonomialKey{A, B});
    return it == terms_.end() ? Complex(0) : it->second;
  }

  void add_term(std::uint32_t A, std::uint32_t B, Complex coeff) {
    if (coeff == Complex(0)) return;
    MonomialKey key{A, B};
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == Complex(0)) terms_.erase(it);
    }
  }

  void add_term(const CanonicalMonomial& m) {
    add_term(m.A.bits(), m.B.bits(), m.coeff);
  }

  OperatorPoly& operator+=(const OperatorPoly& other) {
    require_same_n(other);
    for (const auto& [key, coeff] : other.terms_) add_term(key.A, key.B, coeff);
    return *this;
  }

  OperatorPoly& operator-=(const OperatorPoly& other) {
    require_same_n(other);
    for (const auto& [key, coeff] : other.terms_) add_term(key.A, key.B, -coeff);
    return *this;
  }

  OperatorPoly& operator*=(Complex scale) {
    if (scale == Complex(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [key, coeff] : terms_) coeff *= scale;
    return *this;
  }

  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
  friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
  friend OperatorPoly operator*(Complex s, OperatorPoly p) { return p *= s; }

  /// Adjoint: (x c*_A c_B)* = conj(x) c*_B c_A.
  OperatorPoly adjoint() const {
    OperatorPoly out(n_);
    for (const auto& [key, coeff] : terms_)
      out.add_term(key.B, key.A, std::conj(coeff));
    return out;
  }

  /// Drop terms with |coeff| <= eps (cleanup after floating accumulation).
  void prune(double eps) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (std::abs(it->second) <= eps)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  /// tr(c*_A c_B) = delta_{A,B} 2^{n-|A|}; exact, no dense matrix involved.
  Complex trace() const {
    Complex sum(0);
    for (const auto& [key, coeff] : terms_)
      if (key.A == key.B)
        sum += coeff * double(1LL << (n_ - std::popcount(key.A)));
    return sum;
  }

  friend double max_abs_diff(const OperatorPoly& a, const OperatorPoly& b) {
    a.require_same_n(b);
    double worst = 0;
    for (const auto& [key, coeff] : a.terms_)
      worst = std::max(worst, std::abs(coeff - b.coefficient(key.A, key.B)));
    for (const auto& [key, coeff] : b.terms_)
      worst = std::max(worst, std::abs(coeff - a.coefficient(key.A, key.B)));
    return worst;
  }

 private:
  void require_same_n(const OperatorPoly& other) const {
    if (n_ != other.n_)
      throw std::invalid_argument("OperatorPoly: orbital count mismatch");
  }

  int n_ = 0;
  std::map<MonomialKey, Complex> terms_;
};

/// c*_p * P, expanded back into canonical form.  Uses
/// c*_p c*_A = (-1)^{|{a in A : a < p}|} c*_{A u {p}} (zero when p in A).
inline OperatorPoly leftmul_creation(int p, const OperatorPoly& poly) {
  OperatorPoly out(poly.n());
  const std::uint32_t pbit = 1u << p;
  const std::uint32_t below = pbit - 1u;
  for (const auto& [key, coeff] : poly.terms()) {
    if (key.A & pbit) continue;
    const int parity = std::popcount(key.A & below) & 1;
    out.add_term(key.A | pbit, key.B, parity ? -coeff : coeff);
  }
  return out;
}

/// c_p * P, expanded back into canonical form via the CAR:
///   c_p c*_A c_B = 1(p in A) (-1)^{|{a<p}|} c*_{A\p} c_B
///                + (-1)^{|A|} 1(p not in B) (-1)^{|{b in B : b > p}|} c*_A c_{B u {p}}.
inline OperatorPoly leftmul_annihilation(int p, const OperatorPoly& poly) {
  OperatorPoly out(poly.n());
  const std::uint32_t pbit = 1u << p;
  const std::uint32_t below = pbit - 1u;
  for (const auto& [key, coeff] : poly.terms()) {
    if (key.A & pbit) {
      const int parity = std::popcount(key.A & below) & 1;
      out.add_term(key.A & ~pbit, key.B, parity ? -coeff : coeff);
    }
    if (!(key.B & pbit)) {
      const int parity =
          (std::popcount(key.A) + std::popcount(key.B & ~below & ~pbit)) & 1;
      out.add_term(key.A, key.B | pbit, parity ? -coeff : coeff);
    }
  }
  return out;
}

}  // namespace fockbasis
