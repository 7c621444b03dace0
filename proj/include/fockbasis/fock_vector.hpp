// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fockbasis/orbital_set.hpp"

namespace fockbasis {

using Complex = std::complex<double>;

/// Signed result of a creation/annihilation string acting on a Slater basis
/// vector: phi_I maps to sign * phi_result (or to zero, reported as nullopt).
struct SignedSet {
  int sign;  // +1 or -1
  OrbitalSet result;
};

/// c*_A phi_I  =  1(A and I disjoint) * multi_sign([A,I];[A u I]) * phi_{A u I}
inline std::optional<SignedSet> apply_creation(OrbitalSet A, OrbitalSet I) {
  if (!A.disjoint_with(I)) return std::nullopt;
  const int parity = detail::crossing_count(A.bits(), I.bits()) & 1;
  int sign = parity ? -1 : +1;
  if (testing::corrupt_multi_sign) sign = -sign;
  return SignedSet{sign, A.set_union(I)};
}

/// c_A phi_I  =  1(A subset of I) * multi_sign([A, I\A];[I]) * phi_{I\A}
inline std::optional<SignedSet> apply_annihilation(OrbitalSet A, OrbitalSet I) {
  if (!A.subset_of(I)) return std::nullopt;
  const OrbitalSet rest = I.set_minus(A);
  const int parity = detail::crossing_count(A.bits(), rest.bits()) & 1;
  int sign = parity ? -1 : +1;
  if (testing::corrupt_multi_sign) sign = -sign;
  return SignedSet{sign, rest};
}

/// n_K c*_A c_B phi_I for pairwise disjoint K, A, B.  Combines the
/// occupation filter n_K phi = 1(K subset of I) phi with the monomial action.
inline std::optional<SignedSet> apply_monomial_basis(OrbitalSet K, OrbitalSet A,
                                                     OrbitalSet B, OrbitalSet I) {
  auto annihilated = apply_annihilation(B, I);
  if (!annihilated) return std::nullopt;
  auto created = apply_creation(A, annihilated->result);
  if (!created) return std::nullopt;
  if (!K.subset_of(created->result)) return std::nullopt;
  return SignedSet{annihilated->sign * created->sign, created->result};
}

/// Vector in the 2^n-dimensional Fock space, indexed by OrbitalSet bitmasks.
/// Carries either sparse (map) or dense (array) amplitudes; operations keep
/// the storage kind of their input.
class FockVector {
 public:
  enum class Storage { Sparse, Dense };

  explicit FockVector(int n, Storage storage = Storage::Sparse)
      : n_(n), storage_(storage) {
    if (n < 0 || n > kMaxOrbitals)
      throw std::invalid_argument("FockVector: orbital count out of range");
    if (storage_ == Storage::Dense) dense_.assign(std::size_t(1) << n, Complex(0));
  }

  /// The Slater basis vector phi_A (amplitude 1 on A, 0 elsewhere).
  static FockVector basis_state(OrbitalSet A, Storage storage = Storage::Sparse) {
    FockVector v(A.n(), storage);
    v.add(A.bits(), Complex(1));
    return v;
  }

  /// The vacuum Omega = phi_{empty set}.
  static FockVector vacuum(int n, Storage storage = Storage::Sparse) {
    return basis_state(OrbitalSet::empty(n), storage);
  }

  int n() const { return n_; }
  Storage storage() const { return storage_; }

  Complex amplitude(std::uint32_t mask) const {
    if (storage_ == Storage::Dense) return dense_[mask];
    auto it = sparse_.find(mask);
    return it == sparse_.end() ? Complex(0) : it->second;
  }

  void add(std::uint32_t mask, Complex value) {
    if (storage_ == Storage::Dense) {
      dense_[mask] += value;
    } else {
      auto [it, inserted] = sparse_.try_emplace(mask, value);
      if (!inserted) it->second += value;
      if (it->second == Complex(0)) sparse_.erase(it);
    }
  }

  /// Deterministic (ascending mask) iteration over nonzero amplitudes.
  template <typename F>
  void for_each(F&& visit) const {
    if (storage_ == Storage::Dense) {
      for (std::uint32_t mask = 0; mask < dense_.size(); ++mask)
        if (dense_[mask] != Complex(0)) visit(mask, dense_[mask]);
    } else {
      for (const auto& [mask, value] : sparse_) visit(mask, value);
    }
  }

  double norm() const {
    double sum = 0;
    for_each([&](std::uint32_t, Complex v) { sum += std::norm(v); });
    return std::sqrt(sum);
  }

  std::size_t nonzero_count() const {
    if (storage_ == Storage::Sparse) return sparse_.size();
    std::size_t count = 0;
    for (const Complex& v : dense_)
      if (v != Complex(0)) ++count;
    return count;
  }

 private:
  int n_;
  Storage storage_;
  std::map<std::uint32_t, Complex> sparse_;
  std::vector<Complex> dense_;
};

/// Linear extension of the monomial action n_K c*_A c_B over a Fock vector.
/// K, A, B must be pairwise disjoint and match the vector's orbital count.
inline FockVector apply_monomial(OrbitalSet K, OrbitalSet A, OrbitalSet B,
                                 const FockVector& v) {
  if (K.n() != v.n() || A.n() != v.n() || B.n() != v.n())
    throw std::invalid_argument("apply_monomial: dimension mismatch");
  if (!K.disjoint_with(A) || !K.disjoint_with(B) || !A.disjoint_with(B))
    throw std::invalid_argument("apply_monomial: K, A, B must be pairwise disjoint");
  FockVector out(v.n(), v.storage());
  v.for_each([&](std::uint32_t mask, Complex value) {
    if (auto mapped = apply_monomial_basis(K, A, B, OrbitalSet(mask, v.n())))
      out.add(mapped->result.bits(), double(mapped->sign) * value);
  });
  return out;
}

}  // namespace fockbasis
