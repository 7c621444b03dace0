// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockbasis {

/// Maximum orbital count for the combinatorial path (bitmask fits a word,
/// 4^n basis enumeration stays addressable).
inline constexpr int kMaxOrbitals = 16;

/// Maximum orbital count for any dense 2^n x 2^n realization.
inline constexpr int kMaxDenseOrbitals = 8;

/// Subset of the orbital index set {1..n}, encoded as a bitmask.
///
/// Bit p (LSB = 0) stands for orbital p+1.  All public I/O (identifiers,
/// files, CLI) speaks 1-based orbital indices; everything in here works on
/// 0-based bit positions.
class OrbitalSet {
 public:
  OrbitalSet() = default;

  OrbitalSet(std::uint32_t bits, int n) : bits_(bits), n_(n) {
    if (n < 0 || n > kMaxOrbitals)
      throw std::invalid_argument("OrbitalSet: orbital count out of range");
    if (n < 32 && (bits >> n) != 0)
      throw std::invalid_argument("OrbitalSet: bits above orbital count");
  }

  static OrbitalSet empty(int n) { return OrbitalSet(0u, n); }
  static OrbitalSet full(int n) {
    return OrbitalSet(n == 0 ? 0u : ((1u << n) - 1u), n);
  }

  /// Build from 1-based orbital indices (the convention of all I/O).
  static OrbitalSet from_orbitals(std::initializer_list<int> orbitals, int n) {
    std::uint32_t b = 0;
    for (int i : orbitals) {
      if (i < 1 || i > n) throw std::invalid_argument("orbital index out of range");
      b |= 1u << (i - 1);
    }
    return OrbitalSet(b, n);
  }
  static OrbitalSet from_orbitals(const std::vector<int>& orbitals, int n) {
    std::uint32_t b = 0;
    for (int i : orbitals) {
      if (i < 1 || i > n) throw std::invalid_argument("orbital index out of range");
      b |= 1u << (i - 1);
    }
    return OrbitalSet(b, n);
  }

  std::uint32_t bits() const { return bits_; }
  int n() const { return n_; }
  int size() const { return std::popcount(bits_); }
  bool is_empty() const { return bits_ == 0; }

  bool contains_bit(int p) const { return (bits_ >> p) & 1u; }
  bool subset_of(OrbitalSet other) const { return (bits_ & ~other.bits_) == 0; }
  bool disjoint_with(OrbitalSet other) const { return (bits_ & other.bits_) == 0; }

  OrbitalSet set_union(OrbitalSet other) const { return with_bits(bits_ | other.bits_); }
  OrbitalSet set_intersection(OrbitalSet other) const { return with_bits(bits_ & other.bits_); }
  OrbitalSet set_minus(OrbitalSet other) const { return with_bits(bits_ & ~other.bits_); }
  OrbitalSet complement() const { return with_bits(~bits_ & full(n_).bits_); }

  /// 1-based orbital indices, ascending.
  std::vector<int> orbitals() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint32_t b = bits_; b != 0; b &= b - 1)
      out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  friend bool operator==(OrbitalSet a, OrbitalSet b) {
    return a.bits_ == b.bits_ && a.n_ == b.n_;
  }
  friend bool operator!=(OrbitalSet a, OrbitalSet b) { return !(a == b); }
  /// Deterministic ordering: plain integer order of the bitmask value.
  friend bool operator<(OrbitalSet a, OrbitalSet b) { return a.bits_ < b.bits_; }

 private:
  OrbitalSet with_bits(std::uint32_t b) const { return OrbitalSet(b, n_); }

  std::uint32_t bits_ = 0;
  int n_ = 0;
};

namespace detail {

/// Crossing count between two bit sets: number of pairs (x, y) with
/// x a set bit of `left`, y a set bit of `right`, and x > y.  This is the
/// number of transpositions needed to merge the ascending sequence of `left`
/// past the ascending sequence of `right`.
inline int crossing_count(std::uint32_t left, std::uint32_t right) {
  int count = 0;
  for (std::uint32_t b = right; b != 0; b &= b - 1) {
    const int y = std::countr_zero(b);
    count += std::popcount(left & ~((2u << y) - 1u));
  }
  return count;
}

/// Parity (mod 2) of the permutation sorting the concatenation of the given
/// disjoint ascending blocks into one ascending sequence.
inline int concat_sort_parity(std::span<const OrbitalSet> blocks) {
  int parity = 0;
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      parity ^= crossing_count(blocks[i].bits(), blocks[j].bits()) & 1;
  return parity;
}

}  // namespace detail

namespace testing {
/// Deliberate-fault hook for the verification harness: when set, multi_sign
/// flips the parity of every nonzero result.  Never enabled in normal use.
inline bool corrupt_multi_sign = false;
}  // namespace testing

/// Multi-sign <phi_{A1} ^ ... ^ phi_{Ak}, phi_{B1} ^ ... ^ phi_{Bl}>.
///
/// Zero unless the tops are pairwise disjoint, the bottoms are pairwise
/// disjoint, and both unions agree; otherwise the sign of the permutation
/// relating the two concatenated ascending index sequences.
inline int multi_sign(std::span<const OrbitalSet> tops,
                      std::span<const OrbitalSet> bottoms) {
  std::uint32_t top_union = 0, bottom_union = 0;
  for (const OrbitalSet& s : tops) {
    if (top_union & s.bits()) return 0;
    top_union |= s.bits();
  }
  for (const OrbitalSet& s : bottoms) {
    if (bottom_union & s.bits()) return 0;
    bottom_union |= s.bits();
  }
  if (top_union != bottom_union) return 0;
  const int parity =
      detail::concat_sort_parity(tops) ^ detail::concat_sort_parity(bottoms);
  int sign = parity ? -1 : +1;
  if (testing::corrupt_multi_sign) sign = -sign;
  return sign;
}

inline int multi_sign(std::initializer_list<OrbitalSet> tops,
                      std::initializer_list<OrbitalSet> bottoms) {
  return multi_sign(std::span<const OrbitalSet>(tops.begin(), tops.size()),
                    std::span<const OrbitalSet>(bottoms.begin(), bottoms.size()));
}

/// Visit every submask of `mask`, including 0 and mask itself.
template <typename F>
void for_each_submask(std::uint32_t mask, F&& visit) {
  std::uint32_t sub = mask;
  while (true) {
    visit(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

/// Exact binomial coefficient (fits in 64 bits for every n used here).
inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long result = 1;
  if (k > n - k) k = n - k;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

}  // namespace fockbasis
