// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fockbasis/operator_poly.hpp"
#include "fockbasis/orbital_set.hpp"
#include "fockbasis/parallel.hpp"
#include "fockbasis/trace_formulas.hpp"

namespace fockbasis {

enum class BasisFamily { B, BReal, Majorana };

inline const char* family_tag(BasisFamily f) {
  switch (f) {
    case BasisFamily::B: return "B";
    case BasisFamily::BReal: return "BR";
    case BasisFamily::Majorana: return "M";
  }
  return "?";
}

/// b_K = sum over I subset of K of (-2)^|I| n_I.  Already canonical:
/// n_I = c*_I c_I carries key (I, I) with coefficient +1.
inline OperatorPoly build_bK(OrbitalSet K) {
  OperatorPoly p(K.n());
  for_each_submask(K.bits(), [&](std::uint32_t ibits) {
    const int sz = std::popcount(ibits);
    const double coeff = ((sz & 1) ? -1.0 : 1.0) * double(1LL << sz);
    p.add_term(ibits, ibits, Complex(coeff));
  });
  return p;
}

/// Majorana generator a_j for j in 1..2n:
///   a_{2k-1} = i (c*_k - c_k),  a_{2k} = c*_k + c_k.
/// Orbital k owns the index pair {2k-1, 2k}; the algebra {a_j, a_k} = 2 delta
/// and every orthonormality statement below hold for any such assignment.
inline OperatorPoly build_majorana(int j, int n) {
  if (j < 1 || j > 2 * n)
    throw std::invalid_argument("build_majorana: index out of range");
  const int orbital_bit = (j - 1) / 2;  // 0-based orbital
  const std::uint32_t mask = 1u << orbital_bit;
  OperatorPoly p(n);
  if (j % 2 == 0) {
    p.add_term(mask, 0, Complex(1));
    p.add_term(0, mask, Complex(1));
  } else {
    p.add_term(mask, 0, Complex(0, 1));
    p.add_term(0, mask, Complex(0, -1));
  }
  return p;
}

namespace detail {

/// a_j * P without materializing a_j: dispatch to the two leftmul kernels.
inline OperatorPoly leftmul_majorana(int j, const OperatorPoly& poly) {
  const int orbital_bit = (j - 1) / 2;
  if (j % 2 == 0) {
    OperatorPoly out = leftmul_creation(orbital_bit, poly);
    out += leftmul_annihilation(orbital_bit, poly);
    return out;
  }
  OperatorPoly out = leftmul_creation(orbital_bit, poly);
  out -= leftmul_annihilation(orbital_bit, poly);
  out *= Complex(0, 1);
  return out;
}

inline std::vector<std::uint32_t> ascending_submasks(std::uint32_t mask) {
  std::vector<std::uint32_t> out;
  out.reserve(std::size_t(1) << std::popcount(mask));
  for_each_submask(mask, [&](std::uint32_t m) { out.push_back(m); });
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// a_J = a_{j1} ... a_{jl} for J = {j1 < ... < jl} in {1..2n}; a_empty = 1.
inline OperatorPoly build_majorana_product(std::uint32_t jmask, int n) {
  OperatorPoly p = OperatorPoly::identity(n);
  // Multiply from the right end of the ascending product, so each step is a
  // left multiplication.
  for (int j = 2 * n; j >= 1; --j)
    if (jmask & (1u << (j - 1))) p = detail::leftmul_majorana(j, p);
  return p;
}

/// Normalized element of one of the operator families.  `poly` holds the
/// integer-coefficient (or +-i) expansion WITHOUT the normalization, which is
/// kept exactly as 2^(-norm_half_exp/2) and folded in only on demand.
struct BasisElement {
  BasisFamily family = BasisFamily::B;
  OrbitalSet K, I, J;                // families B and BReal
  int parity = +1;                   // BReal: +1 symmetric, -1 antisymmetric part
  std::uint32_t majorana_mask = 0;   // family Majorana: J subset of {1..2n}
  int n = 0;
  int norm_half_exp = 0;             // normalization factor 2^(-norm_half_exp/2)
  OperatorPoly poly;

  double normalization() const { return std::exp2(-0.5 * norm_half_exp); }

  OperatorPoly normalized_poly() const {
    OperatorPoly out = poly;
    out *= Complex(normalization());
    return out;
  }

  /// Total particle degree 2l of the element; it belongs to O_k iff the
  /// degree is even and at most 2k.
  int particle_degree() const {
    if (family == BasisFamily::Majorana) return std::popcount(majorana_mask);
    return I.size() + J.size() + 2 * K.size();
  }

  bool in_kbody(int k) const {
    const int deg = particle_degree();
    return deg % 2 == 0 && deg <= 2 * k;
  }

  std::string id() const;
};

inline BasisElement make_element_B(OrbitalSet K, OrbitalSet I, OrbitalSet J) {
  if (!K.disjoint_with(I) || !K.disjoint_with(J) || !I.disjoint_with(J))
    throw std::invalid_argument("basis element: K, I, J must be pairwise disjoint");
  BasisElement e;
  e.family = BasisFamily::B;
  e.K = K;
  e.I = I;
  e.J = J;
  e.n = K.n();
  e.norm_half_exp = K.n() - I.size() - J.size();
  e.poly = OperatorPoly(K.n());
  for_each_submask(K.bits(), [&](std::uint32_t lbits) {
    const int sz = std::popcount(lbits);
    CanonicalMonomial m = monomial_to_canonical(OrbitalSet(lbits, K.n()), I, J);
    m.coeff *= double(1LL << sz) * ((sz & 1) ? -1.0 : 1.0);
    e.poly.add_term(m);
  });
  return e;
}

inline BasisElement make_element_BReal(OrbitalSet K, OrbitalSet I, OrbitalSet J,
                                       int parity) {
  if (!K.disjoint_with(I) || !K.disjoint_with(J) || !I.disjoint_with(J))
    throw std::invalid_argument("basis element: K, I, J must be pairwise disjoint");
  BasisElement e;
  e.family = BasisFamily::BReal;
  e.K = K;
  e.I = I;
  e.J = J;
  e.parity = parity;
  e.n = K.n();
  if (I.is_empty() && J.is_empty()) {
    // Self-adjoint orbit of length one: 2^(-n/2) b_K.
    if (parity != +1)
      throw std::invalid_argument("basis element: b_K part has no '-' variant");
    e.norm_half_exp = K.n();
    e.poly = build_bK(K);
    return e;
  }
  if (!(I < J))
    throw std::invalid_argument("basis element: BReal pair requires I < J");
  e.norm_half_exp = K.n() + 1 - I.size() - J.size();
  const BasisElement half = make_element_B(K, I, J);
  const BasisElement half_adj = make_element_B(K, J, I);
  if (parity > 0) {
    e.poly = half.poly + half_adj.poly;  // sqrt(2) Re: b_K (c_IJ + c_JI)
  } else {
    e.poly = half.poly - half_adj.poly;  // sqrt(2) Im: -i b_K (c_IJ - c_JI)
    e.poly *= Complex(0, -1);
  }
  return e;
}

inline BasisElement make_element_Majorana(std::uint32_t jmask, int n) {
  if (n > 0 && (jmask >> (2 * n)) != 0)
    throw std::invalid_argument("basis element: Majorana mask out of range");
  BasisElement e;
  e.family = BasisFamily::Majorana;
  e.K = e.I = e.J = OrbitalSet::empty(n);
  e.majorana_mask = jmask;
  e.n = n;
  e.norm_half_exp = n;
  e.poly = build_majorana_product(jmask, n);
  return e;
}

namespace detail {

inline std::string index_list(const std::vector<int>& indices) {
  std::string out = "[";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(indices[i]);
  }
  out += ']';
  return out;
}

inline std::vector<int> majorana_indices(std::uint32_t jmask) {
  std::vector<int> out;
  for (std::uint32_t b = jmask; b != 0; b &= b - 1)
    out.push_back(std::countr_zero(b) + 1);
  return out;
}

}  // namespace detail

/// Stable identifier, e.g. "B:K=[2];I=[1];J=[3]", "BR:+:K=[];I=[1];J=[2]",
/// "M:J=[1,4,5,6]".  Indices are 1-based and ascending.
inline std::string BasisElement::id() const {
  std::string out = family_tag(family);
  if (family == BasisFamily::Majorana) {
    out += ":J=" + detail::index_list(detail::majorana_indices(majorana_mask));
    return out;
  }
  if (family == BasisFamily::BReal) out += parity > 0 ? ":+" : ":-";
  out += ":K=" + detail::index_list(K.orbitals());
  out += ";I=" + detail::index_list(I.orbitals());
  out += ";J=" + detail::index_list(J.orbitals());
  return out;
}

/// All 4^n elements of the family B, ordered by (K, I, J) bitmask value.
inline std::vector<BasisElement> enumerate_basis_B(int n) {
  if (n < 0 || n > kMaxDenseOrbitals)
    throw std::invalid_argument("enumerate_basis_B: expansion limited to n <= 8");
  const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
  std::vector<BasisElement> out;
  out.reserve(std::size_t(1) << (2 * n));
  for (std::uint32_t kbits = 0; kbits <= full; ++kbits) {
    for (std::uint32_t ibits : detail::ascending_submasks(full & ~kbits)) {
      for (std::uint32_t jbits : detail::ascending_submasks(full & ~kbits & ~ibits)) {
        out.push_back(make_element_B(OrbitalSet(kbits, n), OrbitalSet(ibits, n),
                                     OrbitalSet(jbits, n)));
      }
    }
    if (full == 0) break;
  }
  std::sort(out.begin(), out.end(), [](const BasisElement& a, const BasisElement& b) {
    return std::tuple(a.K.bits(), a.I.bits(), a.J.bits()) <
           std::tuple(b.K.bits(), b.I.bits(), b.J.bits());
  });
  return out;
}

/// The sublist of B spanning the k-body space O_k.
inline std::vector<BasisElement> enumerate_basis_Bk(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("enumerate_basis_Bk: k out of range");
  std::vector<BasisElement> out;
  for (BasisElement& e : enumerate_basis_B(n))
    if (e.in_kbody(k)) out.push_back(std::move(e));
  return out;
}

/// Self-adjoint family: all 2^(-n/2) b_K, then for each disjoint (K, I, J)
/// with I < J the symmetric (+) and antisymmetrized (-) combinations.
/// With `k`, restricts to the k-body observables.
inline std::vector<BasisElement> enumerate_basis_BReal(int n,
                                                       std::optional<int> k = {}) {
  if (n < 0 || n > kMaxDenseOrbitals)
    throw std::invalid_argument("enumerate_basis_BReal: expansion limited to n <= 8");
  const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
  std::vector<BasisElement> out;
  for (std::uint32_t kbits = 0; kbits <= full; ++kbits) {
    if (k && std::popcount(kbits) > *k) continue;
    out.push_back(make_element_BReal(OrbitalSet(kbits, n), OrbitalSet::empty(n),
                                     OrbitalSet::empty(n), +1));
    if (full == 0) break;
  }
  for (std::uint32_t kbits = 0; kbits <= full; ++kbits) {
    for (std::uint32_t ibits : detail::ascending_submasks(full & ~kbits)) {
      for (std::uint32_t jbits : detail::ascending_submasks(full & ~kbits & ~ibits)) {
        if (ibits == 0 && jbits == 0) continue;
        if (!(ibits < jbits)) continue;  // orbit representative
        const int degree =
            std::popcount(ibits) + std::popcount(jbits) + 2 * std::popcount(kbits);
        if (k && (degree % 2 != 0 || degree > 2 * *k)) continue;
        const OrbitalSet K(kbits, n), I(ibits, n), J(jbits, n);
        out.push_back(make_element_BReal(K, I, J, +1));
        out.push_back(make_element_BReal(K, I, J, -1));
      }
    }
    if (full == 0) break;
  }
  return out;
}

/// Majorana family: 2^(-n/2) a_J for J subset of {1..2n}, ascending by mask.
/// With `k`, restricts to even |J| <= 2k.
inline std::vector<BasisElement> enumerate_basis_Majorana(int n,
                                                          std::optional<int> k = {}) {
  if (n < 0 || n > kMaxDenseOrbitals)
    throw std::invalid_argument("enumerate_basis_Majorana: expansion limited to n <= 8");
  const std::uint64_t count = std::uint64_t(1) << (2 * n);
  std::vector<BasisElement> out;
  for (std::uint64_t jmask = 0; jmask < count; ++jmask) {
    const int sz = std::popcount(jmask);
    if (k && (sz % 2 != 0 || sz > 2 * *k)) continue;
    out.push_back(make_element_Majorana(std::uint32_t(jmask), n));
  }
  return out;
}

/// dim O_k = sum_{l=0}^{k} C(2n, 2l); cross-checked against the Vandermonde
/// double sum sum_l sum_i C(n,i) C(n,2l-i).
inline long long dim_kbody(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("dim_kbody: k out of range");
  long long direct = 0, double_sum = 0;
  for (int l = 0; l <= k; ++l) {
    direct += binomial(2 * n, 2 * l);
    for (int i = 0; i <= 2 * l; ++i)
      double_sum += binomial(n, i) * binomial(n, 2 * l - i);
  }
  if (direct != double_sum)
    throw std::logic_error("dim_kbody: Vandermonde identity violated");
  return direct;
}

/// The k-body operator space marker (dimension bookkeeping only).
struct KBodySpace {
  int n = 0;
  int k = 0;
  long long dim = 0;
};

inline KBodySpace kbody_space(int n, int k) { return KBodySpace{n, k, dim_kbody(n, k)}; }

/// Index-level counts (no polynomial expansion), valid for n <= 16 as long
/// as the loop sizes stay addressable.
inline long long count_basis_B(int n) {
  const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
  long long count = 0;
  for (std::uint32_t kbits = 0;; ++kbits) {
    if (kbits > full) break;
    for_each_submask(full & ~kbits, [&](std::uint32_t ibits) {
      count += 1LL << std::popcount(full & ~kbits & ~ibits);
    });
    if (full == 0) break;
  }
  return count;
}

inline long long count_basis_Bk(int n, int k) {
  const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
  long long count = 0;
  for (std::uint32_t kbits = 0;; ++kbits) {
    if (kbits > full) break;
    for_each_submask(full & ~kbits, [&](std::uint32_t ibits) {
      for_each_submask(full & ~kbits & ~ibits, [&](std::uint32_t jbits) {
        const int degree =
            std::popcount(ibits) + std::popcount(jbits) + 2 * std::popcount(kbits);
        if (degree % 2 == 0 && degree <= 2 * k) ++count;
      });
    });
    if (full == 0) break;
  }
  return count;
}

inline long long count_basis_Majorana_k(int n, int k) {
  const std::uint64_t total = std::uint64_t(1) << (2 * n);
  long long count = 0;
  for (std::uint64_t jmask = 0; jmask < total; ++jmask) {
    const int sz = std::popcount(jmask);
    if (sz % 2 == 0 && sz <= 2 * k) ++count;
  }
  return count;
}

/// Exact integer <(unnormalized) e, (unnormalized) f> for two family-B
/// elements, via the disjoint trace formula applied to the b_K expansions:
/// every term is delta_{I,I'} delta_{J,J'} (-1)^{|L|+|L'|} 2^{|L n L'| + n - |I u J|}.
inline long long basis_inner_exact_B(const BasisElement& e, const BasisElement& f) {
  if (e.I != f.I || e.J != f.J) return 0;
  const int base_exp = e.n - e.I.size() - e.J.size();
  long long sum = 0;
  for_each_submask(e.K.bits(), [&](std::uint32_t lbits) {
    const int lsz = std::popcount(lbits);
    for_each_submask(f.K.bits(), [&](std::uint32_t mbits) {
      const int msz = std::popcount(mbits);
      const long long magnitude = 1LL
                                  << (std::popcount(lbits & mbits) + base_exp);
      sum += ((lsz + msz) & 1) ? -magnitude : magnitude;
    });
  });
  return sum;
}

/// Exact tr(a_J* a_K) by anticommute-and-cancel: sort the concatenated
/// generator string counting transpositions of distinct indices, contract
/// adjacent equal pairs (a_j^2 = 1), and use tr(a_I) = 0 for I nonempty.
inline long long majorana_inner_exact(std::uint32_t jmask, std::uint32_t kmask, int n) {
  std::vector<int> sequence;
  sequence.reserve(std::size_t(std::popcount(jmask)) + std::popcount(kmask));
  // a_J* = reversed product of self-adjoint generators.
  for (int j = 2 * n; j >= 1; --j)
    if (jmask & (1u << (j - 1))) sequence.push_back(j);
  for (int j = 1; j <= 2 * n; ++j)
    if (kmask & (1u << (j - 1))) sequence.push_back(j);
  // Insertion sort; each swap of distinct generators flips the sign.
  int parity = 0;
  for (std::size_t i = 1; i < sequence.size(); ++i)
    for (std::size_t p = i; p > 0 && sequence[p - 1] > sequence[p]; --p) {
      std::swap(sequence[p - 1], sequence[p]);
      parity ^= 1;
    }
  // Contract equal neighbours; leftover generators have zero trace.
  std::uint32_t leftover = 0;
  for (std::size_t i = 0; i < sequence.size();) {
    if (i + 1 < sequence.size() && sequence[i] == sequence[i + 1]) {
      i += 2;
    } else {
      leftover |= 1u << (sequence[i] - 1);
      ++i;
    }
  }
  if (leftover != 0) return 0;
  const long long trace = 1LL << n;
  return parity ? -trace : trace;
}

/// B intersect Majorana, by pairwise comparison of normalized expansions.
/// Expected result: the single element 2^(-n/2) * identity.
inline std::vector<BasisElement> basis_intersection_check(int n, double tol = 1e-12) {
  if (n < 1) throw std::invalid_argument("basis_intersection_check: n must be >= 1");
  const std::vector<BasisElement> b = enumerate_basis_B(n);
  const std::vector<BasisElement> m = enumerate_basis_Majorana(n);
  std::vector<BasisElement> common;
  for (const BasisElement& eb : b) {
    const OperatorPoly pb = eb.normalized_poly();
    for (const BasisElement& em : m) {
      if (em.poly.term_count() != eb.poly.term_count()) continue;
      if (max_abs_diff(pb, em.normalized_poly()) <= tol) {
        common.push_back(eb);
        break;
      }
    }
  }
  return common;
}

/// Result of a Gram-matrix verification sweep.
struct GramReport {
  std::size_t element_count = 0;
  double max_off_diagonal = 0;  // max |<e,f>| over e != f
  double max_diagonal_dev = 0;  // max |<e,e> - 1|
  bool exact = false;           // true when deviations are exact integers == 0

  bool identity(double tol = 1e-10) const {
    return max_off_diagonal <= tol && max_diagonal_dev <= tol;
  }
};

/// Exact-integer Gram sweep.  Works for any family mix drawn from B and
/// Majorana and for BReal (whose elements expand into at most two signed
/// B-type pieces); deviations are exact, so identity means literally zero.
inline GramReport gram_check_exact(const std::vector<BasisElement>& elements) {
  GramReport report;
  report.element_count = elements.size();
  report.exact = true;
  std::vector<double> row_off(elements.size(), 0.0);
  std::vector<double> row_diag(elements.size(), 0.0);
  parallel_for(elements.size(), [&](std::size_t r) {
    const BasisElement& e = elements[r];
    for (std::size_t c = r; c < elements.size(); ++c) {
      const BasisElement& f = elements[c];
      Complex raw;
      if (e.family == BasisFamily::Majorana && f.family == BasisFamily::Majorana) {
        raw = Complex(double(
            majorana_inner_exact(e.majorana_mask, f.majorana_mask, e.n)));
      } else if (e.family == BasisFamily::B && f.family == BasisFamily::B) {
        raw = Complex(double(basis_inner_exact_B(e, f)));
      } else {
        raw = hs_inner_poly(e.poly, f.poly);  // exact: integer/i coefficients
      }
      const double scale = std::exp2(-0.5 * (e.norm_half_exp + f.norm_half_exp));
      const Complex value = scale * raw;
      if (r == c) {
        row_diag[r] = std::max(row_diag[r], std::abs(value - Complex(1)));
      } else {
        row_off[r] = std::max(row_off[r], std::abs(value));
      }
    }
  });
  for (double v : row_off) report.max_off_diagonal = std::max(report.max_off_diagonal, v);
  for (double v : row_diag) report.max_diagonal_dev = std::max(report.max_diagonal_dev, v);
  return report;
}

}  // namespace fockbasis
