// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "fockbasis/dense_oracle.hpp"
#include "fockbasis/fock_vector.hpp"
#include "fockbasis/operator_poly.hpp"
#include "fockbasis/orbital_set.hpp"

using namespace fockbasis;

namespace {

OrbitalSet OS(std::initializer_list<int> orbitals, int n) {
  return OrbitalSet::from_orbitals(orbitals, n);
}

// Independent oracle for the multi-sign: the determinant of the overlap
// matrix <phi_{s_i}, phi_{t_j}> = delta(s_i, t_j) of the two concatenated
// index sequences, computed with exact fraction-free (Bareiss) elimination.
long long overlap_determinant(const std::vector<int>& s, const std::vector<int>& t) {
  if (s.size() != t.size()) return 0;
  const int m = int(s.size());
  if (m == 0) return 1;
  std::vector<std::vector<long long>> a(m, std::vector<long long>(m));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) a[r][c] = s[r] == t[c] ? 1 : 0;
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < m - 1; ++k) {
    if (a[k][k] == 0) {
      int pivot = -1;
      for (int r = k + 1; r < m; ++r)
        if (a[r][k] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (int r = k + 1; r < m; ++r)
      for (int c = k + 1; c < m; ++c)
        a[r][c] = (a[r][c] * a[k][k] - a[r][k] * a[k][c]) / prev;
    prev = a[k][k];
  }
  return sign * a[m - 1][m - 1];
}

std::vector<int> concat_indices(const std::vector<OrbitalSet>& blocks) {
  std::vector<int> out;
  for (const OrbitalSet& b : blocks)
    for (int i : b.orbitals()) out.push_back(i);
  return out;
}

long long multi_sign_oracle(const std::vector<OrbitalSet>& tops,
                            const std::vector<OrbitalSet>& bottoms) {
  return overlap_determinant(concat_indices(tops), concat_indices(bottoms));
}

// Dense matrix of c*_A assembled column-by-column from apply_creation.
DenseOperator creation_string_matrix(OrbitalSet A) {
  DenseOperator out = DenseOperator::zero(A.n());
  const std::uint32_t dim = 1u << A.n();
  for (std::uint32_t I = 0; I < dim; ++I)
    if (auto r = apply_creation(A, OrbitalSet(I, A.n())))
      out.mat(r->result.bits(), I) = double(r->sign);
  return out;
}

DenseOperator annihilation_string_matrix(OrbitalSet A) {
  DenseOperator out = DenseOperator::zero(A.n());
  const std::uint32_t dim = 1u << A.n();
  for (std::uint32_t I = 0; I < dim; ++I)
    if (auto r = apply_annihilation(A, OrbitalSet(I, A.n())))
      out.mat(r->result.bits(), I) = double(r->sign);
  return out;
}

}  // namespace

TEST_CASE("multi_sign on the worked examples") {
  const int n = 2;
  CHECK(multi_sign({OS({1}, n), OS({2}, n)}, {OS({1, 2}, n)}) == 1);
  // Frozen from the determinant oracle: swapping the two singleton blocks
  // transposes one pair.
  CHECK(multi_sign_oracle({OS({2}, n), OS({1}, n)}, {OS({1, 2}, n)}) == -1);
  CHECK(multi_sign({OS({2}, n), OS({1}, n)}, {OS({1, 2}, n)}) == -1);
  CHECK(multi_sign({OS({1}, n), OS({1}, n)}, {OS({1}, n)}) == 0);
  CHECK(multi_sign({OrbitalSet::empty(n)}, {OrbitalSet::empty(n)}) == 1);
}

TEST_CASE("multi_sign matches the determinant oracle exhaustively") {
  for (int n = 1; n <= 3; ++n) {
    const std::uint32_t count = 1u << n;
    for (std::uint32_t a = 0; a < count; ++a)
      for (std::uint32_t b = 0; b < count; ++b) {
        const OrbitalSet A(a, n), B(b, n);
        REQUIRE(multi_sign({A}, {B}) == multi_sign_oracle({A}, {B}));
        for (std::uint32_t c = 0; c < count; ++c) {
          const OrbitalSet C(c, n);
          REQUIRE(multi_sign({A, B}, {C}) == multi_sign_oracle({A, B}, {C}));
          REQUIRE(multi_sign({C}, {A, B}) == multi_sign_oracle({C}, {A, B}));
          for (std::uint32_t d = 0; d < count; ++d) {
            const OrbitalSet D(d, n);
            REQUIRE(multi_sign({A, B}, {C, D}) ==
                    multi_sign_oracle({A, B}, {C, D}));
          }
        }
      }
  }
}

TEST_CASE("multi_sign basic laws") {
  for (int n = 1; n <= 4; ++n) {
    const std::uint32_t count = 1u << n;
    for (std::uint32_t a = 0; a < count; ++a) {
      const OrbitalSet A(a, n);
      CHECK(multi_sign({A}, {A}) == 1);
      for (std::uint32_t b = 0; b < count; ++b)
        if (a != b) CHECK(multi_sign({OrbitalSet(b, n)}, {A}) == 0);
    }
  }
}

TEST_CASE("apply_creation worked examples") {
  const int n = 2;
  auto r = apply_creation(OS({1}, n), OS({2}, n));
  REQUIRE(r);
  CHECK(r->sign == 1);
  CHECK(r->result == OS({1, 2}, n));

  r = apply_creation(OS({2}, n), OS({1}, n));
  REQUIRE(r);
  CHECK(r->sign == -1);  // phi_2 ^ phi_1 = -phi_1 ^ phi_2
  CHECK(r->result == OS({1, 2}, n));
  // Cross-check against the dense matrix of c*_2.
  CHECK(creation_matrix(2, n).mat(OS({1, 2}, n).bits(), OS({1}, n).bits()) ==
        Complex(-1));

  CHECK_FALSE(apply_creation(OS({1}, n), OS({1}, n)));
}

TEST_CASE("apply_annihilation worked examples") {
  const int n = 2;
  auto r = apply_annihilation(OS({1}, n), OS({1, 2}, n));
  REQUIRE(r);
  CHECK(r->sign == 1);
  CHECK(r->result == OS({2}, n));
  CHECK(annihilation_matrix(1, n).mat(OS({2}, n).bits(), OS({1, 2}, n).bits()) ==
        Complex(1));

  r = apply_annihilation(OS({1, 2}, n), OS({1, 2}, n));
  REQUIRE(r);
  CHECK(r->sign == 1);
  CHECK(r->result.is_empty());

  const int n3 = 3;
  CHECK_FALSE(apply_annihilation(OS({3}, n3), OS({1, 2}, n3)));
}

TEST_CASE("creation and annihilation strings are mutually adjoint") {
  for (int n = 1; n <= 4; ++n) {
    const std::uint32_t count = 1u << n;
    for (std::uint32_t a = 0; a < count; ++a) {
      const OrbitalSet A(a, n);
      const DenseOperator up = creation_string_matrix(A);
      const DenseOperator down = annihilation_string_matrix(A);
      REQUIRE((up.mat - down.mat.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("CAR hold exactly in the dense realization") {
  for (int n = 1; n <= 4; ++n) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const DenseOperator ci = annihilation_matrix(i, n);
        const DenseOperator cj_up = creation_matrix(j, n);
        const DenseOperator cj = annihilation_matrix(j, n);
        Eigen::MatrixXcd anti = ci.mat * cj_up.mat + cj_up.mat * ci.mat;
        if (i == j)
          anti -= Eigen::MatrixXcd::Identity(anti.rows(), anti.cols());
        REQUIRE(anti.cwiseAbs().maxCoeff() == 0.0);
        REQUIRE((ci.mat * cj.mat + cj.mat * ci.mat).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("apply_monomial worked examples") {
  const int n = 2;
  const FockVector phi1 = FockVector::basis_state(OS({1}, n));
  const FockVector phi2 = FockVector::basis_state(OS({2}, n));

  // Identity monomial.
  const FockVector same = apply_monomial(OrbitalSet::empty(n), OrbitalSet::empty(n),
                                         OrbitalSet::empty(n), phi1);
  CHECK(same.amplitude(OS({1}, n).bits()) == Complex(1));
  CHECK(same.nonzero_count() == 1);

  // Occupation filter kills phi_1 when K = {2}.
  const FockVector filtered = apply_monomial(OS({2}, n), OrbitalSet::empty(n),
                                             OrbitalSet::empty(n), phi1);
  CHECK(filtered.nonzero_count() == 0);

  // c*_1 c_2 phi_2 = +phi_1.
  const FockVector hopped =
      apply_monomial(OrbitalSet::empty(n), OS({1}, n), OS({2}, n), phi2);
  CHECK(hopped.amplitude(OS({1}, n).bits()) == Complex(1));
  CHECK(hopped.nonzero_count() == 1);
}

TEST_CASE("apply_monomial requires matching dimensions and disjoint sets") {
  const FockVector v = FockVector::vacuum(2);
  CHECK_THROWS_AS(apply_monomial(OrbitalSet::empty(3), OrbitalSet::empty(3),
                                 OrbitalSet::empty(3), v),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      apply_monomial(OS({1}, 2), OS({1}, 2), OrbitalSet::empty(2), v),
      std::invalid_argument);
}

TEST_CASE("apply_monomial agrees with the dense oracle exhaustively") {
  for (int n = 1; n <= 3; ++n) {
    const std::uint32_t count = 1u << n;
    for (std::uint32_t k = 0; k < count; ++k)
      for (std::uint32_t a = 0; a < count; ++a) {
        if (a & k) continue;
        for (std::uint32_t b = 0; b < count; ++b) {
          if ((b & k) || (b & a)) continue;
          const OrbitalSet K(k, n), A(a, n), B(b, n);
          // Dense product n_K c*_A c_B from the string matrices.
          const Eigen::MatrixXcd product =
              creation_string_matrix(K).mat * annihilation_string_matrix(K).mat *
              creation_string_matrix(A).mat * annihilation_string_matrix(B).mat;
          for (std::uint32_t i = 0; i < count; ++i) {
            const FockVector image =
                apply_monomial(K, A, B, FockVector::basis_state(OrbitalSet(i, n)));
            for (std::uint32_t r = 0; r < count; ++r)
              REQUIRE(image.amplitude(r) == product(r, i));
          }
        }
      }
  }
}

TEST_CASE("monomial_to_canonical worked examples") {
  const int n = 3;
  const CanonicalMonomial plain = monomial_to_canonical(
      OrbitalSet::empty(n), OS({1}, n), OS({3}, n));
  CHECK(plain.A == OS({1}, n));
  CHECK(plain.B == OS({3}, n));
  CHECK(plain.coeff == Complex(1));

  const CanonicalMonomial occupation =
      monomial_to_canonical(OS({1}, n), OrbitalSet::empty(n), OrbitalSet::empty(n));
  CHECK(occupation.A == OS({1}, n));
  CHECK(occupation.B == OS({1}, n));
  CHECK(occupation.coeff == Complex(1));

  // K={2}, A={1}, B={3}: sign fixed by dense-oracle equality below, where
  // the exhaustive sweep covers this triple.
  const CanonicalMonomial mixed =
      monomial_to_canonical(OS({2}, n), OS({1}, n), OS({3}, n));
  CHECK(mixed.A == OS({1, 2}, n));
  CHECK(mixed.B == OS({2, 3}, n));
  CHECK(std::abs(mixed.coeff) == 1.0);
}

TEST_CASE("monomial_to_canonical dense round-trip, exhaustive") {
  for (int n = 1; n <= 3; ++n) {
    const std::uint32_t count = 1u << n;
    for (std::uint32_t k = 0; k < count; ++k)
      for (std::uint32_t a = 0; a < count; ++a) {
        if (a & k) continue;
        for (std::uint32_t b = 0; b < count; ++b) {
          if ((b & k) || (b & a)) continue;
          const OrbitalSet K(k, n), A(a, n), B(b, n);
          const Eigen::MatrixXcd lhs =
              creation_string_matrix(K).mat * annihilation_string_matrix(K).mat *
              creation_string_matrix(A).mat * annihilation_string_matrix(B).mat;
          OperatorPoly canonical(n);
          canonical.add_term(monomial_to_canonical(K, A, B));
          REQUIRE((lhs - poly_to_dense(canonical).mat).cwiseAbs().maxCoeff() == 0.0);
        }
      }
  }
}

TEST_CASE("FockVector keeps its storage kind") {
  const int n = 2;
  const FockVector sparse = FockVector::basis_state(OS({2}, n));
  const FockVector dense = FockVector::basis_state(OS({2}, n), FockVector::Storage::Dense);
  CHECK(apply_monomial(OrbitalSet::empty(n), OS({1}, n), OS({2}, n), sparse).storage() ==
        FockVector::Storage::Sparse);
  CHECK(apply_monomial(OrbitalSet::empty(n), OS({1}, n), OS({2}, n), dense).storage() ==
        FockVector::Storage::Dense);
}

TEST_CASE("OrbitalSet validates its invariants") {
  CHECK_THROWS_AS(OrbitalSet(0b100, 2), std::invalid_argument);
  CHECK_THROWS_AS(OrbitalSet(0, 17), std::invalid_argument);
  CHECK_THROWS_AS(OrbitalSet::from_orbitals({3}, 2), std::invalid_argument);
  CHECK(OrbitalSet::from_orbitals({1, 3}, 3).bits() == 0b101u);
  CHECK(OrbitalSet(0b101, 3).orbitals() == std::vector<int>{1, 3});
}
