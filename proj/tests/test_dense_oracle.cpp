// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "fockbasis/dense_oracle.hpp"
#include "fockbasis/fock_vector.hpp"
#include "fockbasis/rng.hpp"

using namespace fockbasis;

namespace {

OrbitalSet OS(std::initializer_list<int> orbitals, int n) {
  return OrbitalSet::from_orbitals(orbitals, n);
}

OperatorPoly single(std::uint32_t A, std::uint32_t B, int n, Complex c = Complex(1)) {
  OperatorPoly p(n);
  p.add_term(A, B, c);
  return p;
}

}  // namespace

TEST_CASE("creation_matrix at n=1 is the textbook ladder matrix") {
  const DenseOperator up = creation_matrix(1, 1);
  CHECK(up.mat(0, 0) == Complex(0));
  CHECK(up.mat(0, 1) == Complex(0));
  CHECK(up.mat(1, 0) == Complex(1));
  CHECK(up.mat(1, 1) == Complex(0));
  CHECK_THROWS_AS(creation_matrix(2, 1), std::invalid_argument);
}

TEST_CASE("creation operators are nilpotent and create from the vacuum") {
  for (int n = 1; n <= 4; ++n)
    for (int i = 1; i <= n; ++i) {
      const DenseOperator up = creation_matrix(i, n);
      CHECK((up.mat * up.mat).cwiseAbs().maxCoeff() == 0.0);
      // Column of the vacuum maps to phi_{i} with sign +1.
      CHECK(up.mat(1u << (i - 1), 0) == Complex(1));
    }
}

TEST_CASE("poly_to_dense basics") {
  for (int n = 1; n <= 3; ++n) {
    const DenseOperator id = poly_to_dense(OperatorPoly::identity(n));
    CHECK((id.mat - Eigen::MatrixXcd::Identity(id.dim(), id.dim()))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    const DenseOperator number = poly_to_dense(OperatorPoly::number_operator(n));
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      CHECK(number.mat(mask, mask) == Complex(std::popcount(mask)));
    }
    CHECK((number.mat - number.mat.cwiseProduct(Eigen::MatrixXcd::Identity(
                            number.dim(), number.dim())))
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("poly_to_dense columns match the monomial action") {
  const int n = 2;
  const DenseOperator m = poly_to_dense(single(OS({1}, n).bits(), OS({2}, n).bits(), n));
  const std::uint32_t dim = 1u << n;
  for (std::uint32_t i = 0; i < dim; ++i) {
    const FockVector image = apply_monomial(OrbitalSet::empty(n), OS({1}, n),
                                            OS({2}, n), FockVector::basis_state(OrbitalSet(i, n)));
    for (std::uint32_t r = 0; r < dim; ++r)
      CHECK(m.mat(r, i) == image.amplitude(r));
  }
}

TEST_CASE("hs_inner_dense basics") {
  for (int n = 1; n <= 3; ++n) {
    const DenseOperator id = DenseOperator::identity(n);
    CHECK(hs_inner_dense(id, id) == Complex(double(1 << n)));
    const DenseOperator number = poly_to_dense(OperatorPoly::number_operator(n));
    // tr(N) = n 2^(n-1).
    CHECK(hs_inner_dense(id, number) == Complex(double(n) * double(1 << (n - 1))));
  }
  Rng rng(7);
  const int n = 2;
  Eigen::MatrixXcd x(4, 4), y(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      x(r, c) = rng.complex_box();
      y(r, c) = rng.complex_box();
    }
  const DenseOperator X(n, x), Y(n, y);
  CHECK(std::abs(hs_inner_dense(X, Y) - std::conj(hs_inner_dense(Y, X))) < 1e-14);
  CHECK(hs_inner_dense(X, X).real() >= 0.0);
  CHECK(std::abs(hs_inner_dense(X, X).imag()) < 1e-14);
  CHECK(hs_inner_dense(DenseOperator::zero(n), DenseOperator::zero(n)) == Complex(0));
}

TEST_CASE("dense_to_poly recovers canonical monomials exactly") {
  for (int n = 1; n <= 3; ++n) {
    const std::uint32_t count = 1u << n;
    for (std::uint32_t a = 0; a < count; ++a)
      for (std::uint32_t b = 0; b < count; ++b) {
        const OperatorPoly p = dense_to_poly(poly_to_dense(single(a, b, n)));
        REQUIRE(p.term_count() == 1);
        REQUIRE(p.coefficient(a, b) == Complex(1));
      }
  }
}

TEST_CASE("dense_to_poly on the identity and the vacuum projector") {
  const int n = 2;
  const OperatorPoly id = dense_to_poly(DenseOperator::identity(n));
  CHECK(id.term_count() == 1);
  CHECK(id.coefficient(0, 0) == Complex(1));

  // |Omega><Omega| = prod_i (1 - n_i) = sum_S (-1)^|S| c*_S c_S.
  DenseOperator vacuum = DenseOperator::zero(n);
  vacuum.mat(0, 0) = 1.0;
  const OperatorPoly p = dense_to_poly(vacuum);
  CHECK(p.term_count() == 4);
  CHECK(p.coefficient(0b00, 0b00) == Complex(1));
  CHECK(p.coefficient(0b01, 0b01) == Complex(-1));
  CHECK(p.coefficient(0b10, 0b10) == Complex(-1));
  CHECK(p.coefficient(0b11, 0b11) == Complex(1));
}

TEST_CASE("dense_to_poly round-trips random sparse polynomials") {
  const int n = 3;
  Rng rng(kDefaultSeed);
  for (int rep = 0; rep < 100; ++rep) {
    OperatorPoly p(n);
    const int terms = 1 + int(rng.uniform() * 6);
    for (int t = 0; t < terms; ++t) {
      const std::uint32_t a = std::uint32_t(rng.word()) & 0b111;
      const std::uint32_t b = std::uint32_t(rng.word()) & 0b111;
      p.add_term(a, b, rng.complex_box());
    }
    const OperatorPoly back = dense_to_poly(poly_to_dense(p));
    REQUIRE(max_abs_diff(p, back) <= 1e-10);
  }
}

TEST_CASE("min_eigenvalue on reference operators") {
  for (int n = 1; n <= 3; ++n) {
    const DenseOperator number = poly_to_dense(OperatorPoly::number_operator(n));
    CHECK(min_eigenvalue(number) == Catch::Approx(0.0).margin(1e-9));
    CHECK(min_eigenvalue(Complex(-1) * number) == Catch::Approx(-double(n)).margin(1e-9));
    CHECK(min_eigenvalue(DenseOperator::identity(n)) == Catch::Approx(1.0).margin(1e-9));
  }
  DenseOperator skew = DenseOperator::zero(1);
  skew.mat(0, 1) = 1.0;
  CHECK_THROWS_AS(min_eigenvalue(skew), std::invalid_argument);
}

TEST_CASE("DensityMatrix validation") {
  const int n = 2;
  DenseOperator good = DenseOperator::zero(n);
  good.mat(0, 0) = 0.5;
  good.mat(3, 3) = 0.5;
  CHECK_NOTHROW(DensityMatrix::validated(good));

  DenseOperator bad_trace = DenseOperator::identity(n);
  CHECK_THROWS_AS(DensityMatrix::validated(bad_trace), std::invalid_argument);

  DenseOperator negative = DenseOperator::zero(n);
  negative.mat(0, 0) = 1.5;
  negative.mat(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix::validated(negative), std::invalid_argument);
}

TEST_CASE("dense caps are enforced") {
  CHECK_THROWS_AS(DenseOperator::zero(9), std::invalid_argument);
  OperatorPoly p(9);
  p.add_term(0, 0, Complex(1));
  CHECK_THROWS_AS(poly_to_dense(p), std::invalid_argument);
}
