// Copyright 2026 The fockbasis Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fockbasis/hamiltonian_bounds.hpp"
#include "fockbasis/rng.hpp"

using namespace fockbasis;

namespace {

Eigen::MatrixXcd random_hermitian(int size, Rng& rng) {
  Eigen::MatrixXcd g(size, size);
  for (Eigen::Index r = 0; r < size; ++r)
    for (Eigen::Index c = 0; c < size; ++c) g(r, c) = rng.complex_box();
  return 0.5 * (g + g.adjoint().eval());
}

}  // namespace

TEST_CASE("identity one-body integrals give the number operator") {
  const int n = 3;
  TwoBodyIntegrals ints = TwoBodyIntegrals::zero(n);
  ints.t = Eigen::MatrixXcd::Identity(n, n);
  const DenseOperator h = build_hamiltonian(ints);
  const DenseOperator number = poly_to_dense(OperatorPoly::number_operator(n));
  CHECK((h.mat - number.mat).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single V element acts as n_1 n_2 at n=2") {
  TwoBodyIntegrals ints = TwoBodyIntegrals::zero(2);
  ints.v(0, 1, 0, 1) = 1.0;
  ints.v(1, 0, 1, 0) = 1.0;
  const DenseOperator h = build_hamiltonian(ints);
  // Quartic part = n_1 n_2: eigenvalue 1 on phi_{1,2}, 0 elsewhere.
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(0b11, 0b11) = 1.0;
  CHECK((h.mat - expected).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("free-fermion Hamiltonians diagonalize through the one-body matrix") {
  Rng rng(kDefaultSeed + 10);
  for (int n = 2; n <= 4; ++n)
    for (int rep = 0; rep < 4; ++rep) {
      TwoBodyIntegrals ints = TwoBodyIntegrals::zero(n);
      ints.t = random_hermitian(n, rng);
      const DenseOperator h = build_hamiltonian(ints);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> one_body(ints.t,
                                                               Eigen::EigenvaluesOnly);
      // Ground energy = sum of negative one-body eigenvalues.
      double negative_sum = 0;
      for (Eigen::Index i = 0; i < n; ++i)
        negative_sum += std::min(0.0, one_body.eigenvalues()(i));
      REQUIRE(ground_energy(h) == Catch::Approx(negative_sum).margin(1e-9));

      // Full spectrum = all subset sums of one-body eigenvalues.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> full(h.mat,
                                                           Eigen::EigenvaluesOnly);
      std::vector<double> subset_sums;
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double sum = 0;
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) sum += one_body.eigenvalues()(i);
        subset_sums.push_back(sum);
      }
      std::sort(subset_sums.begin(), subset_sums.end());
      for (Eigen::Index i = 0; i < full.eigenvalues().size(); ++i)
        REQUIRE(full.eigenvalues()(i) ==
                Catch::Approx(subset_sums[std::size_t(i)]).margin(1e-9));
    }
}

TEST_CASE("Hamiltonians conserve particle number") {
  const int n = 3;
  TwoBodyIntegrals ints = builtin_instance("n3-ring");
  const DenseOperator h = build_hamiltonian(ints);
  const DenseOperator number = poly_to_dense(OperatorPoly::number_operator(n));
  CHECK((h.mat * number.mat - number.mat * h.mat).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(h.is_hermitian(1e-12));
}

TEST_CASE("integral symmetry violations are rejected") {
  TwoBodyIntegrals ints = TwoBodyIntegrals::zero(2);
  ints.t(0, 1) = Complex(0, 1);  // not Hermitian: t(1,0) stays 0
  CHECK_THROWS_AS(build_hamiltonian(ints), std::invalid_argument);

  TwoBodyIntegrals bad_v = TwoBodyIntegrals::zero(2);
  bad_v.v(0, 1, 0, 1) = 1.0;  // missing the (1,0,1,0) partner
  CHECK_THROWS_AS(build_hamiltonian(bad_v), std::invalid_argument);
}

TEST_CASE("full-basis truncation reproduces H; empty subset strips the quartic part") {
  const TwoBodyIntegrals ints = builtin_instance("n2-repulsive");
  const DenseOperator h = build_hamiltonian(ints);

  const DenseOperator full = build_truncated_hamiltonian(ints, enumerate_basis_B(2));
  CHECK((full.mat - h.mat).cwiseAbs().maxCoeff() <= 1e-12);

  const DenseOperator none = build_truncated_hamiltonian(ints, {});
  TwoBodyIntegrals one_body_only = TwoBodyIntegrals::zero(2);
  one_body_only.t = ints.t;
  CHECK((none.mat - build_hamiltonian(one_body_only).mat).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("larger subsets project better (HS distance to H decreases)") {
  const TwoBodyIntegrals ints = builtin_instance("n2-repulsive");
  const DenseOperator h = build_hamiltonian(ints);
  const double d1 =
      hs_norm_dense(build_truncated_hamiltonian(ints, enumerate_basis_Bk(2, 1)) - h);
  const double d2 =
      hs_norm_dense(build_truncated_hamiltonian(ints, enumerate_basis_Bk(2, 2)) - h);
  const double dfull =
      hs_norm_dense(build_truncated_hamiltonian(ints, enumerate_basis_B(2)) - h);
  CHECK(d2 <= d1 + 1e-9);
  CHECK(dfull <= d2 + 1e-9);
}

TEST_CASE("non-repulsive potentials void the truncation") {
  TwoBodyIntegrals ints = TwoBodyIntegrals::zero(2);
  ints.v(0, 1, 0, 1) = -1.0;
  ints.v(1, 0, 1, 0) = -1.0;
  CHECK_THROWS_AS(build_truncated_hamiltonian(ints, enumerate_basis_Bk(2, 1)),
                  std::invalid_argument);
}

TEST_CASE("bound reports carry a sound certificate") {
  const TwoBodyIntegrals ints = builtin_instance("n2-repulsive");

  const BoundReport with_v0 = compute_bound(builtin_instance("n2-free"),
                                            enumerate_basis_Bk(2, 1));
  // V = 0: the truncation leaves H untouched.
  CHECK(with_v0.e0_truncated == Catch::Approx(with_v0.e0_full).margin(1e-9));

  const BoundReport full_basis = compute_bound(ints, enumerate_basis_B(2));
  CHECK(full_basis.certificate);
  CHECK(full_basis.e0_truncated == Catch::Approx(full_basis.e0_full).margin(1e-9));
  CHECK(full_basis.subset_ids.size() == 16);

  const BoundReport truncated = compute_bound(ints, enumerate_basis_Bk(2, 1));
  if (truncated.certificate)
    CHECK(truncated.e0_truncated <= truncated.e0_full + 1e-9);
}

TEST_CASE("FCIDUMP parsing maps chemists' integrals onto V") {
  std::istringstream file(
      "&FCI NORB=2,NELEC=2,MS2=0,\n"
      "  ORBSYM=1,1,\n"
      "  ISYM=1,\n"
      "&END\n"
      "  0.5    1 1 2 2\n"
      "  -0.25  1 1 0 0\n"
      "  0.125  2 2 0 0\n"
      "  1.75   0 0 0 0\n");
  const TwoBodyIntegrals ints = parse_fcidump(file);
  CHECK(ints.n == 2);
  CHECK(ints.core_energy == 1.75);
  CHECK(ints.t(0, 0) == Complex(-0.25));
  CHECK(ints.t(1, 1) == Complex(0.125));
  // Chemist (11|22) = 0.5 lands at V_{12;12} and its symmetry images.
  CHECK(ints.v(0, 1, 0, 1) == Complex(0.5));
  CHECK(ints.v(1, 0, 1, 0) == Complex(0.5));
  CHECK_NOTHROW(ints.validate());
  CHECK(ints.repulsive());

  const DenseOperator h = build_hamiltonian(ints);
  // Expected: -0.25 n_1 + 0.125 n_2 + 0.5 n_1 n_2 (from (11|22) = <12|12>).
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(0b01, 0b01) = -0.25;
  expected(0b10, 0b10) = 0.125;
  expected(0b11, 0b11) = -0.25 + 0.125 + 0.5;
  CHECK((h.mat - expected).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("FCIDUMP errors carry line numbers") {
  std::istringstream missing_norb("&FCI NELEC=2 &END\n0.5 1 1 2 2\n");
  CHECK_THROWS_WITH(parse_fcidump(missing_norb),
                    Catch::Matchers::ContainsSubstring("NORB"));

  std::istringstream bad_line("&FCI NORB=2 &END\n0.5 1 1\n");
  CHECK_THROWS_WITH(parse_fcidump(bad_line),
                    Catch::Matchers::ContainsSubstring("line 2"));

  std::istringstream bad_index("&FCI NORB=2 &END\n0.5 1 1 3 3\n");
  CHECK_THROWS_WITH(parse_fcidump(bad_index),
                    Catch::Matchers::ContainsSubstring("line 2"));
}

TEST_CASE("built-in instances are well-formed") {
  for (const char* name : {"n2-free", "n2-repulsive", "n3-ring"}) {
    const TwoBodyIntegrals ints = builtin_instance(name);
    CHECK_NOTHROW(ints.validate());
    CHECK(ints.repulsive());
  }
  CHECK_THROWS_AS(builtin_instance("unknown"), std::invalid_argument);
}
