// Copyright 2026 The bplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "bplab/qcore.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using bplab::StateVector;

TEST_CASE("zero_state has a single unit amplitude at index 0") {
  const StateVector one = bplab::zero_state(1);
  CHECK(one.size() == 2);
  CHECK(one(0) == std::complex<double>(1.0));
  CHECK(one(1) == std::complex<double>(0.0));

  const StateVector three = bplab::zero_state(3);
  CHECK(three.size() == 8);
  CHECK(three(0) == std::complex<double>(1.0));
  CHECK(three.tail(7).norm() == 0.0);

  CHECK(bplab::zero_state(2).norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("zero_state rejects qubit counts outside [1, 14]") {
  CHECK_THROWS_AS(bplab::zero_state(0), bplab::ConfigurationError);
  CHECK_THROWS_AS(bplab::zero_state(15), bplab::ConfigurationError);
  CHECK_NOTHROW(bplab::zero_state(14));
}

TEST_CASE("apply_two_qubit with the identity leaves the state unchanged") {
  std::mt19937_64 rng(1);
  const StateVector psi = oracle::random_state(4, rng);
  for (int q = 0; q < 3; ++q) {
    const StateVector out = bplab::apply_two_qubit(psi, Eigen::Matrix4cd::Identity(), {q, q + 1});
    CHECK((out - psi).norm() == 0.0);
  }
}

TEST_CASE("SWAP maps |01> to |10>") {
  Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  const StateVector out = bplab::apply_two_qubit(bplab::basis_state(2, 1), swap, {0, 1});
  CHECK((out - bplab::basis_state(2, 2)).norm() < 1e-15);
}

TEST_CASE("apply_two_qubit matches the Kronecker-embedded operator and preserves norm") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const int first = static_cast<int>(rng() % (n - 1));
    const oracle::Mat gate = oracle::random_unitary(4, rng);
    const StateVector psi = oracle::random_state(n, rng);
    const StateVector out = bplab::apply_two_qubit(psi, gate, {first, first + 1});
    const StateVector expected = oracle::embed_two_qubit(gate, n, first) * psi;
    CHECK((out - expected).norm() < 1e-12);
    CHECK(std::abs(out.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("apply_two_qubit rejects non-adjacent pairs and non-unitary gates") {
  const StateVector psi = bplab::zero_state(3);
  CHECK_THROWS_AS(bplab::apply_two_qubit(psi, Eigen::Matrix4cd::Identity(), {0, 2}),
                  bplab::UnsupportedTopologyError);
  CHECK_THROWS_AS(bplab::apply_two_qubit(psi, Eigen::Matrix4cd::Identity(), {2, 3}),
                  bplab::ArgumentError);
  CHECK_THROWS_AS(bplab::apply_two_qubit(psi, 2.0 * Eigen::Matrix4cd::Identity(), {0, 1}),
                  bplab::ArgumentError);
}

TEST_CASE("partial_trace of |0>|+> keeping qubit 0 is |0><0|") {
  StateVector psi(4);
  psi << 1.0, 1.0, 0.0, 0.0;
  psi /= std::sqrt(2.0);
  const bplab::DensityMatrix rho = bplab::partial_trace(psi, {0});
  Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
  expected(0, 0) = 1.0;
  CHECK((rho - expected).norm() < 1e-15);
}

TEST_CASE("partial_trace of a Bell pair is maximally mixed") {
  StateVector bell = StateVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const bplab::DensityMatrix rho = bplab::partial_trace(bell, {0});
  CHECK((rho - 0.5 * Eigen::Matrix2cd::Identity()).norm() < 1e-15);
}

TEST_CASE("partial_trace of GHZ-3 keeping {0,1} is diag(1/2, 0, 0, 1/2)") {
  StateVector ghz = StateVector::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  const bplab::DensityMatrix rho = bplab::partial_trace(ghz, {0, 1});
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected(0, 0) = expected(3, 3) = 0.5;
  CHECK((rho - expected).norm() < 1e-15);
}

TEST_CASE("partial_trace rejects empty and full keep sets") {
  const StateVector psi = bplab::zero_state(3);
  CHECK_THROWS_AS(bplab::partial_trace(psi, {}), bplab::ArgumentError);
  CHECK_THROWS_AS(bplab::partial_trace(psi, {0, 1, 2}), bplab::ArgumentError);
  CHECK_THROWS_AS(bplab::partial_trace(psi, {1, 0}), bplab::ArgumentError);
}

TEST_CASE("partial_trace agrees with explicit index sums and is a density matrix") {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 6; ++n) {
    const StateVector psi = oracle::random_state(n, rng);
    for (int k = 1; k < n; ++k) {
      std::vector<int> keep(k);
      for (int q = 0; q < k; ++q) keep[q] = q;
      const bplab::DensityMatrix rho = bplab::partial_trace(psi, keep);
      CHECK((rho - oracle::reduce_leading(psi, n, k)).norm() < 1e-12);
      CHECK(bplab::is_hermitian(rho));
      CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
      CHECK(bplab::hermitian_eig(rho).values.minCoeff() > -1e-10);
    }
  }
}

TEST_CASE("reduced matrices of complementary sets share their nonzero spectrum") {
  std::mt19937_64 rng(4);
  const int n = 5;
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector psi = oracle::random_state(n, rng);
    const std::vector<int> a = {1, 3};
    const std::vector<int> b = {0, 2, 4};
    const Eigen::VectorXd ea = bplab::hermitian_eig(bplab::partial_trace(psi, a)).values;
    const Eigen::VectorXd eb = bplab::hermitian_eig(bplab::partial_trace(psi, b)).values;
    // eb has 8 eigenvalues, 4 of them zero; the top 4 match ea.
    CHECK((eb.tail(4) - ea).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(eb.head(4).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("hermitian_eig returns ascending eigenvalues") {
  bplab::HermitianMatrix d = bplab::HermitianMatrix::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const auto e = bplab::hermitian_eig(d);
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(2.0));
  CHECK(e.values(2) == doctest::Approx(3.0));

  const auto x = bplab::hermitian_eig(oracle::pauli('X'));
  CHECK(x.values(0) == doctest::Approx(-1.0));
  CHECK(x.values(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(5);
  for (int dim : {16, 64, 512}) {
    const oracle::Mat m = oracle::random_hermitian(dim, rng);
    const auto e = bplab::hermitian_eig(m);
    const oracle::Mat v = e.vectors;
    const oracle::Mat recon = v * e.values.cast<std::complex<double>>().asDiagonal() * v.adjoint();
    CHECK((recon - m).norm() < 1e-8 * dim);
    CHECK((v.adjoint() * v - oracle::Mat::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-8);
    const oracle::Mat residual = m * v - v * e.values.cast<std::complex<double>>().asDiagonal();
    CHECK(residual.colwise().norm().maxCoeff() < 1e-8 * dim);
    for (Eigen::Index i = 1; i < dim; ++i) CHECK(e.values(i) >= e.values(i - 1));
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  bplab::HermitianMatrix m = bplab::HermitianMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(bplab::hermitian_eig(m), bplab::ArgumentError);
}
