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


#include "bplab/groundstates.hpp"

#include "bplab/parallel.hpp"
#include "bplab/rng.hpp"

#include <Eigen/Eigenvalues>

namespace bplab {

LongRangeHamiltonian LongRangeHamiltonian::zero(int n) {
  LongRangeHamiltonian h;
  h.n = n;
  h.jz = Eigen::MatrixXd::Zero(n, n);
  h.jx = Eigen::MatrixXd::Zero(n, n);
  h.w = Eigen::VectorXd::Zero(n);
  return h;
}

std::size_t LongRangeHamiltonian::coefficient_count() const {
  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  return 2 * pairs + static_cast<std::size_t>(n) + 1;
}

LongRangeHamiltonian random_hamiltonian(int n, std::uint64_t seed, double scale) {
  if (n < 1 || n > kMaxHamiltonianQubits) {
    throw ConfigurationError("Hamiltonian size n=" + std::to_string(n) + " outside [1, " +
                             std::to_string(kMaxHamiltonianQubits) + "]");
  }
  if (!(scale >= 0.0)) throw ConfigurationError("coefficient scale must be >= 0");
  CounterRng rng(seed, "long-range-hamiltonian");
  auto draw = [&] { return rng.uniform(-scale, scale); };
  LongRangeHamiltonian h = LongRangeHamiltonian::zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      h.jz(i, j) = draw();
      h.jx(i, j) = draw();
    }
  }
  for (int i = 0; i < n; ++i) h.w(i) = draw();
  h.v = draw();
  return h;
}

HermitianMatrix build_matrix(const LongRangeHamiltonian& h) {
  return build_matrix_as<std::complex<double>>(h);
}

GroundState ground_state(const LongRangeHamiltonian& h) {
  if (h.n < 1 || h.n > kMaxHamiltonianQubits) {
    throw ConfigurationError("ground state needs 1 <= n <= 12");
  }
  // H is real symmetric, so the real solver gives the same spectrum faster.
  const Eigen::MatrixXd m = build_matrix_as<double>(h);
  if (!m.allFinite()) throw NumericError("Hamiltonian has non-finite coefficients");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericError("ground-state eigensolver did not converge (n=" +
                       std::to_string(h.n) + ", dim=" + std::to_string(m.rows()) + ")");
  }
  GroundState gs;
  gs.energy = solver.eigenvalues()(0);
  Eigen::VectorXd vec = solver.eigenvectors().col(0);
  Eigen::Index largest = 0;
  vec.cwiseAbs().maxCoeff(&largest);
  if (vec(largest) < 0.0) vec = -vec;
  gs.state = vec.cast<std::complex<double>>();
  gs.state.normalize();
  return gs;
}

CompressorDataset make_compressor_dataset(int n, int count, std::uint64_t seed, double scale,
                                          int threads) {
  if (count < 1) throw ConfigurationError("dataset needs at least one sample");
  CompressorDataset data;
  data.n = n;
  data.seed = seed;
  data.scale = scale;
  data.samples.resize(count);
  const ObservableSum magnetization = z_magnetization(n);
  parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t i) {
    const auto h = random_hamiltonian(n, derive_seed(seed, "hamiltonian", i), scale);
    GroundState gs = ground_state(h);
    const double label = expectation(gs.state, magnetization);
    data.samples[i] = {std::move(gs.state), label};
  });
  return data;
}

}  // namespace bplab
