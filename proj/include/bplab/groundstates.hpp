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


#ifndef BPLAB_GROUNDSTATES_HPP
#define BPLAB_GROUNDSTATES_HPP

#include "bplab/observables.hpp"
#include "bplab/qcore.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bplab {

/// H = sum_{i<j} (Jz_ij Z_i Z_j + Jx_ij X_i X_j) + sum_i (w_i X_i + v Z_i).
/// Only the strict upper triangles of jz and jx are read.
struct LongRangeHamiltonian {
  int n = 0;
  Eigen::MatrixXd jz;
  Eigen::MatrixXd jx;
  Eigen::VectorXd w;
  double v = 0.0;

  static LongRangeHamiltonian zero(int n);
  std::size_t coefficient_count() const;
};

inline constexpr int kMaxHamiltonianQubits = 12;
inline constexpr const char* kCoefficientDistribution = "uniform(-scale,+scale)";

/// Coefficients i.i.d. uniform on [-scale, scale].
LongRangeHamiltonian random_hamiltonian(int n, std::uint64_t seed, double scale = 1.0);

/// Dense 2^n x 2^n matrix of H in any scalar type (double or complex).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> build_matrix_as(
    const LongRangeHamiltonian& h) {
  const int n = h.n;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
  auto bit = [n](int q) { return Eigen::Index{1} << (n - 1 - q); };
  auto zsign = [&](Eigen::Index idx, int q) { return (idx & bit(q)) ? -1.0 : 1.0; };
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
      diag += h.v * zsign(idx, i);
      for (int j = i + 1; j < n; ++j) diag += h.jz(i, j) * zsign(idx, i) * zsign(idx, j);
    }
    m(idx, idx) += Scalar(diag);
    for (int i = 0; i < n; ++i) {
      m(idx ^ bit(i), idx) += Scalar(h.w(i));
      for (int j = i + 1; j < n; ++j) m(idx ^ bit(i) ^ bit(j), idx) += Scalar(h.jx(i, j));
    }
  }
  return m;
}

HermitianMatrix build_matrix(const LongRangeHamiltonian& h);

struct GroundState {
  double energy = 0.0;
  StateVector state;
};

/// Lowest eigenpair; the largest-magnitude amplitude is made real positive.
GroundState ground_state(const LongRangeHamiltonian& h);

struct CompressorDataset {
  int n = 0;
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::string distribution = kCoefficientDistribution;
  std::vector<LabeledState> samples;  // label = <(1/n) sum Z_i>
};

/// Hamiltonian i is random_hamiltonian(n, derive_seed(seed, "hamiltonian", i), scale).
CompressorDataset make_compressor_dataset(int n, int count, std::uint64_t seed,
                                          double scale = 1.0, int threads = 1);

}  // namespace bplab

#endif  // BPLAB_GROUNDSTATES_HPP
