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


#ifndef BPLAB_ENTANGLEMENT_HPP
#define BPLAB_ENTANGLEMENT_HPP

#include "bplab/circuit.hpp"
#include "bplab/qcore.hpp"

#include <vector>

namespace bplab {

/// Bipartition of n qubits; alpha is contiguous.
struct Partition {
  std::vector<int> alpha;
  std::vector<int> beta;
};

Partition make_partition(int n, std::vector<int> alpha);

/// Contiguous block of floor((n-1)/2) qubits (at least one) with maximal
/// overlap with the cost register. Ties go to the block starting closest to
/// the cost register, then to the lower start.
Partition default_partition(const RegisterSpec& reg);

/// Eigenvalues below this are dropped from x log2 x.
inline constexpr double kEntropyClip = 1e-12;

/// Von Neumann entropy in bits from a spectrum (clipped to [0, 1]).
double entropy_from_spectrum(const Eigen::VectorXd& eigenvalues);
/// -Tr[rho log2 rho].
double von_neumann_entropy(const DensityMatrix& rho);

/// Entanglement entropy (bits) between `keep` and its complement, computed
/// from whichever reduced matrix is smaller.
double subsystem_entropy(const StateVector& state, const std::vector<int>& keep);

/// S = -Tr[rho_alpha log2 rho_alpha].
double bipartite_entropy(const StateVector& state, const Partition& partition);

/// S_N = sum over non-cost qubits q of I2(R_C : q).
double mutual_information_sum(const StateVector& state, const RegisterSpec& reg);

/// 2n-qubit Choi state: qubits 0..n-1 hold the input copy, n..2n-1 the
/// output. Amplitude at (input j, output i) is U[i][j] / sqrt(2^n).
StateVector choi_state(const CircuitLayout& layout, const ParamVector& params);

/// S_C: entropy of the cost register's input and output qubits in the Choi state.
double collective_entropy(const CircuitLayout& layout, const ParamVector& params);

/// Mean of |sin theta| over the given angle indices.
double mixing_metric(const ParamVector& params, const std::vector<Eigen::Index>& indices);

}  // namespace bplab

#endif  // BPLAB_ENTANGLEMENT_HPP
