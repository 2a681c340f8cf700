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

#ifndef BPLAB_QCORE_HPP
#define BPLAB_QCORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Dense statevector primitives.
//
// Bit ordering: qubit 0 is the most significant bit of the amplitude index,
// so for n qubits, qubit q lives at bit position (n - 1 - q). Every module
// in the library uses this convention.

namespace bplab {

/// Raised for invalid sizes, register layouts and experiment settings.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed arguments (non-Hermitian input, bad index sets, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for requests the 1D brick-wall simulator does not support.
class UnsupportedTopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for non-finite values and solver failures.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kSpectralTol = 1e-8;
inline constexpr int kMaxQubits = 14;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using StateVector = ComplexVector<double>;
using DensityMatrix = ComplexMatrix<double>;
using HermitianMatrix = ComplexMatrix<double>;

/// Number of qubits encoded by a power-of-two amplitude count.
int qubit_count(Eigen::Index dimension);
inline int qubit_count(const StateVector& state) {
  return qubit_count(state.size());
}

StateVector zero_state(int n);
StateVector basis_state(int n, Eigen::Index index);

/// Applies a 4x4 gate to the adjacent pair (first, first + 1) in place.
///
/// The two-qubit basis is |00>,|01>,|10>,|11> with `first` as the more
/// significant bit. Works for real or complex gates and for any dense
/// amplitude expression (vectors, column blocks). No validation.
template <typename Derived, typename GateDerived>
void apply_two_qubit_inplace(Eigen::MatrixBase<Derived>& amps,
                             const Eigen::MatrixBase<GateDerived>& gate,
                             int n, int first) {
  using Amp = typename Derived::Scalar;
  const Eigen::Index lo = Eigen::Index{1} << (n - 2 - first);
  const Eigen::Index hi = lo << 1;
  const Eigen::Index stride = hi << 1;
  const Eigen::Index dim = amps.size();
  const auto& g = gate.derived();
  for (Eigen::Index outer = 0; outer < dim; outer += stride) {
    for (Eigen::Index i = outer; i < outer + lo; ++i) {
      const Amp a0 = amps(i);
      const Amp a1 = amps(i + lo);
      const Amp a2 = amps(i + hi);
      const Amp a3 = amps(i + hi + lo);
      amps(i) = g(0, 0) * a0 + g(0, 1) * a1 + g(0, 2) * a2 + g(0, 3) * a3;
      amps(i + lo) = g(1, 0) * a0 + g(1, 1) * a1 + g(1, 2) * a2 + g(1, 3) * a3;
      amps(i + hi) = g(2, 0) * a0 + g(2, 1) * a1 + g(2, 2) * a2 + g(2, 3) * a3;
      amps(i + hi + lo) =
          g(3, 0) * a0 + g(3, 1) * a1 + g(3, 2) * a2 + g(3, 3) * a3;
    }
  }
}

/// Checked, value-returning gate application. `pair` must be (i, i + 1).
StateVector apply_two_qubit(const StateVector& state,
                            const Eigen::Matrix4cd& gate,
                            std::pair<int, int> pair);

/// Reshapes |psi> into the 2^|keep| x 2^(n-|keep|) coefficient matrix whose
/// rows are indexed by the kept qubits (in the order given) and whose columns
/// are indexed by the remaining qubits in ascending order.
ComplexMatrix<double> bipartite_coefficients(const StateVector& state,
                                             const std::vector<int>& keep);

/// Tr_complement |psi><psi| for a sorted, non-empty, strict subset `keep`.
DensityMatrix partial_trace(const StateVector& state,
                            const std::vector<int>& keep);

struct EigenDecomposition {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix<double> vectors;
};

EigenDecomposition hermitian_eig(const HermitianMatrix& m);

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  double tol = kStructuralTol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m,
                double tol = kStructuralTol) {
  if (m.rows() != m.cols()) return false;
  const auto identity =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic,
                    Eigen::Dynamic>::Identity(m.rows(), m.cols());
  return ((m.adjoint() * m) - identity).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace bplab

#endif  // BPLAB_QCORE_HPP
