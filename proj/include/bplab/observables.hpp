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


#ifndef BPLAB_OBSERVABLES_HPP
#define BPLAB_OBSERVABLES_HPP

#include "bplab/circuit.hpp"
#include "bplab/qcore.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bplab {

enum class PauliAxis : char { X = 'X', Y = 'Y', Z = 'Z' };

/// coefficient * prod_q sigma_q^{axis}; identity factors are omitted and the
/// factors are kept sorted by qubit.
struct PauliString {
  std::vector<std::pair<int, PauliAxis>> factors;
  double coefficient = 1.0;

  PauliString() = default;
  PauliString(std::vector<std::pair<int, PauliAxis>> f, double c = 1.0);

  int max_qubit() const { return factors.empty() ? -1 : factors.back().first; }
};

/// Real-coefficient sum of Pauli strings (Hermitian by construction).
struct ObservableSum {
  std::vector<PauliString> terms;

  ObservableSum() = default;
  explicit ObservableSum(std::vector<PauliString> t) : terms(std::move(t)) {}
  ObservableSum(PauliString single) : terms{std::move(single)} {}  // NOLINT
};

/// Parses literals such as "Z1 Z2 X3" or "0.5*Z1 Z2 + X3". Qubits are 1-based
/// in the text and stored 0-based.
ObservableSum parse_observable(const std::string& text);
std::string to_string(const ObservableSum& obs);

StateVector apply_pauli(const StateVector& state, const PauliString& pauli);
/// M|psi>.
StateVector apply_observable(const StateVector& state, const ObservableSum& obs);

/// <psi|M|psi>.
double expectation(const StateVector& state, const ObservableSum& obs);

/// (1/n) sum_i sigma_i^z over all qubits.
ObservableSum z_magnetization(int n);
/// (1/n_C) sum_i sigma_i^x over the cost register.
ObservableSum x_magnetization(const RegisterSpec& reg);

struct LabeledState {
  StateVector input;
  double label = 0.0;
};

enum class CostKind { RawExpectation, AbsExpectation, CompressorL1 };

/// L = f[<M_C>].
///
/// Raw and Abs costs evaluate <M_C> on U|0>. CompressorL1 sums
/// |<M_C>_i - label_i| over the dataset with each <M_C>_i evaluated on
/// U|input_i>.
struct CostFunction {
  CostKind kind = CostKind::RawExpectation;
  ObservableSum observable;
  std::vector<LabeledState> dataset;

  static CostFunction raw(ObservableSum obs) {
    return {CostKind::RawExpectation, std::move(obs), {}};
  }
  static CostFunction absolute(ObservableSum obs) {
    return {CostKind::AbsExpectation, std::move(obs), {}};
  }
  static CostFunction compressor(std::vector<LabeledState> data, ObservableSum obs) {
    return {CostKind::CompressorL1, std::move(obs), std::move(data)};
  }

  void validate(int n) const;
};

/// Parses "raw:<obs>", "abs:<obs>"; compressor costs are assembled from a
/// dataset and are not expressible as a literal.
CostFunction parse_cost(const std::string& text);
std::string to_string(const CostFunction& cost);

double cost_value(const CostFunction& cost, const CircuitLayout& layout,
                  const ParamVector& params);

}  // namespace bplab

#endif  // BPLAB_OBSERVABLES_HPP
