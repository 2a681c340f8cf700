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


#include "bplab/observables.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace bplab {

PauliString::PauliString(std::vector<std::pair<int, PauliAxis>> f, double c)
    : factors(std::move(f)), coefficient(c) {
  std::sort(factors.begin(), factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].first < 0) throw ArgumentError("negative Pauli qubit index");
    if (i > 0 && factors[i].first == factors[i - 1].first) {
      throw ArgumentError("Pauli string repeats qubit " +
                          std::to_string(factors[i].first + 1));
    }
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

PauliString parse_term(const std::string& raw) {
  std::string term = trim(raw);
  double coefficient = 1.0;
  if (const auto star = term.find('*'); star != std::string::npos) {
    coefficient = std::stod(term.substr(0, star));
    term = term.substr(star + 1);
  }
  std::vector<std::pair<int, PauliAxis>> factors;
  std::istringstream in(term);
  std::string token;
  while (in >> token) {
    const char axis = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
    if (axis == 'I') continue;
    if ((axis != 'X' && axis != 'Y' && axis != 'Z') || token.size() < 2) {
      throw ConfigurationError("bad Pauli factor '" + token + "'");
    }
    const int qubit = std::stoi(token.substr(1));
    if (qubit < 1) throw ConfigurationError("Pauli qubits are 1-based: '" + token + "'");
    factors.emplace_back(qubit - 1, static_cast<PauliAxis>(axis));
  }
  return PauliString(std::move(factors), coefficient);
}

void check_fits(const ObservableSum& obs, int n) {
  for (const auto& t : obs.terms) {
    if (t.max_qubit() >= n) {
      throw ArgumentError("observable acts on qubit " + std::to_string(t.max_qubit() + 1) +
                          " but the state has " + std::to_string(n) + " qubits");
    }
  }
}

}  // namespace

ObservableSum parse_observable(const std::string& text) {
  ObservableSum obs;
  try {
    double sign = 1.0;
    bool pending = false;  // an operator is waiting for its term
    std::string piece;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      const char c = i < text.size() ? text[i] : '\0';
      const bool exponent = i >= 2 && (text[i - 1] == 'e' || text[i - 1] == 'E') &&
                            std::isdigit(static_cast<unsigned char>(text[i - 2]));
      const bool op = (c == '+' || c == '-') && !exponent;
      if (!op && c != '\0') {
        piece += c;
        continue;
      }
      if (!trim(piece).empty()) {
        PauliString term = parse_term(piece);
        term.coefficient *= sign;
        obs.terms.push_back(std::move(term));
        sign = 1.0;
        pending = false;
      } else if (pending || (c == '\0' && !obs.terms.empty()) || (op && !obs.terms.empty())) {
        throw ConfigurationError("dangling operator");
      }
      piece.clear();
      if (op) {
        if (c == '-') sign = -sign;
        pending = true;
      }
    }
  } catch (const ConfigurationError& e) {
    throw ConfigurationError("bad observable '" + text + "': " + e.what());
  } catch (const std::exception& e) {
    throw ConfigurationError("bad observable '" + text + "': " + e.what());
  }
  if (obs.terms.empty()) throw ConfigurationError("empty observable '" + text + "'");
  return obs;
}

std::string to_string(const ObservableSum& obs) {
  std::ostringstream out;
  out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < obs.terms.size(); ++i) {
    const auto& t = obs.terms[i];
    double c = t.coefficient;
    if (i > 0) {
      out << (c < 0 ? " - " : " + ");
      c = std::abs(c);
    } else if (c == -1.0) {
      out << '-';
      c = 1.0;
    }
    if (c != 1.0) out << c << "*";
    if (t.factors.empty()) out << "I";
    for (std::size_t j = 0; j < t.factors.size(); ++j) {
      if (j > 0) out << ' ';
      out << static_cast<char>(t.factors[j].second) << (t.factors[j].first + 1);
    }
  }
  return out.str();
}

StateVector apply_pauli(const StateVector& state, const PauliString& pauli) {
  const int n = qubit_count(state);
  if (pauli.max_qubit() >= n) throw ArgumentError("Pauli string exceeds register");
  Eigen::Index flip = 0;
  Eigen::Index zmask = 0;
  Eigen::Index ymask = 0;
  for (const auto& [q, axis] : pauli.factors) {
    const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
    if (axis != PauliAxis::Z) flip |= bit;
    if (axis == PauliAxis::Z) zmask |= bit;
    if (axis == PauliAxis::Y) ymask |= bit;
  }
  // Y|b> = i(-1)^b |1-b>, so each Y contributes i and a sign on set bits.
  const int ycount = static_cast<int>(std::popcount(static_cast<std::uint64_t>(ymask)));
  static const std::complex<double> kIPow[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<double> base = pauli.coefficient * kIPow[ycount % 4];
  StateVector out(state.size());
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    const bool negative =
        std::popcount(static_cast<std::uint64_t>(i & (zmask | ymask))) & 1;
    out(i ^ flip) = negative ? -base * state(i) : base * state(i);
  }
  return out;
}

StateVector apply_observable(const StateVector& state, const ObservableSum& obs) {
  StateVector out = StateVector::Zero(state.size());
  for (const auto& term : obs.terms) out += apply_pauli(state, term);
  return out;
}

double expectation(const StateVector& state, const ObservableSum& obs) {
  check_fits(obs, qubit_count(state));
  return state.dot(apply_observable(state, obs)).real();
}

ObservableSum z_magnetization(int n) {
  ObservableSum obs;
  for (int q = 0; q < n; ++q) obs.terms.emplace_back(std::vector{std::pair{q, PauliAxis::Z}}, 1.0 / n);
  return obs;
}

ObservableSum x_magnetization(const RegisterSpec& reg) {
  reg.validate();
  ObservableSum obs;
  for (int q : reg.cost_qubits()) {
    obs.terms.emplace_back(std::vector{std::pair{q, PauliAxis::X}}, 1.0 / reg.n_cost);
  }
  return obs;
}

void CostFunction::validate(int n) const {
  if (observable.terms.empty()) throw ConfigurationError("cost observable is empty");
  check_fits(observable, n);
  if (kind == CostKind::CompressorL1) {
    if (dataset.empty()) throw ConfigurationError("compressor dataset is empty");
    for (const auto& s : dataset) {
      if (qubit_count(s.input) != n) {
        throw ConfigurationError("dataset state size does not match the circuit");
      }
    }
  }
}

CostFunction parse_cost(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ConfigurationError("cost literal must look like 'raw:Z1 Z2' or 'abs:Z1 Z2 Z3'");
  }
  const std::string kind = trim(text.substr(0, colon));
  ObservableSum obs = parse_observable(text.substr(colon + 1));
  if (kind == "raw") return CostFunction::raw(std::move(obs));
  if (kind == "abs") return CostFunction::absolute(std::move(obs));
  throw ConfigurationError("unknown cost kind '" + kind + "'");
}

std::string to_string(const CostFunction& cost) {
  switch (cost.kind) {
    case CostKind::RawExpectation:
      return "raw:" + to_string(cost.observable);
    case CostKind::AbsExpectation:
      return "abs:" + to_string(cost.observable);
    case CostKind::CompressorL1:
      return "compressor:" + to_string(cost.observable);
  }
  return "unknown";
}

double cost_value(const CostFunction& cost, const CircuitLayout& layout,
                  const ParamVector& params) {
  cost.validate(layout.n());
  switch (cost.kind) {
    case CostKind::RawExpectation:
      return expectation(apply_circuit(layout, params, zero_state(layout.n())),
                         cost.observable);
    case CostKind::AbsExpectation:
      return std::abs(expectation(apply_circuit(layout, params, zero_state(layout.n())),
                                  cost.observable));
    case CostKind::CompressorL1: {
      double total = 0.0;
      for (const auto& sample : cost.dataset) {
        const double m = expectation(apply_circuit(layout, params, sample.input),
                                     cost.observable);
        total += std::abs(m - sample.label);
      }
      return total;
    }
  }
  return 0.0;
}

}  // namespace bplab
