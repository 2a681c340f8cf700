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


#ifndef BPLAB_TESTS_ORACLES_HPP
#define BPLAB_TESTS_ORACLES_HPP

// Dense reference implementations used as test oracles. They build full
// 2^n x 2^n operators from Kronecker products and never call the
// library's strided kernels.

#include "bplab/circuit.hpp"
#include "bplab/groundstates.hpp"
#include "bplab/observables.hpp"
#include "bplab/qcore.hpp"

#include <Eigen/QR>

#include <cmath>
#include <complex>
#include <random>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Mat identity(int qubits) {
  return Mat::Identity(Eigen::Index{1} << qubits, Eigen::Index{1} << qubits);
}

inline Mat pauli(char axis) {
  Mat m = Mat::Zero(2, 2);
  switch (axis) {
    case 'X':
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 'Y':
      m(0, 1) = cd(0, -1);
      m(1, 0) = cd(0, 1);
      break;
    case 'Z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      m = Mat::Identity(2, 2);
  }
  return m;
}

/// Operator acting as `ops[q]` on qubit q (identity where 'I'); qubit 0 is
/// the leftmost Kronecker factor.
inline Mat product_operator(const std::string& ops) {
  Mat m = Mat::Identity(1, 1);
  for (char c : ops) m = kron(m, pauli(c));
  return m;
}

inline Mat dense_observable(const bplab::ObservableSum& obs, int n) {
  Mat m = Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto& term : obs.terms) {
    std::string ops(static_cast<std::size_t>(n), 'I');
    for (const auto& [q, axis] : term.factors) ops[q] = static_cast<char>(axis);
    m += term.coefficient * product_operator(ops);
  }
  return m;
}

/// I_{2^first} (x) gate (x) I_{2^(n-first-2)}.
inline Mat embed_two_qubit(const Mat& gate, int n, int first) {
  return kron(kron(identity(first), gate), identity(n - first - 2));
}

/// exp(m) by scaling and squaring of a 30-term Taylor series.
inline Mat expm(const Mat& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.5) ++squarings;
  const Mat a = m / std::pow(2.0, squarings);
  Mat term = Mat::Identity(m.rows(), m.cols());
  Mat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// K_ab written out entry by entry (1-based axes).
inline Mat generator(int a, int b) {
  Mat k = Mat::Zero(4, 4);
  k(a - 1, b - 1) = cd(0, -1);
  k(b - 1, a - 1) = cd(0, 1);
  return k;
}

inline Mat rotation(int a, int b, double theta) {
  return expm(cd(0, -theta) * generator(a, b));
}

/// R34(t6) R23(t5) R12(t4) R34(t3) R23(t2) R34(t1) from matrix exponentials.
inline Mat gate(const double* t) {
  return rotation(3, 4, t[5]) * rotation(2, 3, t[4]) * rotation(1, 2, t[3]) *
         rotation(3, 4, t[2]) * rotation(2, 3, t[1]) * rotation(3, 4, t[0]);
}

/// Full circuit unitary from an independently enumerated brick pattern.
inline Mat circuit_unitary(int n, int layers, const Eigen::VectorXd& params) {
  Mat u = identity(n);
  Eigen::Index offset = 0;
  for (int k = 1; k <= layers; ++k) {
    const int start = n == 2 ? 0 : (k - 1) % 2;
    for (int q = start; q + 1 <= n - 1; q += 2) {
      u = embed_two_qubit(gate(params.data() + offset), n, q) * u;
      offset += 6;
    }
  }
  return u;
}

inline Mat hamiltonian(const bplab::LongRangeHamiltonian& h) {
  const int n = h.n;
  Mat m = Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  auto ops = [n](int i, int j, char axis) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[i] = axis;
    if (j >= 0) s[j] = axis;
    return product_operator(s);
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      m += h.jz(i, j) * ops(i, j, 'Z') + h.jx(i, j) * ops(i, j, 'X');
    }
    m += h.w(i) * ops(i, -1, 'X') + h.v * ops(i, -1, 'Z');
  }
  return m;
}

inline Vec random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cd(g(rng), g(rng));
  return v.normalized();
}

inline Mat random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat a(dim, dim);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Mat> qr(a);
  return qr.householderQ() * Mat::Identity(dim, dim);
}

inline Mat random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat a(dim, dim);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = cd(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

inline Eigen::VectorXd random_angles(Eigen::Index size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  Eigen::VectorXd p(size);
  for (Eigen::Index i = 0; i < size; ++i) p(i) = u(rng);
  return p;
}

/// Entropy in bits from the eigenvalues of a density matrix.
inline double entropy_bits(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-12) s -= p * std::log2(p);
  }
  return s;
}

/// Reduced density matrix of the leading `keep` qubits by explicit index
/// sums over the trailing ones.
inline Mat reduce_leading(const Vec& state, int n, int keep) {
  const Eigen::Index dk = Eigen::Index{1} << keep;
  const Eigen::Index dr = Eigen::Index{1} << (n - keep);
  Mat rho = Mat::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      for (Eigen::Index r = 0; r < dr; ++r) {
        rho(a, b) += state(a * dr + r) * std::conj(state(b * dr + r));
      }
    }
  }
  return rho;
}

/// max_i |a_i - b_i| / max(max_i |b_i|, 1e-8): error of `a` relative to the
/// reference `b`.
inline double relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-8);
}

/// Random sum of one to three Pauli strings on n qubits.
inline bplab::ObservableSum random_observable(int n, std::mt19937_64& rng) {
  const bplab::PauliAxis axes[] = {bplab::PauliAxis::X, bplab::PauliAxis::Y,
                                   bplab::PauliAxis::Z};
  std::uniform_real_distribution<double> coeff(-1.5, 1.5);
  bplab::ObservableSum obs;
  const int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::pair<int, bplab::PauliAxis>> factors;
    for (int q = 0; q < n; ++q) {
      const auto pick = rng() % 4;
      if (pick < 3) factors.push_back({q, axes[pick]});
    }
    if (factors.empty()) factors.push_back({static_cast<int>(rng() % n), bplab::PauliAxis::Z});
    obs.terms.emplace_back(factors, coeff(rng));
  }
  return obs;
}

}  // namespace oracle

#endif  // BPLAB_TESTS_ORACLES_HPP
