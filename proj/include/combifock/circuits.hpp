// Copyright 2025 The combifock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "combifock/pauli.hpp"

namespace combifock {

struct Gate {
  enum class Kind { h, s, sdg, rz, cx };
  Kind kind;
  int target = 0;
  int control = -1;   // cx only
  double angle = 0.0; // rz only
};

struct Circuit {
  int qubits = 0;
  std::vector<Gate> gates;

  int cnot_count() const {
    return static_cast<int>(
        std::count_if(gates.begin(), gates.end(),
                      [](const Gate& g) { return g.kind == Gate::Kind::cx; }));
  }

  /// Depth under a one-gate-per-qubit-per-layer schedule: each gate lands on
  /// the first layer after every qubit it touches is free.
  int depth() const {
    std::vector<int> busy(qubits, 0);
    int d = 0;
    for (const Gate& g : gates) {
      int layer = busy[g.target];
      if (g.control >= 0) layer = std::max(layer, busy[g.control]);
      ++layer;
      busy[g.target] = layer;
      if (g.control >= 0) busy[g.control] = layer;
      d = std::max(d, layer);
    }
    return d;
  }

  std::string to_qasm() const {
    std::ostringstream os;
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << qubits << "];\n";
    for (const Gate& g : gates) {
      switch (g.kind) {
        case Gate::Kind::h:
          os << "h q[" << g.target << "];\n";
          break;
        case Gate::Kind::s:
          os << "s q[" << g.target << "];\n";
          break;
        case Gate::Kind::sdg:
          os << "sdg q[" << g.target << "];\n";
          break;
        case Gate::Kind::rz: {
          char buf[40];
          std::snprintf(buf, sizeof(buf), "%.17g", g.angle);
          os << "rz(" << buf << ") q[" << g.target << "];\n";
          break;
        }
        case Gate::Kind::cx:
          os << "cx q[" << g.control << "],q[" << g.target << "];\n";
          break;
      }
    }
    return os.str();
  }
};

namespace detail {

/// Append gates realizing exp(-i angle P) exactly: basis changes onto Z, a
/// CNOT parity ladder, one rz(2*angle), then the unwind.
inline void append_pauli_evolution(Circuit& circ, const PauliString& s,
                                   double angle) {
  const int n = static_cast<int>(s.size());
  std::vector<int> support;
  for (int k = 0; k < n; ++k)
    if (s[k] != 'I') support.push_back(k);
  if (support.empty()) return;  // identity evolution is a global phase

  for (int q : support) {
    if (s[q] == 'X') {
      circ.gates.push_back({Gate::Kind::h, q});
    } else if (s[q] == 'Y') {
      circ.gates.push_back({Gate::Kind::sdg, q});
      circ.gates.push_back({Gate::Kind::h, q});
    }
  }
  for (std::size_t i = 0; i + 1 < support.size(); ++i)
    circ.gates.push_back(
        {Gate::Kind::cx, support[i + 1], support[i]});
  circ.gates.push_back({Gate::Kind::rz, support.back(), -1, 2.0 * angle});
  for (std::size_t i = support.size() - 1; i-- > 0;)
    circ.gates.push_back(
        {Gate::Kind::cx, support[i + 1], support[i]});
  for (int q : support) {
    if (s[q] == 'X') {
      circ.gates.push_back({Gate::Kind::h, q});
    } else if (s[q] == 'Y') {
      circ.gates.push_back({Gate::Kind::h, q});
      circ.gates.push_back({Gate::Kind::s, q});
    }
  }
}

}  // namespace detail

/**
 * Single-step product circuit for exp(-i H) with H = sum_j c_j P_j given as
 * a Pauli sum with real coefficients: emits exp(-i c_j P_j) per term in the
 * sum's lexicographic term order.
 */
inline Circuit pauli_evolution_circuit(const PauliSum& generator) {
  Circuit circ{.qubits = generator.qubits, .gates = {}};
  for (const auto& [s, c] : generator.terms) {
    if (std::abs(c.imag()) > 1e-10)
      throw std::invalid_argument("evolution generator must be Hermitian");
    detail::append_pauli_evolution(circ, s, c.real());
  }
  return circ;
}

/// Dense statevector simulation; string positions map to qubits the same way
/// as in PauliString (character 0 = most significant qubit).
inline Eigen::VectorXcd simulate(const Circuit& circ, Eigen::VectorXcd psi) {
  const std::uint64_t dim = std::uint64_t{1} << circ.qubits;
  if (static_cast<std::uint64_t>(psi.size()) != dim)
    throw std::invalid_argument("statevector size mismatch");
  const auto bit_of = [&](int qchar) {
    return std::uint64_t{1} << (circ.qubits - 1 - qchar);
  };
  const std::complex<double> inv_sqrt2{1.0 / std::sqrt(2.0), 0};
  for (const Gate& g : circ.gates) {
    const std::uint64_t tbit = bit_of(g.target);
    switch (g.kind) {
      case Gate::Kind::h:
        for (std::uint64_t i = 0; i < dim; ++i) {
          if (i & tbit) continue;
          const auto a = psi[i];
          const auto b = psi[i | tbit];
          psi[i] = inv_sqrt2 * (a + b);
          psi[i | tbit] = inv_sqrt2 * (a - b);
        }
        break;
      case Gate::Kind::s:
        for (std::uint64_t i = 0; i < dim; ++i)
          if (i & tbit) psi[i] *= std::complex<double>{0, 1};
        break;
      case Gate::Kind::sdg:
        for (std::uint64_t i = 0; i < dim; ++i)
          if (i & tbit) psi[i] *= std::complex<double>{0, -1};
        break;
      case Gate::Kind::rz: {
        const std::complex<double> lo{std::cos(g.angle / 2),
                                      -std::sin(g.angle / 2)};
        const std::complex<double> hi{std::cos(g.angle / 2),
                                      std::sin(g.angle / 2)};
        for (std::uint64_t i = 0; i < dim; ++i)
          psi[i] *= (i & tbit) ? hi : lo;
        break;
      }
      case Gate::Kind::cx: {
        const std::uint64_t cbit = bit_of(g.control);
        for (std::uint64_t i = 0; i < dim; ++i)
          if ((i & cbit) && !(i & tbit)) std::swap(psi[i], psi[i | tbit]);
        break;
      }
    }
  }
  return psi;
}

}  // namespace combifock
