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
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace combifock {

/// A Pauli string is a length-n word over {I, X, Y, Z}; character 0 acts on
/// the most significant qubit of the register.
using PauliString = std::string;

/// Weighted sum of Pauli strings. Keys are kept lexicographically ordered by
/// std::map, which fixes serialization and iteration order.
struct PauliSum {
  int qubits = 0;
  std::map<PauliString, std::complex<double>> terms;

  std::size_t size() const { return terms.size(); }

  void add(const PauliString& s, std::complex<double> c,
           double drop_eps = 1e-15) {
    auto it = terms.find(s);
    if (it == terms.end()) {
      if (std::abs(c) > drop_eps) terms.emplace(s, c);
      return;
    }
    it->second += c;
    if (std::abs(it->second) <= drop_eps) terms.erase(it);
  }

  PauliSum& operator+=(const PauliSum& other) {
    for (const auto& [s, c] : other.terms) add(s, c);
    return *this;
  }

  PauliSum& operator*=(std::complex<double> scale) {
    for (auto& [s, c] : terms) c *= scale;
    return *this;
  }
};

inline PauliSum pauli_identity(int qubits, std::complex<double> coeff = 1.0) {
  PauliSum p{.qubits = qubits, .terms = {}};
  p.add(PauliString(qubits, 'I'), coeff);
  return p;
}

namespace detail {

/// Single-character Pauli product: a * b = phase * c.
inline std::pair<std::complex<double>, char> pauli_char_mul(char a, char b) {
  using C = std::complex<double>;
  if (a == 'I') return {C{1, 0}, b};
  if (b == 'I') return {C{1, 0}, a};
  if (a == b) return {C{1, 0}, 'I'};
  // XY=iZ, YZ=iX, ZX=iY and anticyclic partners.
  const bool forward = (a == 'X' && b == 'Y') || (a == 'Y' && b == 'Z') ||
                       (a == 'Z' && b == 'X');
  const char c = ('X' ^ 'Y' ^ 'Z') ^ a ^ b;
  return {forward ? C{0, 1} : C{0, -1}, c};
}

}  // namespace detail

inline std::pair<std::complex<double>, PauliString> multiply_strings(
    const PauliString& a, const PauliString& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("pauli strings of different register size");
  PauliString out(a.size(), 'I');
  std::complex<double> phase{1, 0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [ph, c] = detail::pauli_char_mul(a[i], b[i]);
    phase *= ph;
    out[i] = c;
  }
  return {phase, out};
}

inline PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.qubits != b.qubits)
    throw std::invalid_argument("pauli sums of different register size");
  PauliSum out{.qubits = a.qubits, .terms = {}};
  for (const auto& [sa, ca] : a.terms)
    for (const auto& [sb, cb] : b.terms) {
      auto [phase, s] = multiply_strings(sa, sb);
      out.add(s, ca * cb * phase);
    }
  return out;
}

inline PauliSum adjoint(const PauliSum& a) {
  PauliSum out{.qubits = a.qubits, .terms = {}};
  for (const auto& [s, c] : a.terms) out.add(s, std::conj(c));
  return out;
}

/**
 * Pauli decomposition of a 2^n x 2^n matrix under the Hilbert-Schmidt inner
 * product, with reconstruction-exact weights c_P = Tr(P m) / 2^n so that
 * sum_P c_P P = m. Terms with |c| < prune_eps are dropped.
 *
 * Implemented as a radix-4 butterfly over the (row bit, column bit) lattice,
 * one pass per qubit, O(n 4^n) instead of the 8^n cost of explicit traces.
 */
inline PauliSum decompose(const Eigen::MatrixXcd& m, double prune_eps = 1e-12) {
  const std::uint64_t dim = static_cast<std::uint64_t>(m.rows());
  if (dim == 0 || m.rows() != m.cols() || (dim & (dim - 1)) != 0 || dim < 2)
    throw std::invalid_argument("matrix dimension must be a power of two >= 2");
  int n = 0;
  while ((std::uint64_t{1} << n) < dim) ++n;

  // Scatter entry (r, c) to the base-4 word whose digit k is 2 r_k + c_k.
  std::vector<std::complex<double>> work(std::uint64_t{1} << (2 * n));
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t c = 0; c < dim; ++c) {
      std::uint64_t p = 0;
      for (int k = 0; k < n; ++k) {
        const std::uint64_t digit =
            2 * ((r >> (n - 1 - k)) & 1) + ((c >> (n - 1 - k)) & 1);
        p |= digit << (2 * (n - 1 - k));
      }
      work[p] = m(r, c);
    }

  const std::complex<double> half_i{0, 0.5};
  for (int k = 0; k < n; ++k) {
    const std::uint64_t step = std::uint64_t{1} << (2 * (n - 1 - k));
    for (std::uint64_t base = 0; base < work.size(); base += 4 * step) {
      for (std::uint64_t off = 0; off < step; ++off) {
        const std::complex<double> a = work[base + off];            // (0,0)
        const std::complex<double> b = work[base + step + off];     // (0,1)
        const std::complex<double> c = work[base + 2 * step + off]; // (1,0)
        const std::complex<double> d = work[base + 3 * step + off]; // (1,1)
        work[base + off] = 0.5 * (a + d);             // I
        work[base + step + off] = 0.5 * (b + c);      // X
        work[base + 2 * step + off] = half_i * (b - c);  // Y
        work[base + 3 * step + off] = 0.5 * (a - d);  // Z
      }
    }
  }

  static constexpr char kOps[4] = {'I', 'X', 'Y', 'Z'};
  PauliSum out{.qubits = n, .terms = {}};
  for (std::uint64_t p = 0; p < work.size(); ++p) {
    if (std::abs(work[p]) < prune_eps) continue;
    PauliString s(n, 'I');
    for (int k = 0; k < n; ++k) s[k] = kOps[(p >> (2 * (n - 1 - k))) & 3];
    out.terms.emplace(std::move(s), work[p]);
  }
  return out;
}

namespace detail {

/// Column action of one Pauli string: row index and phase for column c.
inline std::uint64_t string_column_action(const PauliString& s,
                                          std::uint64_t col, int n,
                                          std::complex<double>& phase) {
  std::uint64_t row = col;
  for (int k = 0; k < n; ++k) {
    const int bitpos = n - 1 - k;
    const std::uint64_t bit = (col >> bitpos) & 1;
    switch (s[k]) {
      case 'I':
        break;
      case 'X':
        row ^= std::uint64_t{1} << bitpos;
        break;
      case 'Y':
        row ^= std::uint64_t{1} << bitpos;
        phase *= bit ? std::complex<double>{0, -1} : std::complex<double>{0, 1};
        break;
      case 'Z':
        if (bit) phase = -phase;
        break;
      default:
        throw std::invalid_argument("pauli string may contain only IXYZ");
    }
  }
  return row;
}

}  // namespace detail

inline Eigen::MatrixXcd reconstruct(const PauliSum& p) {
  const std::uint64_t dim = std::uint64_t{1} << p.qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [s, c] : p.terms) {
    for (std::uint64_t col = 0; col < dim; ++col) {
      std::complex<double> phase = c;
      const std::uint64_t row =
          detail::string_column_action(s, col, p.qubits, phase);
      m(row, col) += phase;
    }
  }
  return m;
}

/// <psi| P |psi> accumulated term by term without materializing any matrix.
inline double expectation(const PauliSum& p, const Eigen::VectorXcd& psi) {
  const std::uint64_t dim = std::uint64_t{1} << p.qubits;
  if (static_cast<std::uint64_t>(psi.size()) != dim)
    throw std::invalid_argument("statevector size mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("statevector is not normalized");
  std::complex<double> acc{0, 0};
  for (const auto& [s, c] : p.terms) {
    std::complex<double> term{0, 0};
    for (std::uint64_t col = 0; col < dim; ++col) {
      if (psi[col] == std::complex<double>{0, 0}) continue;
      std::complex<double> phase{1, 0};
      const std::uint64_t row =
          detail::string_column_action(s, col, p.qubits, phase);
      term += std::conj(psi[row]) * phase * psi[col];
    }
    acc += c * term;
  }
  return acc.real();
}

/// Apply exp(i angle P) to a statevector in place (P squares to identity).
inline void apply_string_rotation(const PauliString& s, double angle,
                                  Eigen::VectorXcd& psi) {
  const int n = static_cast<int>(s.size());
  const std::uint64_t dim = std::uint64_t{1} << n;
  const double c = std::cos(angle);
  const std::complex<double> is{0, std::sin(angle)};
  Eigen::VectorXcd rotated(dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    std::complex<double> phase{1, 0};
    const std::uint64_t row = detail::string_column_action(s, col, n, phase);
    rotated[row] = phase * psi[col];
  }
  psi = c * psi + is * rotated;
}

/// Fixed-format text form: one "+c.ccccccccc STRING" line per term in
/// lexicographic string order. Coefficients must be real to 1e-10.
inline void serialize(const PauliSum& p, std::ostream& os) {
  for (const auto& [s, c] : p.terms) {
    if (std::abs(c.imag()) > 1e-10)
      throw std::invalid_argument(
          "serialization is defined for Hermitian (real-coefficient) sums");
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%+.9f", c.real());
    os << buf << ' ' << s << '\n';
  }
}

}  // namespace combifock
