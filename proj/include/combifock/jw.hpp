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
#include <Eigen/Eigenvalues>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "combifock/ansatz.hpp"
#include "combifock/circuits.hpp"
#include "combifock/combinadics.hpp"
#include "combifock/integrals.hpp"
#include "combifock/pauli.hpp"
#include "combifock/vqe.hpp"

namespace combifock {

/**
 * Jordan-Wigner annihilation operator a_p on a register of `total` qubits:
 * (X + iY)/2 on qubit p behind a Z parity string over qubits 0..p-1. Qubit p
 * carries the occupation of spin orbital p (block ordering, bit p of the
 * computational basis index).
 */
inline PauliSum jw_lowering(int p, int total) {
  if (p < 0 || p >= total)
    throw std::invalid_argument("spin orbital outside the register");
  PauliString x(total, 'I');
  for (int q = 0; q < p; ++q) x[total - 1 - q] = 'Z';
  PauliString y = x;
  x[total - 1 - p] = 'X';
  y[total - 1 - p] = 'Y';
  PauliSum out{.qubits = total, .terms = {}};
  out.add(x, {0.5, 0});
  out.add(y, {0, 0.5});
  return out;
}

inline PauliSum jw_raising(int p, int total) { return adjoint(jw_lowering(p, total)); }

/// a_p^dagger a_q as a Pauli sum.
inline PauliSum jw_one_body(int p, int q, int total) {
  return jw_raising(p, total) * jw_lowering(q, total);
}

/**
 * Full-register Hamiltonian over 2M qubits built from the same spin-orbital
 * coefficient map as the compact path:
 * H = sum h_pq a+_p a_q + 1/2 sum g_pqrs (a+_p a_q a+_r a_s - d_qr a+_p a_s)
 * plus the core energy on the identity string.
 */
inline PauliSum jw_hamiltonian(const IntegralSet& ints, int max_spin_orbitals = 12) {
  const int nso = 2 * ints.orbitals;
  if (nso > max_spin_orbitals)
    throw std::length_error("jw register of " + std::to_string(nso) +
                            " qubits exceeds the cap of " +
                            std::to_string(max_spin_orbitals));
  const SpinOrbitalCoefficients coeffs = to_physicist_coefficients(ints);

  std::vector<std::vector<PauliSum>> one_body(nso, std::vector<PauliSum>(nso));
  for (int p = 0; p < nso; ++p)
    for (int q = 0; q < nso; ++q)
      if (spin_of(p, ints.orbitals) == spin_of(q, ints.orbitals))
        one_body[p][q] = jw_one_body(p, q, nso);

  PauliSum h = pauli_identity(nso, ints.e_core);
  for (int p = 0; p < nso; ++p)
    for (int q = 0; q < nso; ++q) {
      const double c = coeffs.one_body(p, q);
      if (c == 0.0) continue;
      PauliSum term = one_body[p][q];
      term *= c;
      h += term;
    }
  for (int p = 0; p < nso; ++p)
    for (int q = 0; q < nso; ++q) {
      if (spin_of(p, ints.orbitals) != spin_of(q, ints.orbitals)) continue;
      for (int r = 0; r < nso; ++r)
        for (int s = 0; s < nso; ++s) {
          if (spin_of(r, ints.orbitals) != spin_of(s, ints.orbitals)) continue;
          const double g = coeffs.two_body(p, q, r, s);
          if (g == 0.0) continue;
          PauliSum term = one_body[p][q] * one_body[r][s];
          if (q == r) {
            PauliSum contraction = one_body[p][s];
            contraction *= -1.0;
            term += contraction;
          }
          term *= 0.5 * g;
          h += term;
        }
    }
  return h;
}

/// JW basis index of a paired occupation (spin-down orbitals on the low
/// qubits, spin-up shifted by M).
inline std::uint64_t fock_index(const PairedState& state, int orbitals) {
  std::uint64_t idx = 0;
  for (int o : state.down) idx |= std::uint64_t{1} << o;
  for (int o : state.up) idx |= std::uint64_t{1} << (orbitals + o);
  return idx;
}

/// Restriction of a full-register operator to the fixed (N_up, N_down)
/// sector, rows ordered by combined combinadic rank. `off_sector_max` is the
/// largest coupling between the sector and its complement, exactly zero for
/// number-conserving operators.
struct SectorBlock {
  Eigen::MatrixXcd matrix;
  std::vector<std::uint64_t> basis_index;  // JW index per combined rank
  double off_sector_max = 0.0;
};

inline SectorBlock sector_project(const PauliSum& op, const SectorShape& shape) {
  shape.validate();
  if (op.qubits > 12)
    throw std::length_error("dense sector projection capped at 2^12");
  const Eigen::MatrixXcd dense = reconstruct(op);
  const std::uint64_t dim_phys = shape.dim();
  SectorBlock out;
  out.basis_index.resize(dim_phys);
  for (std::uint64_t rank = 0; rank < dim_phys; ++rank)
    out.basis_index[rank] = fock_index(unrank_paired(rank, shape), shape.orbitals);

  std::vector<bool> in_sector(dense.rows(), false);
  for (const std::uint64_t idx : out.basis_index) in_sector[idx] = true;

  out.matrix.resize(dim_phys, dim_phys);
  for (std::uint64_t r = 0; r < dim_phys; ++r)
    for (std::uint64_t c = 0; c < dim_phys; ++c)
      out.matrix(r, c) = dense(out.basis_index[r], out.basis_index[c]);

  for (const std::uint64_t idx : out.basis_index)
    for (Eigen::Index other = 0; other < dense.rows(); ++other)
      if (!in_sector[other])
        out.off_sector_max =
            std::max({out.off_sector_max, std::abs(dense(idx, other)),
                      std::abs(dense(other, idx))});
  return out;
}

/// Anti-Hermitian excitation generator tau - tau^dagger in the full register.
inline PauliSum jw_excitation_generator(const Excitation& ex, int total) {
  PauliSum tau = ex.is_double
                     ? jw_raising(ex.create1, total) * jw_raising(ex.create2, total) *
                           jw_lowering(ex.annihilate2, total) *
                           jw_lowering(ex.annihilate1, total)
                     : jw_raising(ex.create1, total) * jw_lowering(ex.annihilate1, total);
  PauliSum dag = adjoint(tau);
  dag *= -1.0;
  tau += dag;
  return tau;
}

struct JwUccsdRun {
  VqeResult result;
  int parameters = 0;
  int depth = 0;
  int cnot_count = 0;
  double hartree_fock_energy = 0.0;
};

/**
 * Reference VQE in the full Jordan-Wigner encoding: the standard UCCSD
 * generator set (same excitation list and MP2 screening as the compact
 * ansatz), single-step Trotterized as exp(theta_s * (tau_s - tau_s+)) per
 * excitation, simulated as an exact statevector, minimized by the same ADAM
 * loop and call accounting.
 */
inline JwUccsdRun run_jw_uccsd_vqe(const IntegralSet& ints, const VqeConfig& cfg,
                                   double mp2_eps) {
  const int nso = 2 * ints.orbitals;
  if (nso > 10)
    throw std::length_error("full-encoding vqe capped at 10 spin orbitals");
  const SectorShape shape = ints.shape();
  const PauliSum h = jw_hamiltonian(ints);
  const Eigen::MatrixXcd dense = reconstruct(h);
  const std::vector<Excitation> excitations = enumerate_excitations(ints, mp2_eps);

  // Per-excitation list of (string, imaginary part) rotation generators.
  std::vector<std::vector<std::pair<PauliString, double>>> rotations;
  rotations.reserve(excitations.size());
  for (const Excitation& ex : excitations) {
    const PauliSum gen = jw_excitation_generator(ex, nso);
    std::vector<std::pair<PauliString, double>> terms;
    for (const auto& [s, c] : gen.terms) {
      if (std::abs(c.real()) > 1e-12)
        throw std::logic_error("excitation generator must be anti-Hermitian");
      terms.emplace_back(s, c.imag());
    }
    rotations.push_back(std::move(terms));
  }

  const std::uint64_t ref = fock_index(
      {.up = unrank_set(0, shape.orbitals, shape.n_up),
       .down = unrank_set(0, shape.orbitals, shape.n_down)},
      shape.orbitals);

  const auto prepare = [&](std::span<const double> theta) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(std::uint64_t{1} << nso);
    psi[ref] = 1.0;
    for (std::size_t s = 0; s < rotations.size(); ++s)
      for (const auto& [str, im] : rotations[s])
        apply_string_rotation(str, theta[s] * im, psi);
    return psi;
  };
  const auto energy = [&](std::span<const double> theta) {
    const Eigen::VectorXcd psi = prepare(theta);
    return std::real(psi.dot(dense * psi));
  };

  JwUccsdRun run;
  run.parameters = static_cast<int>(excitations.size());
  {
    const std::vector<double> zero(excitations.size(), 0.0);
    run.hartree_fock_energy = energy(zero);
  }
  run.result = minimize_adam(energy, run.parameters, cfg);

  Circuit circ{.qubits = nso, .gates = {}};
  for (std::size_t s = 0; s < rotations.size(); ++s)
    for (const auto& [str, im] : rotations[s])
      detail::append_pauli_evolution(circ, str, -run.result.theta[s] * im);
  run.depth = circ.depth();
  run.cnot_count = circ.cnot_count();
  return run;
}

}  // namespace combifock
