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
#include <ostream>
#include <stdexcept>
#include <vector>

#include "combifock/combinadics.hpp"
#include "combifock/fockops.hpp"
#include "combifock/integrals.hpp"

namespace combifock {

/// Dense Hamiltonian in the ranked paired basis, zero-padded to 2^n. The
/// core energy sits on the physical diagonal; rows and columns at indices
/// >= dim_phys are exactly zero.
struct CompactHamiltonian {
  SectorShape shape;
  int qubits = 0;
  std::uint64_t dim_phys = 0;
  double e_core = 0.0;
  Eigen::MatrixXd matrix;
};

/**
 * Assemble the compact Hamiltonian by walking every physical basis state and
 * every spin-orbital index tuple: each surviving one-body move adds
 * h(p,q) * sign at (rank_out, rank_in); each two-body tuple adds
 * g/2 * sign for the composed double shift and subtracts the q == r
 * contraction. Iteration order is fixed, so builds are bitwise-reproducible.
 */
inline CompactHamiltonian build_compact_hamiltonian(const IntegralSet& ints,
                                                    int max_qubits = 14) {
  const SectorShape shape = ints.shape();
  shape.validate();
  const int n = shape.qubit_count();
  if (n > max_qubits)
    throw std::length_error("register of " + std::to_string(n) +
                            " qubits exceeds the cap of " +
                            std::to_string(max_qubits));
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t dim_phys = shape.dim();
  const int m = shape.orbitals;
  const int nso = 2 * m;
  const SpinOrbitalCoefficients coeffs = to_physicist_coefficients(ints);

  std::vector<detail::MaskPair> basis(dim_phys);
  for (std::uint64_t r = 0; r < dim_phys; ++r)
    basis[r] = detail::mask_pair(r, shape);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

  for (int p = 0; p < nso; ++p)
    for (int q = 0; q < nso; ++q) {
      if (spin_of(p, m) != spin_of(q, m)) continue;
      const double c = coeffs.one_body(p, q);
      if (c == 0.0) continue;
      for (std::uint64_t col = 0; col < dim_phys; ++col) {
        detail::MaskPair masks = basis[col];
        int sign = 1;
        if (!detail::apply_spin_orbital_pair(p, q, shape, masks, sign))
          continue;
        h(detail::rank_mask_pair(masks, shape), col) += c * sign;
      }
    }

  for (int p = 0; p < nso; ++p)
    for (int q = 0; q < nso; ++q) {
      if (spin_of(p, m) != spin_of(q, m)) continue;
      for (int r = 0; r < nso; ++r)
        for (int s = 0; s < nso; ++s) {
          if (spin_of(r, m) != spin_of(s, m)) continue;
          const double g = coeffs.two_body(p, q, r, s);
          if (g == 0.0) continue;
          const double half = 0.5 * g;
          for (std::uint64_t col = 0; col < dim_phys; ++col) {
            detail::MaskPair masks = basis[col];
            int sign = 1;
            if (detail::apply_spin_orbital_pair(r, s, shape, masks, sign) &&
                detail::apply_spin_orbital_pair(p, q, shape, masks, sign)) {
              h(detail::rank_mask_pair(masks, shape), col) += half * sign;
            }
            if (q == r) {
              detail::MaskPair m2 = basis[col];
              int sign2 = 1;
              if (detail::apply_spin_orbital_pair(p, s, shape, m2, sign2))
                h(detail::rank_mask_pair(m2, shape), col) -= half * sign2;
            }
          }
        }
    }

  for (std::uint64_t r = 0; r < dim_phys; ++r) h(r, r) += ints.e_core;

  // The full tuple sum is Hermitian up to addition-order rounding; fold the
  // last-bit noise away so downstream eigensolves see an exact symmetric
  // matrix.
  h = ((h + h.transpose()) * 0.5).eval();

  return {.shape = shape,
          .qubits = n,
          .dim_phys = dim_phys,
          .e_core = ints.e_core,
          .matrix = std::move(h)};
}

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXd amplitudes;  // length 2^n, zero on padding
};

/// Lowest eigenpair of the physical block. Padding rows are excluded
/// explicitly: their spectral value of zero is not a physical energy.
inline GroundState exact_ground_state(const CompactHamiltonian& h) {
  const std::uint64_t d = h.dim_phys;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      h.matrix.topLeftCorner(d, d));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed on the physical block");
  GroundState out;
  out.energy = solver.eigenvalues()(0);
  out.amplitudes = Eigen::VectorXd::Zero(h.matrix.rows());
  out.amplitudes.head(d) = solver.eigenvectors().col(0);
  return out;
}

/// Full eigenvalue list of the physical block, ascending.
inline Eigen::VectorXd physical_spectrum(const CompactHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      h.matrix.topLeftCorner(h.dim_phys, h.dim_phys),
      Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Row-major text dump with a one-line header, for external verification.
inline void write_dense_dump(const CompactHamiltonian& h, std::ostream& os) {
  os << "combifock-hamiltonian qubits=" << h.qubits << " dim=" << h.matrix.rows()
     << " dim_phys=" << h.dim_phys << " e_core=";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", h.e_core);
  os << buf << "\n";
  for (Eigen::Index r = 0; r < h.matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < h.matrix.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", h.matrix(r, c));
      os << buf << (c + 1 == h.matrix.cols() ? "\n" : " ");
    }
  }
}

}  // namespace combifock
