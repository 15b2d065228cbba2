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
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "combifock/combinadics.hpp"
#include "combifock/fockops.hpp"
#include "combifock/integrals.hpp"

namespace combifock {

/// One cluster amplitude: a spin-conserving move of one or two particles out
/// of the Hartree-Fock reference determinant (rank 0 in each sector).
struct Excitation {
  bool is_double = false;
  // Block spin-orbital indices; slot 2 is unused for singles.
  int create1 = -1, annihilate1 = -1;
  int create2 = -1, annihilate2 = -1;
  std::uint64_t target_rank = 0;  // combined rank of the excited determinant
  double mp2_amplitude = 0.0;     // screening diagnostic, doubles only
};

namespace detail {

/// Fock-operator diagonal for the reference occupation; for a closed shell
/// this is the usual h_pp + sum_k [2(pp|kk) - (pk|kp)] orbital energy.
inline double orbital_energy(const IntegralSet& ints, int spatial, Spin s) {
  double eps = ints.h1(spatial, spatial);
  const int occ_same = s == Spin::up ? ints.n_up() : ints.n_down();
  const int occ_other = s == Spin::up ? ints.n_down() : ints.n_up();
  for (int k = 0; k < occ_same; ++k)
    eps += ints.g(spatial, spatial, k, k) - ints.g(spatial, k, k, spatial);
  for (int k = 0; k < occ_other; ++k) eps += ints.g(spatial, spatial, k, k);
  return eps;
}

inline std::uint64_t excited_rank(const Excitation& ex,
                                  const SectorShape& shape) {
  MaskPair masks{(std::uint64_t{1} << shape.n_up) - 1,
                 (std::uint64_t{1} << shape.n_down) - 1};
  int sign = 1;
  if (!apply_spin_orbital_pair(ex.create1, ex.annihilate1, shape, masks, sign))
    throw std::logic_error("excitation annihilates the reference");
  if (ex.is_double &&
      !apply_spin_orbital_pair(ex.create2, ex.annihilate2, shape, masks, sign))
    throw std::logic_error("excitation annihilates the reference");
  return rank_mask_pair(masks, shape);
}

}  // namespace detail

/**
 * Every spin- and number-conserving single excitation from the reference,
 * plus the double excitations whose MP2 amplitude
 *
 *   |(ai|bj) - (aj|bi)| / (eps_a + eps_b - eps_i - eps_j)
 *
 * exceeds mp2_eps. A near-degenerate denominator (|delta eps| < 1e-10)
 * retains the excitation unconditionally. Enumeration order is fixed:
 * down-sector singles, up-sector singles, down doubles, up doubles, mixed
 * doubles, each lexicographic in its indices.
 */
inline std::vector<Excitation> enumerate_excitations(const IntegralSet& ints,
                                                     double mp2_eps) {
  const SectorShape shape = ints.shape();
  shape.validate();
  const int m = shape.orbitals;
  std::vector<Excitation> out;

  const auto add_single = [&](int occ_spatial, int virt_spatial, Spin s) {
    Excitation ex;
    ex.create1 = spin_orbital_index(virt_spatial, s, m);
    ex.annihilate1 = spin_orbital_index(occ_spatial, s, m);
    ex.target_rank = detail::excited_rank(ex, shape);
    out.push_back(ex);
  };
  for (int i = 0; i < shape.n_down; ++i)
    for (int a = shape.n_down; a < m; ++a) add_single(i, a, Spin::down);
  for (int i = 0; i < shape.n_up; ++i)
    for (int a = shape.n_up; a < m; ++a) add_single(i, a, Spin::up);

  const auto mp2_keep = [&](int a, int i, int b, int j, Spin sa, Spin sb,
                            double& amplitude) {
    const double direct = ints.g(a, i, b, j);
    const double exchange = sa == sb ? ints.g(a, j, b, i) : 0.0;
    const double numer = direct - exchange;
    const double denom = detail::orbital_energy(ints, a, sa) +
                         detail::orbital_energy(ints, b, sb) -
                         detail::orbital_energy(ints, i, sa) -
                         detail::orbital_energy(ints, j, sb);
    if (std::abs(denom) < 1e-10) {
      amplitude = std::numeric_limits<double>::infinity();
      return true;  // conservative: keep degenerate channels
    }
    amplitude = numer / denom;
    return std::abs(amplitude) > mp2_eps;
  };

  const auto add_same_spin_doubles = [&](Spin s) {
    const int occ = s == Spin::up ? shape.n_up : shape.n_down;
    for (int i = 0; i < occ; ++i)
      for (int j = i + 1; j < occ; ++j)
        for (int a = occ; a < m; ++a)
          for (int b = a + 1; b < m; ++b) {
            double amp = 0;
            if (!mp2_keep(a, i, b, j, s, s, amp)) continue;
            Excitation ex;
            ex.is_double = true;
            ex.create1 = spin_orbital_index(a, s, m);
            ex.annihilate1 = spin_orbital_index(i, s, m);
            ex.create2 = spin_orbital_index(b, s, m);
            ex.annihilate2 = spin_orbital_index(j, s, m);
            ex.mp2_amplitude = amp;
            ex.target_rank = detail::excited_rank(ex, shape);
            out.push_back(ex);
          }
  };
  add_same_spin_doubles(Spin::down);
  add_same_spin_doubles(Spin::up);

  for (int i = 0; i < shape.n_down; ++i)
    for (int a = shape.n_down; a < m; ++a)
      for (int j = 0; j < shape.n_up; ++j)
        for (int b = shape.n_up; b < m; ++b) {
          double amp = 0;
          if (!mp2_keep(a, i, b, j, Spin::down, Spin::up, amp)) continue;
          Excitation ex;
          ex.is_double = true;
          ex.create1 = spin_orbital_index(a, Spin::down, m);
          ex.annihilate1 = spin_orbital_index(i, Spin::down, m);
          ex.create2 = spin_orbital_index(b, Spin::up, m);
          ex.annihilate2 = spin_orbital_index(j, Spin::up, m);
          ex.mp2_amplitude = amp;
          ex.target_rank = detail::excited_rank(ex, shape);
          out.push_back(ex);
        }

  return out;
}

/// The compact cluster operator: parameters live in row zero of T_c at the
/// ranked indices of the excited determinants.
struct ClusterOperator {
  SectorShape shape;
  int qubits = 0;
  std::uint64_t dim_phys = 0;
  std::vector<Excitation> excitations;

  int parameter_count() const { return static_cast<int>(excitations.size()); }
};

inline ClusterOperator build_cluster_operator(const IntegralSet& ints,
                                              double mp2_eps) {
  const SectorShape shape = ints.shape();
  ClusterOperator op{.shape = shape,
                     .qubits = shape.qubit_count(),
                     .dim_phys = shape.dim(),
                     .excitations = enumerate_excitations(ints, mp2_eps)};
  std::set<std::uint64_t> seen;
  for (const auto& ex : op.excitations)
    if (!seen.insert(ex.target_rank).second)
      throw std::logic_error("two excitations share a target determinant");
  return op;
}

/// K(theta) = i (T_c - T_c^dagger): i*theta_s at (0, target_s), the negative
/// conjugate mirrored below. Hermitian, rank 2 for any nonzero theta.
inline Eigen::MatrixXcd cluster_generator(const ClusterOperator& op,
                                          std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != op.parameter_count())
    throw std::invalid_argument("parameter count mismatch");
  const std::uint64_t dim = std::uint64_t{1} << op.qubits;
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t s = 0; s < theta.size(); ++s) {
    const std::uint64_t t = op.excitations[s].target_rank;
    if (t == 0 || t >= op.dim_phys)
      throw std::logic_error("excitation target outside the physical block");
    k(0, t) += std::complex<double>{0, theta[s]};
    k(t, 0) += std::complex<double>{0, -theta[s]};
  }
  return k;
}

/**
 * exp(-i K)|0>, evaluated in closed form. -iK generates a plane rotation in
 * span{|0>, v} with v = sum theta_s |target_s|, so
 *
 *   exp(-iK)|0> = cos(|theta|) |0> - sin(|theta|)/|theta| * sum theta_s |t_s>
 *
 * All amplitudes are real and supported on the physical block.
 */
inline Eigen::VectorXd apply_cluster_exact(const ClusterOperator& op,
                                           std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != op.parameter_count())
    throw std::invalid_argument("parameter count mismatch");
  const std::uint64_t dim = std::uint64_t{1} << op.qubits;
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(dim);
  double norm_sq = 0;
  for (double t : theta) norm_sq += t * t;
  const double rho = std::sqrt(norm_sq);
  if (rho == 0.0) {
    psi[0] = 1.0;
    return psi;
  }
  psi[0] = std::cos(rho);
  const double scale = -std::sin(rho) / rho;
  for (std::size_t s = 0; s < theta.size(); ++s)
    psi[op.excitations[s].target_rank] += scale * theta[s];
  return psi;
}

}  // namespace combifock
