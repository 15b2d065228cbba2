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
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "combifock/combinadics.hpp"

namespace combifock {

enum class Spin : std::uint8_t { down = 0, up = 1 };

/// Block spin-orbital indexing over 2M orbitals: spin-down occupies
/// [0, M), spin-up [M, 2M).
inline Spin spin_of(int spin_orbital, int orbitals) {
  return spin_orbital < orbitals ? Spin::down : Spin::up;
}
inline int spatial_of(int spin_orbital, int orbitals) {
  return spin_orbital < orbitals ? spin_orbital : spin_orbital - orbitals;
}
inline int spin_orbital_index(int spatial, Spin s, int orbitals) {
  return s == Spin::down ? spatial : spatial + orbitals;
}

namespace detail {

inline std::uint64_t mask_of(std::span<const int> occupied) {
  std::uint64_t m = 0;
  for (int s : occupied) m |= std::uint64_t{1} << s;
  return m;
}

inline std::vector<int> set_of(std::uint64_t mask) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

/// a_i^dagger a_j on a bitmask. Returns false when the state is annihilated;
/// otherwise updates mask and multiplies sign by (-1)^p with p the number of
/// occupied orbitals strictly between i and j.
inline bool apply_one_body_mask(int create, int annihilate,
                                std::uint64_t& mask, int& sign) {
  const std::uint64_t jbit = std::uint64_t{1} << annihilate;
  if (!(mask & jbit)) return false;
  if (create != annihilate) {
    const std::uint64_t ibit = std::uint64_t{1} << create;
    if (mask & ibit) return false;
    const int lo = create < annihilate ? create : annihilate;
    const int hi = create < annihilate ? annihilate : create;
    const std::uint64_t between =
        (hi - lo > 1) ? ((std::uint64_t{1} << hi) - (std::uint64_t{2} << lo))
                      : 0;
    if (std::popcount(mask & between) & 1) sign = -sign;
    mask = (mask & ~jbit) | ibit;
  }
  return true;
}

/// Rank of a bitmask occupation among all popcount-equal subsets of [0, M).
inline std::uint64_t rank_mask(std::uint64_t mask, int orbitals) {
  const int n = std::popcount(mask);
  std::uint64_t acc = 0;
  std::uint64_t m = mask;
  int pos = 0;  // position counted from the smallest element
  while (m) {
    const int s = std::countr_zero(m);
    acc += binomial(orbitals - (s + 1), n - pos);
    m &= m - 1;
    ++pos;
  }
  return binomial(orbitals, n) - 1 - acc;
}

}  // namespace detail

/// Result of a fermionic operator acting on one sector's occupation set.
struct SignedSet {
  std::vector<int> occupied;
  int sign = 1;
  bool annihilated = false;

  static SignedSet zero() { return {.occupied = {}, .sign = 1, .annihilated = true}; }
};

/// a_i^dagger a_j |sigma>. The number operator (i == j) is allowed and keeps
/// the set with sign +1 when j is occupied.
inline SignedSet apply_one_body(int create, int annihilate,
                                std::span<const int> occupied,
                                int orbital_count) {
  validate_occupation(occupied, orbital_count);
  if (create < 0 || create >= orbital_count || annihilate < 0 ||
      annihilate >= orbital_count)
    throw std::invalid_argument("operator index outside [0, orbitals)");
  std::uint64_t mask = detail::mask_of(occupied);
  int sign = 1;
  if (!detail::apply_one_body_mask(create, annihilate, mask, sign))
    return SignedSet::zero();
  return {.occupied = detail::set_of(mask), .sign = sign, .annihilated = false};
}

/// a_i^dagger a_j a_k^dagger a_l |sigma>, i.e. the (k, l) stage acts first.
inline SignedSet apply_two_body(int i, int j, int k, int l,
                                std::span<const int> occupied,
                                int orbital_count) {
  SignedSet first = apply_one_body(k, l, occupied, orbital_count);
  if (first.annihilated) return SignedSet::zero();
  SignedSet second = apply_one_body(i, j, first.occupied, orbital_count);
  if (second.annihilated) return SignedSet::zero();
  second.sign *= first.sign;
  return second;
}

/// A paired basis state: per-sector occupation sets.
struct PairedState {
  std::vector<int> up;
  std::vector<int> down;
};

inline PairedState unrank_paired(std::uint64_t combined,
                                 const SectorShape& shape) {
  const auto [ru, rd] = unpair_rank(combined, shape);
  return {.up = unrank_set(ru, shape.orbitals, shape.n_up),
          .down = unrank_set(rd, shape.orbitals, shape.n_down)};
}

inline std::uint64_t rank_paired(const PairedState& state,
                                 const SectorShape& shape) {
  return pair_ranks(rank_set(state.up, shape.orbitals),
                    rank_set(state.down, shape.orbitals), shape);
}

/// Sparse shift-operator matrix on the padded 2^n register. One-body
/// operators have at most one entry per column; compositions stay sparse.
struct ShiftMatrix {
  std::uint64_t dimension = 0;  // 2^n including padding
  struct Entry {
    std::uint64_t row, col;
    double value;
  };
  std::vector<Entry> entries;  // ordered by column

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dimension, dimension);
    for (const auto& e : entries) m(e.row, e.col) += e.value;
    return m;
  }
};

namespace detail {

struct MaskPair {
  std::uint64_t up, down;
};

inline MaskPair mask_pair(std::uint64_t combined, const SectorShape& shape) {
  const auto [ru, rd] = unpair_rank(combined, shape);
  return {mask_of(unrank_set(ru, shape.orbitals, shape.n_up)),
          mask_of(unrank_set(rd, shape.orbitals, shape.n_down))};
}

/// a_p^dagger a_q with block spin-orbital indices on a mask pair. p and q
/// must carry the same spin; cross-spin moves do not conserve the sector.
inline bool apply_spin_orbital_pair(int p, int q, const SectorShape& shape,
                                    MaskPair& masks, int& sign) {
  if (spin_of(p, shape.orbitals) != spin_of(q, shape.orbitals))
    throw std::invalid_argument(
        "one-body excitation must stay within a spin sector");
  std::uint64_t& m =
      spin_of(p, shape.orbitals) == Spin::up ? masks.up : masks.down;
  return apply_one_body_mask(spatial_of(p, shape.orbitals),
                             spatial_of(q, shape.orbitals), m, sign);
}

inline std::uint64_t rank_mask_pair(const MaskPair& masks,
                                    const SectorShape& shape) {
  return rank_mask(masks.up, shape.orbitals) * shape.dim_down() +
         rank_mask(masks.down, shape.orbitals);
}

}  // namespace detail

/**
 * Matrix of E_pq = a_p^dagger a_q in the ranked paired basis, embedded in
 * the zero-padded 2^n register. p, q are block spin-orbital indices and
 * must share a spin; the entry at (rank(out), rank(in)) is the fermionic
 * sign of the move.
 */
inline ShiftMatrix shift_matrix(int p, int q, const SectorShape& shape) {
  shape.validate();
  ShiftMatrix out;
  out.dimension = std::uint64_t{1} << shape.qubit_count();
  const std::uint64_t d = shape.dim();
  for (std::uint64_t col = 0; col < d; ++col) {
    detail::MaskPair masks = detail::mask_pair(col, shape);
    int sign = 1;
    if (!detail::apply_spin_orbital_pair(p, q, shape, masks, sign)) continue;
    out.entries.push_back({detail::rank_mask_pair(masks, shape), col,
                           static_cast<double>(sign)});
  }
  return out;
}

/// Matrix of E_pq E_rs built by composing the two one-body stages on every
/// basis state ((r, s) acts first).
inline ShiftMatrix two_body_matrix(int p, int q, int r, int s,
                                   const SectorShape& shape) {
  shape.validate();
  ShiftMatrix out;
  out.dimension = std::uint64_t{1} << shape.qubit_count();
  const std::uint64_t d = shape.dim();
  for (std::uint64_t col = 0; col < d; ++col) {
    detail::MaskPair masks = detail::mask_pair(col, shape);
    int sign = 1;
    if (!detail::apply_spin_orbital_pair(r, s, shape, masks, sign)) continue;
    if (!detail::apply_spin_orbital_pair(p, q, shape, masks, sign)) continue;
    out.entries.push_back({detail::rank_mask_pair(masks, shape), col,
                           static_cast<double>(sign)});
  }
  return out;
}

/// Max-abs residual of [E_ij, E_kl] - delta_jk E_il + delta_li E_kj over the
/// physical block. Indices are block spin orbitals.
inline double commutator_residual(int i, int j, int k, int l,
                                  const SectorShape& shape) {
  const Eigen::MatrixXd eij = shift_matrix(i, j, shape).dense();
  const Eigen::MatrixXd ekl = shift_matrix(k, l, shape).dense();
  Eigen::MatrixXd residual = eij * ekl - ekl * eij;
  if (j == k) residual -= shift_matrix(i, l, shape).dense();
  if (l == i) residual += shift_matrix(k, j, shape).dense();
  const std::uint64_t d = shape.dim();
  return residual.topLeftCorner(d, d).cwiseAbs().maxCoeff();
}

}  // namespace combifock
