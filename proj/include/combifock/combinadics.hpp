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

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace combifock {

namespace detail {

// Largest n for which every C(n, k) fits in 64 bits.
inline constexpr int kPascalRows = 68;
inline constexpr std::uint64_t kBinomialOverflow = ~std::uint64_t{0};

inline const std::array<std::array<std::uint64_t, kPascalRows>, kPascalRows>&
pascal_table() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kPascalRows>, kPascalRows> t{};
    for (int n = 0; n < kPascalRows; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) {
        const std::uint64_t a = t[n - 1][k - 1];
        const std::uint64_t b = (k <= n - 1) ? t[n - 1][k] : 0;
        if (a == kBinomialOverflow || b == kBinomialOverflow ||
            a > kBinomialOverflow - b) {
          t[n][k] = kBinomialOverflow;
        } else {
          t[n][k] = a + b;
        }
      }
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// Binomial coefficient C(n, k) in exact integer arithmetic.
///
/// Returns 0 whenever k > n (the empty-choice convention the ranking
/// function relies on, e.g. C(0, 1) = 0). Throws std::overflow_error if the
/// value does not fit in 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  if (n < detail::kPascalRows) {
    const std::uint64_t v = detail::pascal_table()[n][k];
    if (v == detail::kBinomialOverflow)
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                std::to_string(k) + ") exceeds 64 bits");
    return v;
  }
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // partial products are binomials, so exact
    if (r > detail::kBinomialOverflow)
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                std::to_string(k) + ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

/// One spin-resolved particle sector: M spatial orbitals holding n_up
/// spin-up and n_down spin-down fermions.
struct SectorShape {
  int orbitals = 0;  // M
  int n_up = 0;
  int n_down = 0;

  void validate() const {
    if (orbitals < 1) throw std::invalid_argument("sector needs orbitals >= 1");
    if (n_up < 0 || n_up > orbitals || n_down < 0 || n_down > orbitals)
      throw std::invalid_argument("particle counts must lie in [0, orbitals]");
  }

  std::uint64_t dim_up() const { return binomial(orbitals, n_up); }
  std::uint64_t dim_down() const { return binomial(orbitals, n_down); }

  /// Number of physical basis states, C(M, N_up) * C(M, N_down).
  std::uint64_t dim() const { return dim_up() * dim_down(); }

  /// Smallest register size with 2^n >= dim(); at least 1 so that even a
  /// one-dimensional sector has a representable state.
  int qubit_count() const {
    const std::uint64_t d = dim();
    int n = 1;
    while ((std::uint64_t{1} << n) < d) ++n;
    return n;
  }

  friend bool operator==(const SectorShape&, const SectorShape&) = default;
};

/// Throws unless `occupied` is strictly increasing with entries in [0, M).
inline void validate_occupation(std::span<const int> occupied,
                                int orbital_count) {
  int prev = -1;
  for (int s : occupied) {
    if (s <= prev)
      throw std::invalid_argument("occupation set must be strictly increasing");
    if (s < 0 || s >= orbital_count)
      throw std::invalid_argument("orbital index " + std::to_string(s) +
                                  " outside [0, " +
                                  std::to_string(orbital_count) + ")");
    prev = s;
  }
}

/**
 * Lexicographic rank of a strictly increasing occupation set among all
 * N-subsets of {0, ..., M-1}:
 *
 *   rank = C(M,N) - 1 - sum_{k=0}^{N-1} C(M - (s_{N-1-k} + 1), k + 1)
 *
 * where s_{N-1-k} walks the elements largest-first. The result is a
 * bijection onto [0, C(M,N)) that preserves lexicographic order; the empty
 * set ranks 0.
 */
inline std::uint64_t rank_set(std::span<const int> occupied,
                              int orbital_count) {
  validate_occupation(occupied, orbital_count);
  const int n = static_cast<int>(occupied.size());
  std::uint64_t acc = 0;
  for (int k = 0; k < n; ++k) {
    const int s = occupied[n - 1 - k];
    acc += binomial(orbital_count - (s + 1), k + 1);
  }
  return binomial(orbital_count, n) - 1 - acc;
}

/// Inverse of rank_set by greedy descent over the combinatorial number
/// system: pick the smallest admissible element, subtracting the count of
/// sets that start below it.
inline std::vector<int> unrank_set(std::uint64_t rank, int orbital_count,
                                   int particle_count) {
  if (particle_count < 0 || particle_count > orbital_count)
    throw std::invalid_argument("particle count outside [0, orbitals]");
  const std::uint64_t dim = binomial(orbital_count, particle_count);
  if (rank >= dim)
    throw std::out_of_range("rank " + std::to_string(rank) +
                            " outside [0, " + std::to_string(dim) + ")");
  std::vector<int> out;
  out.reserve(particle_count);
  std::uint64_t rem = rank;
  int next = 0;
  for (int pos = 0; pos < particle_count; ++pos) {
    for (int e = next;; ++e) {
      const std::uint64_t with_e =
          binomial(orbital_count - e - 1, particle_count - pos - 1);
      if (rem < with_e) {
        out.push_back(e);
        next = e + 1;
        break;
      }
      rem -= with_e;
    }
  }
  return out;
}

/// Cross-sector pairing: the spin-down rank is the fast index.
inline std::uint64_t pair_ranks(std::uint64_t rank_up, std::uint64_t rank_down,
                                const SectorShape& shape) {
  shape.validate();
  if (rank_up >= shape.dim_up() || rank_down >= shape.dim_down())
    throw std::out_of_range("sector rank outside its dimension");
  return rank_up * shape.dim_down() + rank_down;
}

inline std::pair<std::uint64_t, std::uint64_t> unpair_rank(
    std::uint64_t combined, const SectorShape& shape) {
  shape.validate();
  if (combined >= shape.dim())
    throw std::out_of_range("combined rank outside sector dimension");
  const std::uint64_t d = shape.dim_down();
  return {combined / d, combined % d};
}

}  // namespace combifock
