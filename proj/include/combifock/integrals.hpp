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
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "combifock/combinadics.hpp"
#include "combifock/fockops.hpp"

namespace combifock {

class FcidumpError : public std::runtime_error {
 public:
  FcidumpError(const std::string& what, int line)
      : std::runtime_error("fcidump line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Molecular integrals in chemists' notation over M spatial orbitals:
/// h1 is the one-electron matrix, two_body holds (ij|kl) with the full
/// 8-fold permutational symmetry, e_core the nuclear/core constant.
struct IntegralSet {
  int orbitals = 0;
  int n_electrons = 0;
  int ms2 = 0;
  double e_core = 0.0;
  Eigen::MatrixXd h1;
  std::vector<double> two_body;  // dense [i][j][k][l], row-major

  int n_up() const { return (n_electrons + ms2) / 2; }
  int n_down() const { return (n_electrons - ms2) / 2; }

  SectorShape shape() const {
    return {.orbitals = orbitals, .n_up = n_up(), .n_down = n_down()};
  }

  double g(int i, int j, int k, int l) const {
    const std::size_t m = static_cast<std::size_t>(orbitals);
    return two_body[((static_cast<std::size_t>(i) * m + j) * m + k) * m + l];
  }

  void set_g(int i, int j, int k, int l, double v) {
    const std::size_t m = static_cast<std::size_t>(orbitals);
    two_body[((static_cast<std::size_t>(i) * m + j) * m + k) * m + l] = v;
  }
};

namespace detail {

inline bool parse_double(const std::string& tok, double& out) {
  // std::from_chars<double> handles fixed and scientific forms; Fortran-style
  // D exponents are normalized first.
  std::string t = tok;
  for (char& ch : t)
    if (ch == 'D' || ch == 'd') ch = 'E';
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

inline long header_value(const std::string& header, const std::string& key,
                         int line) {
  const auto pos = header.find(key);
  if (pos == std::string::npos)
    throw FcidumpError("missing " + key + " in header", line);
  auto i = pos + key.size();
  while (i < header.size() && (header[i] == ' ' || header[i] == '=')) ++i;
  std::size_t len = 0;
  long value = 0;
  bool neg = false;
  if (i < header.size() && header[i] == '-') {
    neg = true;
    ++i;
  }
  while (i + len < header.size() && std::isdigit(header[i + len])) ++len;
  if (len == 0) throw FcidumpError("malformed " + key + " in header", line);
  value = std::stol(header.substr(i, len));
  return neg ? -value : value;
}

}  // namespace detail

/**
 * Parse a Molpro-convention FCIDUMP: a namelist header carrying NORB, NELEC
 * and MS2, then "value i j k l" lines with 1-based indices. Rows (i,j,0,0)
 * fill the one-electron matrix, (0,0,0,0) the core energy, everything else
 * the chemists' (ij|kl) tensor, symmetrized over all eight images. Missing
 * entries stay zero.
 */
inline IntegralSet parse_fcidump(std::istream& in) {
  std::string line;
  std::string header;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    header += " " + line;
    const auto upper = [&] {
      std::string u = header;
      for (char& c : u) c = std::toupper(static_cast<unsigned char>(c));
      return u;
    }();
    if (upper.find("&END") != std::string::npos ||
        upper.find('/') != std::string::npos) {
      header = upper;
      have_header = true;
      break;
    }
  }
  if (!have_header) throw FcidumpError("missing namelist terminator", line_no);

  IntegralSet out;
  out.orbitals = static_cast<int>(detail::header_value(header, "NORB", line_no));
  out.n_electrons =
      static_cast<int>(detail::header_value(header, "NELEC", line_no));
  out.ms2 = static_cast<int>(detail::header_value(header, "MS2", line_no));
  if (out.orbitals < 1) throw FcidumpError("NORB must be positive", line_no);
  if (out.n_electrons < 0 || (out.n_electrons + out.ms2) % 2 != 0)
    throw FcidumpError("inconsistent NELEC/MS2", line_no);
  out.h1 = Eigen::MatrixXd::Zero(out.orbitals, out.orbitals);
  out.two_body.assign(static_cast<std::size_t>(out.orbitals) * out.orbitals *
                          out.orbitals * out.orbitals,
                      0.0);

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string vtok;
    if (!(ss >> vtok)) continue;  // blank line
    double value = 0;
    if (!detail::parse_double(vtok, value))
      throw FcidumpError("non-numeric value '" + vtok + "'", line_no);
    int idx[4];
    for (int& v : idx) {
      if (!(ss >> v)) throw FcidumpError("expected four indices", line_no);
      if (v < 0 || v > out.orbitals)
        throw FcidumpError("index " + std::to_string(v) + " outside [0, " +
                               std::to_string(out.orbitals) + "]",
                           line_no);
    }
    const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      out.e_core = value;
    } else if (k == 0 && l == 0) {
      if (i == 0 || j == 0)
        throw FcidumpError("one-electron row needs two indices", line_no);
      out.h1(i - 1, j - 1) = value;
      out.h1(j - 1, i - 1) = value;
    } else if (i == 0 || j == 0 || k == 0 || l == 0) {
      throw FcidumpError("two-electron row needs four indices", line_no);
    } else {
      const int a = i - 1, b = j - 1, c = k - 1, d = l - 1;
      out.set_g(a, b, c, d, value);
      out.set_g(b, a, c, d, value);
      out.set_g(a, b, d, c, value);
      out.set_g(b, a, d, c, value);
      out.set_g(c, d, a, b, value);
      out.set_g(d, c, a, b, value);
      out.set_g(c, d, b, a, value);
      out.set_g(d, c, b, a, value);
    }
  }
  return out;
}

inline IntegralSet parse_fcidump_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FcidumpError("cannot open " + path.string(), 0);
  return parse_fcidump(in);
}

/// Write the canonical unique-entry FCIDUMP form that parse_fcidump reads
/// back into identical tensors.
inline void write_fcidump(const IntegralSet& s, std::ostream& os) {
  os << " &FCI NORB=" << s.orbitals << ",NELEC=" << s.n_electrons
     << ",MS2=" << s.ms2 << ",\n  ORBSYM=";
  for (int i = 0; i < s.orbitals; ++i) os << "1,";
  os << "\n  ISYM=1,\n &END\n";
  char buf[64];
  const auto emit = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof(buf), "%23.16E %4d %4d %4d %4d\n", v, i, j, k, l);
    os << buf;
  };
  for (int i = 0; i < s.orbitals; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = 0; k <= i; ++k) {
        const int lmax = (k == i) ? j : k;
        for (int l = 0; l <= lmax; ++l) {
          const double v = s.g(i, j, k, l);
          if (std::abs(v) > 1e-16) emit(v, i + 1, j + 1, k + 1, l + 1);
        }
      }
  for (int i = 0; i < s.orbitals; ++i)
    for (int j = 0; j <= i; ++j)
      if (std::abs(s.h1(i, j)) > 1e-16) emit(s.h1(i, j), i + 1, j + 1, 0, 0);
  emit(s.e_core, 0, 0, 0, 0);
}

/**
 * Spin-orbital coefficient view over 2M block-ordered spin orbitals
 * (down sector first). The coefficients are defined for the operator form
 *
 *   H = sum_pq h(p,q) a+_p a_q
 *     + 1/2 sum_pqrs g(p,q,r,s) (a+_p a_q a+_r a_s - delta_qr a+_p a_s)
 *     + e_core
 *
 * which reproduces the standard electronic Hamiltonian; spin-forbidden
 * entries are zero.
 */
class SpinOrbitalCoefficients {
 public:
  explicit SpinOrbitalCoefficients(IntegralSet ints) : ints_(std::move(ints)) {}

  int spin_orbital_count() const { return 2 * ints_.orbitals; }
  double e_core() const { return ints_.e_core; }
  const IntegralSet& integrals() const { return ints_; }

  double one_body(int p, int q) const {
    const int m = ints_.orbitals;
    if (spin_of(p, m) != spin_of(q, m)) return 0.0;
    return ints_.h1(spatial_of(p, m), spatial_of(q, m));
  }

  /// Chemists' (pq|rs) over spin orbitals: nonzero only when p,q share a
  /// spin and r,s share a spin.
  double two_body(int p, int q, int r, int s) const {
    const int m = ints_.orbitals;
    if (spin_of(p, m) != spin_of(q, m) || spin_of(r, m) != spin_of(s, m))
      return 0.0;
    return ints_.g(spatial_of(p, m), spatial_of(q, m), spatial_of(r, m),
                   spatial_of(s, m));
  }

 private:
  IntegralSet ints_;
};

inline SpinOrbitalCoefficients to_physicist_coefficients(IntegralSet ints) {
  return SpinOrbitalCoefficients(std::move(ints));
}

}  // namespace combifock
