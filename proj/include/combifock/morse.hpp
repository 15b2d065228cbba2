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
#include <span>
#include <stdexcept>
#include <vector>

namespace combifock {

/// Parameters of E(r) = D_e (1 - exp(-a (r - r_e)))^2 + (E_inf - D_e).
struct MorseFit {
  double well_depth = 0.0;   // D_e, Hartree
  double width = 0.0;        // a, 1/Angstrom
  double r_eq = 0.0;         // r_e, Angstrom
  double asymptote = 0.0;    // E_inf, Hartree
  double rms_residual = 0.0;
  int iterations = 0;
  bool converged = false;

  double evaluate(double r) const {
    const double u = 1.0 - std::exp(-width * (r - r_eq));
    return well_depth * u * u + (asymptote - well_depth);
  }
};

class MorseFitError : public std::runtime_error {
 public:
  MorseFitError(const std::string& what, MorseFit best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const MorseFit& best() const { return best_; }

 private:
  MorseFit best_;
};

/**
 * Damped Gauss-Newton (Levenberg-Marquardt style) least squares on the four
 * Morse parameters. The starting guess takes r_e from the lowest sample,
 * E_inf from the farthest sample and a = 1 / Angstrom. Throws MorseFitError
 * carrying the best parameters found if the fit fails to converge.
 */
inline MorseFit fit_morse(std::span<const double> distances,
                          std::span<const double> energies,
                          int max_iterations = 200) {
  const std::size_t n = distances.size();
  if (n != energies.size())
    throw std::invalid_argument("distance/energy lists differ in length");
  if (n < 4)
    throw std::invalid_argument("morse fit needs at least 4 points");

  std::size_t lowest = 0;
  std::size_t farthest = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (energies[i] < energies[lowest]) lowest = i;
    if (distances[i] > distances[farthest]) farthest = i;
  }
  Eigen::Vector4d p;  // (D_e, a, r_e, E_inf)
  p << std::max(energies[farthest] - energies[lowest], 1e-3), 1.0,
      distances[lowest], energies[farthest];

  const auto residuals = [&](const Eigen::Vector4d& q, Eigen::VectorXd& r,
                             Eigen::MatrixXd* jac) {
    r.resize(n);
    if (jac) jac->resize(n, 4);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = distances[i] - q[2];
      const double e = std::exp(-q[1] * x);
      const double u = 1.0 - e;
      r[i] = q[0] * u * u + (q[3] - q[0]) - energies[i];
      if (jac) {
        (*jac)(i, 0) = u * u - 1.0;
        (*jac)(i, 1) = 2.0 * q[0] * u * e * x;
        (*jac)(i, 2) = -2.0 * q[0] * u * e * q[1];
        (*jac)(i, 3) = 1.0;
      }
    }
  };

  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  residuals(p, r, &jac);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  bool converged = false;
  int used = 0;
  for (int it = 1; it <= max_iterations; ++it) {
    used = it;
    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Eigen::Vector4d jtr = jac.transpose() * r;
    Eigen::Matrix4d damped = jtj;
    damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
    const Eigen::Vector4d step = damped.ldlt().solve(jtr);
    const Eigen::Vector4d trial = p - step;
    Eigen::VectorXd r_trial;
    residuals(trial, r_trial, nullptr);
    const double trial_cost = r_trial.squaredNorm();
    if (trial_cost < cost) {
      const double improvement = cost - trial_cost;
      p = trial;
      cost = trial_cost;
      lambda = std::max(lambda * 0.3, 1e-12);
      residuals(p, r, &jac);
      if (improvement < 1e-24 || step.norm() < 1e-14) {
        converged = true;
        break;
      }
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }

  // A well below numerical noise or non-positive geometry means the data
  // did not determine a Morse curve.
  if (p[0] < 1e-9 || p[1] <= 0.0 || p[2] <= 0.0) converged = false;

  MorseFit fit{.well_depth = p[0],
               .width = p[1],
               .r_eq = p[2],
               .asymptote = p[3],
               .rms_residual = std::sqrt(cost / static_cast<double>(n)),
               .iterations = used,
               .converged = converged};
  if (!converged)
    throw MorseFitError("morse fit did not converge", fit);
  return fit;
}

}  // namespace combifock
