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

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "combifock/ansatz.hpp"
#include "combifock/compact_hamiltonian.hpp"

namespace combifock {

struct VqeConfig {
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int max_iterations = 5000;
  double energy_tolerance = 1e-7;  // Hartree, on consecutive iterations
  double gradient_step = 1e-4;
  std::uint64_t seed = 0;  // reserved for optional theta jitter, off by default

  void validate() const {
    if (beta1 <= 0 || beta1 >= 1 || beta2 <= 0 || beta2 >= 1)
      throw std::invalid_argument("adam betas must lie in (0, 1)");
    if (energy_tolerance <= 0 || gradient_step <= 0 || learning_rate <= 0)
      throw std::invalid_argument("tolerances and step sizes must be positive");
  }
};

struct VqeResult {
  double energy = 0.0;
  std::vector<double> theta;
  std::uint64_t function_calls = 0;  // energy evaluations
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // energy after each iteration, trace[0] = start
};

/// Energy of the compact ansatz state: <psi(theta)| H |psi(theta)> where
/// psi is the closed-form rank-2 rotation applied to the reference. The
/// matrix already carries the core energy on its physical diagonal.
inline double vqe_energy(std::span<const double> theta,
                         const CompactHamiltonian& h,
                         const ClusterOperator& op) {
  const Eigen::VectorXd psi = apply_cluster_exact(op, theta);
  return psi.dot(h.matrix.selfadjointView<Eigen::Lower>() * psi);
}

/// Central finite differences, two energy calls per coordinate.
inline std::vector<double> finite_difference_gradient(
    const std::function<double(std::span<const double>)>& energy,
    std::span<const double> theta, double step) {
  if (step <= 0) throw std::invalid_argument("gradient step must be positive");
  std::vector<double> point(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t s = 0; s < theta.size(); ++s) {
    const double original = point[s];
    point[s] = original + step;
    const double plus = energy(point);
    point[s] = original - step;
    const double minus = energy(point);
    point[s] = original;
    grad[s] = (plus - minus) / (2.0 * step);
  }
  return grad;
}

inline std::vector<double> vqe_gradient(std::span<const double> theta,
                                        const CompactHamiltonian& h,
                                        const ClusterOperator& op,
                                        double step) {
  return finite_difference_gradient(
      [&](std::span<const double> t) { return vqe_energy(t, h, op); }, theta,
      step);
}

/**
 * ADAM descent from theta = 0 (the Hartree-Fock reference) with central
 * finite-difference gradients. Stops after the energy change stays below
 * energy_tolerance for three consecutive iterations, or at max_iterations.
 * function_calls counts every energy evaluation: one for the starting trace
 * entry, then 2*P + 1 per iteration.
 */
inline VqeResult minimize_adam(
    const std::function<double(std::span<const double>)>& energy,
    int parameter_count, const VqeConfig& cfg) {
  cfg.validate();
  std::uint64_t calls = 0;
  const auto counted = [&](std::span<const double> t) {
    ++calls;
    const double e = energy(t);
    if (!std::isfinite(e))
      throw std::runtime_error("energy evaluated to a non-finite value");
    return e;
  };

  VqeResult res;
  res.theta.assign(parameter_count, 0.0);
  std::vector<double> m(parameter_count, 0.0);
  std::vector<double> v(parameter_count, 0.0);

  double prev = counted(res.theta);
  res.trace.push_back(prev);
  int quiet = 0;
  for (int t = 1; t <= cfg.max_iterations; ++t) {
    const std::vector<double> grad =
        finite_difference_gradient(counted, res.theta, cfg.gradient_step);
    const double bc1 = 1.0 - std::pow(cfg.beta1, t);
    const double bc2 = 1.0 - std::pow(cfg.beta2, t);
    for (int s = 0; s < parameter_count; ++s) {
      m[s] = cfg.beta1 * m[s] + (1.0 - cfg.beta1) * grad[s];
      v[s] = cfg.beta2 * v[s] + (1.0 - cfg.beta2) * grad[s] * grad[s];
      res.theta[s] -=
          cfg.learning_rate * (m[s] / bc1) / (std::sqrt(v[s] / bc2) + cfg.epsilon);
    }
    const double e = counted(res.theta);
    res.trace.push_back(e);
    res.iterations = t;
    quiet = std::abs(e - prev) < cfg.energy_tolerance ? quiet + 1 : 0;
    prev = e;
    if (quiet >= 3) {
      res.converged = true;
      break;
    }
  }
  res.energy = prev;
  res.function_calls = calls;
  return res;
}

/// The compact VQE loop over the padded matrix and cluster operator.
inline VqeResult run_vqe(const CompactHamiltonian& h, const ClusterOperator& op,
                         const VqeConfig& cfg) {
  return minimize_adam(
      [&](std::span<const double> t) { return vqe_energy(t, h, op); },
      op.parameter_count(), cfg);
}

}  // namespace combifock
