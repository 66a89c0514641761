/* Copyright 2026 The vbdecoh Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "vbdecoh/spin_algebra.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "vbdecoh/constants.hpp"
#include "vbdecoh/error.hpp"

namespace vbdecoh {

namespace {

int two_s_of(double s) {
  const double two_s = 2.0 * s;
  const double rounded = std::round(two_s);
  if (!(rounded >= 1.0) || std::abs(two_s - rounded) > 1e-12)
    throw DomainError("spin must be a positive half-integer, got " +
                      std::to_string(s));
  return static_cast<int>(rounded);
}

}  // namespace

SpinOps spin_matrices(double s) {
  const int dim = two_s_of(s) + 1;
  SpinOps ops;
  ops.s = s;
  ops.Iz = Eigen::MatrixXcd::Zero(dim, dim);
  ops.Iplus = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = s - k;
    ops.Iz(k, k) = m;
    // <m+1| I+ |m> sits at row k-1, column k.
    if (k > 0) ops.Iplus(k - 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  ops.Iminus = ops.Iplus.adjoint();
  return ops;
}

Eigen::VectorXd thermal_populations(double s, double omega, double temperature) {
  if (!(temperature > 0.0))
    throw DomainError("temperature must be positive");
  if (omega < 0.0) throw DomainError("Zeeman frequency must be non-negative");
  const int dim = two_s_of(s) + 1;
  const double beta_omega =
      constants::hbar * omega / (constants::k_boltzmann * temperature);
  Eigen::VectorXd p(dim);
  // Exponents shifted so the ground state m = -s has weight 1.
  for (int k = 0; k < dim; ++k) {
    const double m = s - k;
    p(k) = std::exp(-beta_omega * (m + s));
  }
  return p / p.sum();
}

Eigen::MatrixXcd thermal_state(double s, double omega, double temperature) {
  return thermal_populations(s, omega, temperature)
      .cast<std::complex<double>>()
      .asDiagonal();
}

Eigen::MatrixXcd embed(const Eigen::MatrixXcd& op, int site,
                       std::span<const int> dims) {
  if (site < 0 || site >= static_cast<int>(dims.size()))
    throw ShapeError("site index out of range");
  if (op.rows() != dims[site] || op.cols() != dims[site])
    throw ShapeError("operator dimension does not match dims[site]");
  Eigen::Index left = 1, right = 1;
  for (int k = 0; k < site; ++k) left *= dims[k];
  for (std::size_t k = site + 1; k < dims.size(); ++k) right *= dims[k];
  const Eigen::MatrixXcd with_left = Eigen::kroneckerProduct(
      Eigen::MatrixXcd::Identity(left, left), op);
  return Eigen::kroneckerProduct(with_left,
                                 Eigen::MatrixXcd::Identity(right, right));
}

}  // namespace vbdecoh
