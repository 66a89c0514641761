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

#pragma once

#include <span>

#include <Eigen/Core>

namespace vbdecoh {

// Spin-s operators in the |m> basis ordered m = s, s-1, ..., -s.
struct SpinOps {
  double s = 0.5;
  Eigen::MatrixXcd Iz;
  Eigen::MatrixXcd Iplus;
  Eigen::MatrixXcd Iminus;

  int dim() const { return static_cast<int>(Iz.rows()); }
};

SpinOps spin_matrices(double s);

// Boltzmann state of the Zeeman Hamiltonian hbar*omega*Iz at temperature T
// (K); omega in rad/s. The ground state is m = -s for omega > 0.
Eigen::MatrixXcd thermal_state(double s, double omega, double temperature);

// Thermal populations ordered like the basis (m = s first).
Eigen::VectorXd thermal_populations(double s, double omega, double temperature);

// 1 x ... x op x ... x 1 with op acting on factor `site`.
Eigen::MatrixXcd embed(const Eigen::MatrixXcd& op, int site,
                       std::span<const int> dims);

}  // namespace vbdecoh
