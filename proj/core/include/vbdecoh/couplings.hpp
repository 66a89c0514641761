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

#include "vbdecoh/constants.hpp"
#include "vbdecoh/lattice.hpp"

namespace vbdecoh {

struct FieldParams {
  double B = 1.0;                                 // T, along the c axis
  double D = constants::zero_field_splitting;     // rad/s
  double gamma_e = constants::gamma_electron;     // rad s^-1 T^-1
};

void validate(const FieldParams& field);

// Every coefficient is an angular frequency (energy / hbar).
struct CouplingSet {
  Eigen::VectorXd g_e;      // electron-nuclear secular coupling per site
  Eigen::MatrixXd g_nn;     // nuclear-nuclear coupling, symmetric, zero diagonal
  Eigen::VectorXd omega_n;  // nuclear Zeeman frequencies gamma_i * B
  Eigen::VectorXd spin;     // nuclear spin length s_i
  double omega_e = 0.0;     // qubit splitting D - gamma_e * B

  int size() const { return static_cast<int>(g_e.size()); }
};

// mu0 gamma_e gamma_i hbar / (4 pi |r_i|^3).
Eigen::VectorXd hyperfine_couplings(std::span<const Site> sites,
                                    const FieldParams& field);

// mu0 gamma_i gamma_j hbar / (4 pi |r_i - r_j|^3), zero on the diagonal.
Eigen::MatrixXd nuclear_couplings(std::span<const Site> sites);

Eigen::VectorXd zeeman_frequencies(std::span<const Site> sites, double B);

double electron_splitting(const FieldParams& field);

CouplingSet make_couplings(std::span<const Site> sites, const FieldParams& field);

}  // namespace vbdecoh
