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

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "vbdecoh/coherence_trace.hpp"
#include "vbdecoh/couplings.hpp"
#include "vbdecoh/lattice.hpp"

namespace vbdecoh {

enum class ExactMethod { FullSpace, Block };

// Largest bath Hilbert space (product of 2 s_i + 1) the engine will build.
inline constexpr long kMaxBathDimension = 10000;

struct ExactConfig {
  std::vector<Site> sites;
  FieldParams field;
  double temperature = 0.1;   // K
  std::vector<double> times;  // s, starts at 0
  Protocol protocol = Protocol::FreeInduction;
  ExactMethod method = ExactMethod::Block;
};

// Local dimensions 2 s_i + 1; throws ResourceError beyond kMaxBathDimension.
std::vector<int> bath_dimensions(const CouplingSet& couplings);

// H_B = sum_i w_i Iz_i + sum_{i<j} g_ij [Iz_i Iz_j - (I+_i I-_j + I-_i I+_j)/4]
Eigen::MatrixXcd bath_hamiltonian(const CouplingSet& couplings);

// Bath Hamiltonians conditioned on sigma_z = +1 / -1:
// H+- = H_B +- (1/2) sum_i g_e[i] Iz_i.
struct ConditionalHamiltonians {
  Eigen::MatrixXcd plus;
  Eigen::MatrixXcd minus;
};
ConditionalHamiltonians conditional_hamiltonians(const CouplingSet& couplings);

// Qubit (x) bath Hamiltonian with the qubit factor first, |up> = index 0:
// (w/2) sigma_z + H_B + (1/2) sum_i g_e[i] sigma_z Iz_i.
Eigen::MatrixXcd full_hamiltonian(const CouplingSet& couplings);

// Product of single-spin Zeeman thermal states.
Eigen::MatrixXcd bath_thermal_state(const CouplingSet& couplings, double temperature);

// Complex rotating-frame coherence C(t) = 2 rho_{up,down}(t) e^{i w t}; the
// reported <sigma_x> is Re C. state_norm holds Tr rho(t) for FullSpace runs
// and is empty for Block runs.
struct ExactSeries {
  std::vector<std::complex<double>> coherence;
  std::vector<double> state_norm;
};

ExactSeries exact_series(const ExactConfig& cfg);
CoherenceTrace coherence_trace(const ExactConfig& cfg);

// Same with explicit couplings; cfg.sites and cfg.field are ignored.
ExactSeries exact_series(const CouplingSet& couplings, const ExactConfig& cfg);
CoherenceTrace coherence_trace(const CouplingSet& couplings, const ExactConfig& cfg);

}  // namespace vbdecoh
