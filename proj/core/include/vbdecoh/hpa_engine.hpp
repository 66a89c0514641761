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

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "vbdecoh/coherence_trace.hpp"
#include "vbdecoh/couplings.hpp"
#include "vbdecoh/lattice.hpp"

namespace vbdecoh {

// How the mean-field shift of the bosonic site energies is formed.
//  DerivedMeanField: w~_i = w_i + sum_{j!=i} g_ij (n_j - s_j)
//  Literal:     w~_i = w_i + 1/2 sum_{j!=i} g_ij (n_i - 2 s_j)
enum class ShiftMode { DerivedMeanField, Literal };

std::string_view to_string(ShiftMode mode);
ShiftMode parse_shift_mode(std::string_view text);

struct HpaConfig {
  std::vector<Site> sites;
  FieldParams field;
  double temperature = 0.1;   // K
  std::vector<double> times;  // uniform, starts at 0
  Protocol protocol = Protocol::HahnEcho;
  int n_samples = 100;
  std::uint64_t rng_seed = 20240607;
  double dt = 0.0;  // integration substep in s; <= 0 selects the default
  ShiftMode shift_mode = ShiftMode::DerivedMeanField;
};

struct HpaOptions {
  int workers = 1;            // <= 0: hardware concurrency
  bool keep_samples = false;  // retain per-sample traces
};

struct HpaResult {
  CoherenceTrace trace;
  double dt = 0.0;  // substep actually used
  std::vector<std::vector<double>> samples;  // filled when keep_samples
};

// Covariance Gamma_ij = <a_i^dag a_j> plus the spin lengths of the sites.
struct GaussianBathState {
  Eigen::MatrixXcd gamma;
  Eigen::VectorXd spin;
};

// Independent generator for Monte Carlo sample k.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t k);

// Per-site Boltzmann draw of n in {0, ..., 2 s_i}, p(n) ~ exp(-n hbar w_i / kT).
std::vector<int> sample_occupations(double temperature,
                                    const Eigen::VectorXd& omega_n,
                                    const Eigen::VectorXd& spin,
                                    std::mt19937_64& rng);

Eigen::VectorXd effective_frequencies(const Eigen::VectorXd& occupations,
                                      const CouplingSet& couplings,
                                      ShiftMode mode);
Eigen::VectorXd effective_frequencies(const Eigen::MatrixXcd& gamma,
                                      const CouplingSet& couplings,
                                      ShiftMode mode);

// V_ii = w~_i, V_ij = -1/2 g_ij sqrt(s_i s_j).
Eigen::MatrixXd coefficient_matrix(const Eigen::VectorXd& occupations,
                                   const CouplingSet& couplings, ShiftMode mode);

// One substep with V frozen at the current Gamma:
// Gamma' = exp(-i V dt) Gamma exp(+i V dt).
Eigen::MatrixXcd evolve_covariance(const Eigen::MatrixXcd& gamma,
                                   const CouplingSet& couplings, ShiftMode mode,
                                   double dt);

// Covariance dynamics of one Monte Carlo sample. Gamma = Y diag(n) Y^dag is
// stored through the columns Y e_k of the initially excited sites. Each
// substep is a Strang splitting: half kick with the change of the mean-field
// shift, exact propagation under the static coefficient matrix of t = 0,
// second half kick. Kicks are diagonal phases, so trace and Hermiticity hold
// to rounding.
class GaussianBath {
 public:
  GaussianBath(const CouplingSet& couplings, ShiftMode mode,
               const std::vector<int>& occupations);

  void set_step(double dt);
  // Advances by dt. If `midpoint` is given it receives the site occupations
  // half way through the substep.
  void step(Eigen::VectorXd* midpoint = nullptr);

  const Eigen::VectorXd& occupations() const { return occupations_; }
  Eigen::MatrixXcd covariance() const;
  double excitations() const { return total_; }

 private:
  void kick(double fraction);
  void refresh_occupations(const Eigen::MatrixXd& y, Eigen::VectorXd& out) const;
  void rotate_eigenbasis(const Eigen::VectorXd& cos_t, const Eigen::VectorXd& sin_t);

  const CouplingSet* couplings_;
  ShiftMode mode_;
  Eigen::VectorXd weights_;    // n_k of the excited sites
  Eigen::MatrixXd y_;          // [Re Y | Im Y], N x 2M
  Eigen::MatrixXd z_;          // scratch in the eigenbasis
  Eigen::MatrixXd basis_;      // eigenvectors of the static V
  Eigen::VectorXd levels_;     // eigenvalues of the static V
  Eigen::VectorXd half_cos_, half_sin_;
  Eigen::VectorXd shift0_;     // w~ at t = 0
  Eigen::VectorXd delta_;      // w~(t) - w~(0)
  Eigen::VectorXd occupations_;
  double dt_ = 0.0;
  double total_ = 0.0;
};

// Default substep for a uniform grid with spacing `spacing`: the largest
// dt <= spacing / 2 that divides spacing / 2 and keeps kappa * dt <= 0.05,
// where kappa is the largest nuclear rate of the bath.
double default_substep(const CouplingSet& couplings, double spacing);

HpaResult run_hpa(const HpaConfig& cfg, const HpaOptions& options = {});
// Same with explicit couplings; cfg.sites and cfg.field are ignored.
HpaResult run_hpa(const CouplingSet& couplings, const HpaConfig& cfg,
                  const HpaOptions& options = {});

}  // namespace vbdecoh
