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

#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "vbdecoh/constants.hpp"

namespace vbdecoh {

// Debye model of the acoustic phonon bath with two-phonon coupling
// lambda(w, w') = lambda00 (w / wD)^u (w' / wD)^u.
struct PhononParams {
  double omega_debye = 0.175 * constants::electron_volt / constants::hbar;  // rad/s
  double sound_speed = 1.0e4;  // m/s
  double upsilon = 0.375;
  double lambda00 = 0.0;       // rad/s
  // Unit-cell factor A = 3 a0 sin(pi/6), used as a raw number.
  double cell_factor = 3.0 * constants::hbn_bond_length * 0.5;
  double temperature = 300.0;  // K
};

void validate(const PhononParams& p);

enum class RateRegime { LowT, HighT, Quadrature };
std::string_view to_string(RateRegime regime);

struct DephasingResult {
  double gamma = 0.0;  // 1/s
  RateRegime regime = RateRegime::Quadrature;
};

// 2 pi * 8 pi^2 A^2 lambda00^2 / (nu_s^4 wD^(4u)).
double rate_prefactor(const PhononParams& p);

// hbar wD >> kB T: prefactor (kT/hbar)^(4u+3) Gamma(4u+3).
DephasingResult decay_rate_low_T(const PhononParams& p);
// hbar wD << kB T: 2 pi 8 pi^2 A^2 lambda00^2 wD (kT/hbar)^2 / (nu_s^4 (4u+1)).
DephasingResult decay_rate_high_T(const PhononParams& p);
// prefactor (kT/hbar)^(4u+3) J(hbar wD / kT) with J from adaptive quadrature.
DephasingResult decay_rate_quadrature(const PhononParams& p);

// J(X) = int_0^X x^(4u+2) e^x / (e^x - 1)^2 dx, relative error <= 1e-8.
double debye_integral(double upper, double upsilon);

// F(t) = exp[-gamma t - (0.92 t / T2')^6].
double decoherence_function(double t, double gamma, double t2prime);

// Unique t > 0 with F(t) = 1/2.
double combined_T2(double gamma, double t2prime);

struct T2Point {
  double lambda00 = 0.0;
  double gamma = 0.0;
  double t2 = 0.0;
};

// T2 against the two-phonon coupling using the high-temperature rate.
std::vector<T2Point> t2_vs_lambda(PhononParams p, const std::vector<double>& lambdas,
                                  double t2prime);

// Spin-1 pure dephasing master equation in the |ms = +1, 0, -1> basis:
// d rho/dt = -i [D Sz^2 + w Sz, rho]
//            - gamma (Sz^2 rho + rho Sz^2 - 2 Sz^2 rho Sz^2).
struct SpinOneDephasing {
  double gamma = 0.0;   // 1/s
  double D = 0.0;       // rad/s
  double omega = 0.0;   // rad/s
};

Eigen::Matrix3cd dephasing_rhs(const Eigen::Matrix3cd& rho, const SpinOneDephasing& model);

// Adaptive Dormand-Prince integration of the master equation up to time t.
Eigen::Matrix3cd integrate_dephasing(const Eigen::Matrix3cd& rho0,
                                     const SpinOneDephasing& model, double t);

}  // namespace vbdecoh
