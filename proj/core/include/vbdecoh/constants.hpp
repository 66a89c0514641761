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

#include <numbers>

namespace vbdecoh::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_boltzmann = 1.380649e-23;   // J / K
inline constexpr double electron_volt = 1.602176634e-19;  // J
inline constexpr double mu0_over_4pi = 1.0e-7;        // N / A^2

// Gyromagnetic ratios in rad s^-1 T^-1.
inline constexpr double gamma_b11 = two_pi * 13.66e6;
inline constexpr double gamma_n14 = two_pi * 3.078e6;
inline constexpr double gamma_electron = two_pi * 28.0249e9;

// V_B^- ground state zero-field splitting, rad/s.
inline constexpr double zero_field_splitting = two_pi * 3.5e9;

// hBN B-N bond length used as the lattice constant, m.
inline constexpr double hbn_bond_length = 1.5e-10;

}  // namespace vbdecoh::constants
