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

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "vbdecoh/constants.hpp"

namespace vbdecoh {

enum class Species { N14, B11 };

struct SpeciesParams {
  Species label;
  double spin;   // nuclear spin quantum number s
  double gamma;  // rad s^-1 T^-1
};

SpeciesParams species_params(Species label);
std::string_view to_string(Species label);

struct Site {
  int index = 0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();  // m, vacancy at origin
  SpeciesParams species{Species::N14, 1.0, constants::gamma_n14};
  int ring = 0;  // 1-based distance shell around the vacancy

  double distance() const { return position.norm(); }
};

struct RingCount {
  int rings = 1;
};

struct SpeciesCounts {
  int n_boron = 0;
  int n_nitrogen = 0;
};

struct LatticeSpec {
  double bond_length = constants::hbn_bond_length;
  std::variant<RingCount, SpeciesCounts> selection = RingCount{1};
  // Radius of the generated patch in metres. When unset the patch grows until
  // the selection fits; when set, a selection that does not fit throws
  // LatticeExtentError.
  std::optional<double> generation_radius;
};

// Monolayer honeycomb around a boron vacancy at the origin. Sites are ordered
// by (distance, polar angle in [0, 2pi)) and re-indexed from zero.
std::vector<Site> build_lattice(const LatticeSpec& spec);

// Summary of one distance shell of the infinite lattice.
struct RingInfo {
  int ring = 0;
  double distance = 0.0;  // m
  Species species = Species::N14;
  int multiplicity = 0;
};

std::vector<RingInfo> ring_table(int n_rings,
                                 double bond_length = constants::hbn_bond_length);

// Named baths: fig1-n-ring1, fig1-n-ring7, fig1-b-ring2, fig1-b-ring5,
// fig2-30, fig3-240.
std::vector<Site> standard_bath(std::string_view name);
std::span<const std::string_view> standard_bath_names();

}  // namespace vbdecoh
