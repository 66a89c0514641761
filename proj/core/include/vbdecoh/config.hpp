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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vbdecoh/coherence_trace.hpp"
#include "vbdecoh/couplings.hpp"
#include "vbdecoh/exact_engine.hpp"
#include "vbdecoh/hpa_engine.hpp"
#include "vbdecoh/lattice.hpp"
#include "vbdecoh/phonon.hpp"

namespace vbdecoh {

enum class Engine { Exact, Hpa, Phonon, Combine };
std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view text);

// Everything a run needs. Parsed from a flat `key = value` file; see
// README.md for the key list.
struct RunConfig {
  Engine engine = Engine::Hpa;

  // Nuclear bath: a preset name, or "lattice" with either `rings` or the
  // pair `n_boron` / `n_nitrogen`.
  std::string bath = "fig2-30";
  int rings = 0;
  int n_boron = 0;
  int n_nitrogen = 0;
  double bond_length = constants::hbn_bond_length;

  FieldParams field;
  double temperature = 0.1;
  Protocol protocol = Protocol::HahnEcho;
  double t_max = 80e-6;
  int n_points = 81;

  int n_samples = 100;
  std::uint64_t seed = 20240607;
  double dt = 0.0;
  ShiftMode shift_mode = ShiftMode::DerivedMeanField;
  ExactMethod method = ExactMethod::Block;

  PhononParams phonon;
  double lambda_min = 1e4;
  double lambda_max = 1e12;
  int lambda_points = 81;

  // Combine inputs: inline numbers or paths to earlier run directories.
  std::optional<double> gamma;
  std::optional<double> t2prime;
  std::string gamma_from;
  std::string t2prime_from;

  std::string output = "vbdecoh-out";
};

// Strict parser: '#' starts a comment, every other non-blank line must be
// `key = value` with a known key given at most once. Errors name the key.
// With `check` the result is validated before it is returned.
RunConfig parse_config(std::istream& in, bool check = true);
RunConfig load_config(const std::filesystem::path& path, bool check = true);

// Assigns one key; throws ConfigError for unknown keys or bad values.
void set_option(RunConfig& cfg, std::string_view key, std::string_view value);

// Range checks shared by all engines.
void validate(const RunConfig& cfg);

// Fully resolved config, one key per line, numbers in shortest round-trip
// form, followed by the library version.
void write_manifest(std::ostream& out, const RunConfig& cfg);

std::span<const std::string_view> config_keys();
std::string_view library_version();

std::vector<Site> resolve_sites(const RunConfig& cfg);
std::vector<double> lambda_grid(const RunConfig& cfg);

}  // namespace vbdecoh
