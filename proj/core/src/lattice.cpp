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

#include "vbdecoh/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "vbdecoh/error.hpp"

namespace vbdecoh {

SpeciesParams species_params(Species label) {
  switch (label) {
    case Species::N14:
      return {Species::N14, 1.0, constants::gamma_n14};
    case Species::B11:
      return {Species::B11, 1.5, constants::gamma_b11};
  }
  throw DomainError("unknown species");
}

std::string_view to_string(Species label) {
  return label == Species::N14 ? "N14" : "B11";
}

namespace {

// A site of the infinite lattice in integer coordinates. Borons sit at
// n1*a1 + n2*a2 with a1 = a0 (sqrt3, 0), a2 = a0 (sqrt3/2, 3/2); nitrogens are
// shifted by (0, a0). key = 4 |r|^2 / a0^2 is an exact integer.
struct RawSite {
  std::int64_t key;
  double angle;
  Eigen::Vector2d position;
  Species species;
  int ring = 0;
};

bool closer(const RawSite& a, const RawSite& b) {
  if (a.key != b.key) return a.key < b.key;
  return a.angle < b.angle;
}

std::vector<RawSite> generate_patch(double a0, double radius) {
  const double r_units = radius / a0;
  // Parallelogram half-width large enough to cover the disk.
  const int half = static_cast<int>(std::ceil(r_units / 1.5)) + 2;
  const std::int64_t key_max =
      static_cast<std::int64_t>(std::floor(4.0 * r_units * r_units + 1e-9));
  const double sqrt3 = std::sqrt(3.0);

  std::vector<RawSite> sites;
  for (int n1 = -2 * half; n1 <= 2 * half; ++n1) {
    for (int n2 = -half; n2 <= half; ++n2) {
      for (int shift = 0; shift <= 1; ++shift) {
        const std::int64_t u = 2 * n1 + n2;
        const std::int64_t v = 3 * n2 + 2 * shift;
        const std::int64_t key = 3 * u * u + v * v;
        if (key == 0 || key > key_max) continue;
        RawSite s;
        s.key = key;
        s.position = Eigen::Vector2d(a0 * 0.5 * sqrt3 * static_cast<double>(u),
                                     a0 * 0.5 * static_cast<double>(v));
        double angle = std::atan2(s.position.y(), s.position.x());
        if (angle < 0.0) angle += constants::two_pi;
        s.angle = angle;
        s.species = shift == 1 ? Species::N14 : Species::B11;
        sites.push_back(s);
      }
    }
  }
  std::sort(sites.begin(), sites.end(), closer);
  int ring = 0;
  std::int64_t last = -1;
  for (auto& s : sites) {
    if (s.key != last) {
      ++ring;
      last = s.key;
    }
    s.ring = ring;
  }
  return sites;
}

std::vector<Site> finalize(std::vector<RawSite> chosen) {
  std::sort(chosen.begin(), chosen.end(), closer);
  std::vector<Site> out;
  out.reserve(chosen.size());
  for (const auto& raw : chosen) {
    Site s;
    s.index = static_cast<int>(out.size());
    s.position = raw.position;
    s.species = species_params(raw.species);
    s.ring = raw.ring;
    out.push_back(s);
  }
  return out;
}

// Returns std::nullopt when the patch is too small for the selection.
std::optional<std::vector<RawSite>> select(const std::vector<RawSite>& patch,
                                           const LatticeSpec& spec) {
  if (const auto* rc = std::get_if<RingCount>(&spec.selection)) {
    if (patch.empty() || patch.back().ring < rc->rings) return std::nullopt;
    std::vector<RawSite> chosen;
    for (const auto& s : patch)
      if (s.ring <= rc->rings) chosen.push_back(s);
    return chosen;
  }
  const auto& counts = std::get<SpeciesCounts>(spec.selection);
  std::vector<RawSite> chosen;
  int nb = 0, nn = 0;
  for (const auto& s : patch) {
    if (s.species == Species::B11 && nb < counts.n_boron) {
      chosen.push_back(s);
      ++nb;
    } else if (s.species == Species::N14 && nn < counts.n_nitrogen) {
      chosen.push_back(s);
      ++nn;
    }
  }
  if (nb < counts.n_boron || nn < counts.n_nitrogen) return std::nullopt;
  return chosen;
}

void validate(const LatticeSpec& spec) {
  if (!(spec.bond_length > 0.0))
    throw ConfigError("bond_length", "must be positive");
  if (const auto* rc = std::get_if<RingCount>(&spec.selection)) {
    if (rc->rings < 1) throw ConfigError("rings", "must be >= 1");
  } else {
    const auto& c = std::get<SpeciesCounts>(spec.selection);
    if (c.n_boron < 0 || c.n_nitrogen < 0)
      throw ConfigError("n_boron/n_nitrogen", "counts must be non-negative");
    if (c.n_boron + c.n_nitrogen == 0)
      throw ConfigError("n_boron/n_nitrogen", "selection is empty");
  }
  if (spec.generation_radius && !(*spec.generation_radius > 0.0))
    throw ConfigError("generation_radius", "must be positive");
}

}  // namespace

std::vector<Site> build_lattice(const LatticeSpec& spec) {
  validate(spec);
  const double a0 = spec.bond_length;
  if (spec.generation_radius) {
    auto chosen = select(generate_patch(a0, *spec.generation_radius), spec);
    if (!chosen)
      throw LatticeExtentError(
          "insufficient lattice extent: enlarge the generation radius");
    return finalize(std::move(*chosen));
  }
  for (double radius = 4.0 * a0; radius <= 2048.0 * a0; radius *= 2.0) {
    if (auto chosen = select(generate_patch(a0, radius), spec))
      return finalize(std::move(*chosen));
  }
  throw LatticeExtentError("insufficient lattice extent: selection too large");
}

std::vector<RingInfo> ring_table(int n_rings, double bond_length) {
  const auto sites = build_lattice({bond_length, RingCount{n_rings}, std::nullopt});
  std::vector<RingInfo> rings;
  for (const auto& s : sites) {
    if (rings.empty() || rings.back().ring != s.ring)
      rings.push_back({s.ring, s.distance(), s.species.label, 0});
    ++rings.back().multiplicity;
  }
  return rings;
}

namespace {

constexpr std::array<std::string_view, 6> kBathNames = {
    "fig1-n-ring1", "fig1-n-ring7", "fig1-b-ring2",
    "fig1-b-ring5", "fig2-30",      "fig3-240"};

// Three sites of one ring forming a C3 orbit: every other site in angle order.
std::vector<Site> ring_triplet(int ring, Species expected) {
  const auto all = build_lattice({constants::hbn_bond_length, RingCount{ring}, std::nullopt});
  std::vector<Site> in_ring;
  for (const auto& s : all)
    if (s.ring == ring) in_ring.push_back(s);
  if (in_ring.empty() || in_ring.front().species.label != expected)
    throw DomainError("ring " + std::to_string(ring) + " has unexpected species");
  const std::size_t stride = in_ring.size() / 3;
  std::vector<Site> out;
  for (std::size_t k = 0; k < 3; ++k) {
    Site s = in_ring[k * stride];
    s.index = static_cast<int>(k);
    out.push_back(s);
  }
  return out;
}

}  // namespace

std::span<const std::string_view> standard_bath_names() { return kBathNames; }

std::vector<Site> standard_bath(std::string_view name) {
  if (name == "fig1-n-ring1") return ring_triplet(1, Species::N14);
  if (name == "fig1-n-ring7") return ring_triplet(7, Species::N14);
  if (name == "fig1-b-ring2") return ring_triplet(2, Species::B11);
  if (name == "fig1-b-ring5") return ring_triplet(5, Species::B11);
  if (name == "fig2-30")
    return build_lattice({constants::hbn_bond_length, RingCount{6}, std::nullopt});
  if (name == "fig3-240")
    return build_lattice(
        {constants::hbn_bond_length, SpeciesCounts{120, 120}, std::nullopt});
  throw ConfigError("bath", "unknown preset '" + std::string(name) + "'");
}

}  // namespace vbdecoh
