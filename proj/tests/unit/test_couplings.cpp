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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "vbdecoh/couplings.hpp"
#include "vbdecoh/error.hpp"

using namespace vbdecoh;

// Reference numbers evaluated separately from mu0/(4 pi) * gamma_1 gamma_2
// hbar / r^3 with CODATA hbar and a0 = 1.5e-10 m.
constexpr double kHyperfineN1 = 1.0640812912e7;  // nitrogen at a0
constexpr double kHyperfineB2 = 9.0881400131e6;  // boron at sqrt(3) a0
constexpr double kBoronPair = 4.4297746854e3;    // two borons sqrt(3) a0 apart
constexpr double kNitrogenPair = 2.2491450747e2;
constexpr double kMixedPair = 5.1865842297e3;    // B-N bond

TEST_CASE("hyperfine couplings") {
  const auto ring1 = standard_bath("fig1-n-ring1");
  const auto g = hyperfine_couplings(ring1, FieldParams{});
  for (int i = 0; i < 3; ++i) CHECK(g(i) == doctest::Approx(kHyperfineN1).epsilon(1e-9));
  const auto ring2 = standard_bath("fig1-b-ring2");
  const auto gb = hyperfine_couplings(ring2, FieldParams{});
  for (int i = 0; i < 3; ++i) CHECK(gb(i) == doctest::Approx(kHyperfineB2).epsilon(1e-9));
  // Roughly 1.69 MHz for the nearest nitrogen.
  CHECK(kHyperfineN1 / (2 * constants::pi) == doctest::Approx(1.6935e6).epsilon(1e-4));
}

TEST_CASE("nuclear pair couplings") {
  Site b1, b2, n1;
  b1.species = species_params(Species::B11);
  b2.species = species_params(Species::B11);
  n1.species = species_params(Species::N14);
  const double a0 = constants::hbn_bond_length;
  b1.position = {std::sqrt(3.0) * a0, 0.0};
  b2.position = {std::sqrt(3.0) / 2 * a0, 1.5 * a0};
  n1.position = {std::sqrt(3.0) * a0, a0};
  const std::vector<Site> sites{b1, b2, n1};
  const auto g = nuclear_couplings(sites);
  CHECK(g(0, 1) == doctest::Approx(kBoronPair).epsilon(1e-9));
  CHECK(g(0, 2) == doctest::Approx(kMixedPair).epsilon(1e-9));
  CHECK((g - g.transpose()).norm() == 0.0);
  for (int i = 0; i < 3; ++i) CHECK(g(i, i) == 0.0);

  Site n2 = n1;
  n2.position += Eigen::Vector2d(std::sqrt(3.0) * a0, 0.0);
  const std::vector<Site> nn{n1, n2};
  CHECK(nuclear_couplings(nn)(0, 1) == doctest::Approx(kNitrogenPair).epsilon(1e-9));
}

TEST_CASE("Zeeman and electron splitting") {
  const auto sites = standard_bath("fig1-b-ring2");
  const auto w = zeeman_frequencies(sites, 1.0);
  CHECK(w(0) == doctest::Approx(2 * constants::pi * 13.66e6));
  CHECK(zeeman_frequencies(sites, 0.0).norm() == 0.0);
  FieldParams f;
  f.B = 0.1;
  CHECK(electron_splitting(f) ==
        doctest::Approx(2 * constants::pi * 3.5e9 - 2 * constants::pi * 28.0249e9 * 0.1));
  const auto c = make_couplings(sites, f);
  CHECK(c.size() == 3);
  CHECK(c.spin(0) == 1.5);
  CHECK(c.omega_e == doctest::Approx(electron_splitting(f)));
}

TEST_CASE("coupling errors") {
  Site a;
  a.position = {0.0, 0.0};
  const std::vector<Site> at_vacancy{a};
  CHECK_THROWS_AS(hyperfine_couplings(at_vacancy, FieldParams{}), SingularityError);
  Site b, c;
  b.position = c.position = {1e-10, 0.0};
  const std::vector<Site> overlap{b, c};
  CHECK_THROWS_AS(nuclear_couplings(overlap), SingularityError);
  FieldParams bad;
  bad.B = -1.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
}
