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

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "vbdecoh/error.hpp"
#include "vbdecoh/exact_engine.hpp"
#include "vbdecoh/spin_algebra.hpp"

using namespace vbdecoh;
using cd = std::complex<double>;

namespace {

CouplingSet bare(std::vector<double> spins) {
  const auto n = static_cast<Eigen::Index>(spins.size());
  CouplingSet c;
  c.spin = Eigen::Map<Eigen::VectorXd>(spins.data(), n);
  c.g_e = Eigen::VectorXd::Zero(n);
  c.g_nn = Eigen::MatrixXd::Zero(n, n);
  c.omega_n = Eigen::VectorXd::Zero(n);
  return c;
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end());
  return ev;
}

ExactConfig grid_config(double t_max, int n, Protocol p, ExactMethod m, double T) {
  ExactConfig cfg;
  cfg.times = uniform_grid(t_max, n);
  cfg.protocol = p;
  cfg.method = m;
  cfg.temperature = T;
  return cfg;
}

// Random bath of up to three spins scattered around the vacancy.
CouplingSet random_bath(std::mt19937_64& rng, FieldParams& field) {
  std::uniform_int_distribution<int> count(1, 3), species(0, 1);
  std::uniform_real_distribution<double> radius(1.0, 6.0), angle(0.0, 2 * constants::pi);
  std::uniform_real_distribution<double> b(0.0, 2.0);
  std::vector<Site> sites;
  const int n = count(rng);
  while (static_cast<int>(sites.size()) < n) {
    Site s;
    s.species = species_params(species(rng) ? Species::B11 : Species::N14);
    const double r = radius(rng) * constants::hbn_bond_length, a = angle(rng);
    s.position = {r * std::cos(a), r * std::sin(a)};
    bool clash = false;
    for (const auto& o : sites)
      clash |= (o.position - s.position).norm() < 0.5 * constants::hbn_bond_length;
    if (!clash) sites.push_back(s);
  }
  field.B = b(rng);
  return make_couplings(sites, field);
}

}  // namespace

TEST_CASE("single spin-1/2 bath Hamiltonian") {
  auto c = bare({0.5});
  c.omega_n(0) = 3.0;
  const auto h = bath_hamiltonian(c);
  CHECK(std::abs(h(0, 0) - cd(1.5)) < 1e-15);
  CHECK(std::abs(h(1, 1) - cd(-1.5)) < 1e-15);
  CHECK(std::abs(h(0, 1)) == 0.0);
}

TEST_CASE("two coupled spin-1/2 match a 4x4 diagonalization") {
  const double g = 2.7;
  auto c = bare({0.5, 0.5});
  c.g_nn(0, 1) = c.g_nn(1, 0) = g;
  // Basis uu, ud, du, dd written out by hand.
  Eigen::Matrix4cd oracle = Eigen::Matrix4cd::Zero();
  oracle(0, 0) = g / 4;
  oracle(1, 1) = -g / 4;
  oracle(2, 2) = -g / 4;
  oracle(3, 3) = g / 4;
  oracle(1, 2) = oracle(2, 1) = -g / 4;
  const auto expected = sorted_eigenvalues(oracle);
  const auto got = sorted_eigenvalues(bath_hamiltonian(c));
  REQUIRE(got.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(got[k] == doctest::Approx(expected[k]).epsilon(1e-14));
  CHECK(expected[0] == doctest::Approx(-g / 2));
  // Without couplings the Hamiltonian is diagonal.
  c.g_nn.setZero();
  c.omega_n << 1.0, 2.0;
  const auto h = bath_hamiltonian(c);
  CHECK((h - Eigen::MatrixXcd(h.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("conditional Hamiltonians") {
  auto c = bare({0.5});
  c.omega_n(0) = 0.7;
  c.g_e(0) = 2.0;
  const auto h = conditional_hamiltonians(c);
  const auto iz = spin_matrices(0.5).Iz;
  CHECK((h.plus - (0.7 + 1.0) * iz).norm() < 1e-15);
  CHECK((h.minus - (0.7 - 1.0) * iz).norm() < 1e-15);
  c.g_e.setZero();
  const auto h0 = conditional_hamiltonians(c);
  CHECK((h0.plus - h0.minus).norm() == 0.0);
}

TEST_CASE("block spectra equal the full Hamiltonian spectrum") {
  FieldParams field;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = random_bath(rng, field);
    const auto h = conditional_hamiltonians(c);
    std::vector<double> blocks;
    for (double e : sorted_eigenvalues(h.plus)) blocks.push_back(e + 0.5 * c.omega_e);
    for (double e : sorted_eigenvalues(h.minus)) blocks.push_back(e - 0.5 * c.omega_e);
    std::sort(blocks.begin(), blocks.end());
    const auto full = sorted_eigenvalues(full_hamiltonian(c));
    REQUIRE(full.size() == blocks.size());
    for (std::size_t k = 0; k < full.size(); ++k)
      CHECK(full[k] == doctest::Approx(blocks[k]).epsilon(1e-12).scale(std::abs(c.omega_e)));
  }
}

TEST_CASE("infinite-temperature single nucleus FID is cos(g t / 2)") {
  const double g = 2.0e6;
  auto c = bare({0.5});
  c.g_e(0) = g;
  for (auto method : {ExactMethod::Block, ExactMethod::FullSpace}) {
    const auto cfg = grid_config(1e-5, 101, Protocol::FreeInduction, method, 1e6);
    const auto trace = coherence_trace(c, cfg);
    for (std::size_t k = 0; k < trace.size(); ++k) {
      const double t = trace.times[k];
      const double oracle = 0.5 * std::abs(std::exp(cd(0, -g * t / 2)) + std::exp(cd(0, g * t / 2)));
      CHECK(std::abs(std::abs(trace.sx[k]) - oracle) < 1e-10);
      CHECK(std::abs(trace.sx[k] - std::cos(g * t / 2)) < 1e-10);
    }
  }
}

TEST_CASE("Ising bath FID equals the product formula") {
  const auto sites = standard_bath("fig1-n-ring1");
  FieldParams field;
  auto c = make_couplings(sites, field);
  c.g_nn.setZero();
  const double T = 1e-4;
  for (auto method : {ExactMethod::Block, ExactMethod::FullSpace}) {
    const auto cfg = grid_config(2e-6, 81, Protocol::FreeInduction, method, T);
    const auto series = exact_series(c, cfg);
    for (std::size_t k = 0; k < cfg.times.size(); ++k) {
      const double t = cfg.times[k];
      cd product = 1.0;
      for (int i = 0; i < c.size(); ++i) {
        const auto p = thermal_populations(c.spin(i), c.omega_n(i), T);
        cd sum = 0.0;
        for (int j = 0; j < p.size(); ++j) {
          const double m = c.spin(i) - j;
          sum += p(j) * std::exp(cd(0, -c.g_e(i) * m * t));
        }
        product *= sum;
      }
      CHECK(std::abs(std::abs(series.coherence[k]) - std::abs(product)) < 1e-10);
    }
  }
}

TEST_CASE("Ising bath echo is perfect and the high-temperature FID is real") {
  auto c = make_couplings(standard_bath("fig1-b-ring2"), FieldParams{});
  c.g_nn.setZero();
  for (auto method : {ExactMethod::Block, ExactMethod::FullSpace}) {
    const auto echo = exact_series(c, grid_config(4e-6, 41, Protocol::HahnEcho, method, 0.01));
    for (const auto& v : echo.coherence) CHECK(std::abs(v - cd(1.0)) < 1e-10);
    const auto fid = exact_series(c, grid_config(4e-6, 41, Protocol::FreeInduction, method, 1e9));
    for (const auto& v : fid.coherence) CHECK(std::abs(v.imag()) < 1e-10);
  }
}

TEST_CASE("FullSpace and Block agree on random small baths") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> logT(-4.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    FieldParams field;
    const auto c = random_bath(rng, field);
    const double T = std::pow(10.0, logT(rng));
    const auto protocol = trial % 2 ? Protocol::HahnEcho : Protocol::FreeInduction;
    const double t_max = 20.0 / c.g_e.maxCoeff();
    const auto block = exact_series(c, grid_config(t_max, 41, protocol, ExactMethod::Block, T));
    const auto full =
        exact_series(c, grid_config(t_max, 41, protocol, ExactMethod::FullSpace, T));
    REQUIRE(block.coherence.size() == full.coherence.size());
    for (std::size_t k = 0; k < block.coherence.size(); ++k)
      CHECK(std::abs(block.coherence[k] - full.coherence[k]) < 1e-10);
    REQUIRE(full.state_norm.size() == full.coherence.size());
    for (double norm : full.state_norm) CHECK(std::abs(norm - 1.0) < 1e-9);
    CHECK(std::abs(block.coherence[0] - cd(1.0)) < 1e-9);
  }
}

TEST_CASE("ring-1 nitrogens collapse and revive") {
  ExactConfig cfg = grid_config(2.5e-6, 501, Protocol::FreeInduction, ExactMethod::Block, 0.1);
  cfg.sites = standard_bath("fig1-n-ring1");
  const auto trace = coherence_trace(cfg);
  double low = 1.0, revival = 0.0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (trace.times[k] < 0.4e-6) low = std::min(low, std::abs(trace.sx[k]));
    if (trace.times[k] > 0.9e-6) revival = std::max(revival, std::abs(trace.sx[k]));
  }
  CHECK(low < 0.1);
  CHECK(revival > 0.8);
}

TEST_CASE("guards") {
  ExactConfig cfg = grid_config(1e-6, 11, Protocol::FreeInduction, ExactMethod::Block, 0.1);
  LatticeSpec spec;
  spec.selection = SpeciesCounts{7, 0};
  cfg.sites = build_lattice(spec);
  CHECK_THROWS_AS(exact_series(cfg), ResourceError);
  cfg.sites = standard_bath("fig1-n-ring1");
  cfg.temperature = 0.0;
  CHECK_THROWS_AS(exact_series(cfg), ConfigError);
  cfg.temperature = 0.1;
  cfg.times = {0.0, 2e-7, 1e-7};
  CHECK_THROWS_AS(exact_series(cfg), ConfigError);
}
