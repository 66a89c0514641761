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

#include "vbdecoh/exact_engine.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <numeric>
#include <functional>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "vbdecoh/error.hpp"
#include "vbdecoh/spin_algebra.hpp"

namespace vbdecoh {

namespace {

using Complex = std::complex<double>;
using Factor = std::pair<int, const Eigen::MatrixXcd*>;

// Kronecker chain over all sites; sites without a factor get the identity.
Eigen::MatrixXcd site_product(std::initializer_list<Factor> factors,
                              const std::vector<int>& dims) {
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    const Eigen::MatrixXcd* op = nullptr;
    for (const auto& [site, m] : factors)
      if (site == k) op = m;
    Eigen::MatrixXcd next =
        op ? Eigen::MatrixXcd(Eigen::kroneckerProduct(result, *op))
           : Eigen::MatrixXcd(Eigen::kroneckerProduct(
                 result, Eigen::MatrixXcd::Identity(dims[k], dims[k])));
    result = std::move(next);
  }
  return result;
}

std::vector<SpinOps> site_spin_ops(const CouplingSet& c) {
  std::vector<SpinOps> ops;
  ops.reserve(c.size());
  for (int i = 0; i < c.size(); ++i) ops.push_back(spin_matrices(c.spin(i)));
  return ops;
}

Eigen::MatrixXcd hyperfine_field(const CouplingSet& c,
                                 const std::vector<SpinOps>& ops,
                                 const std::vector<int>& dims) {
  const long dim = static_cast<long>(
      std::accumulate(dims.begin(), dims.end(), 1L, std::multiplies<long>()));
  Eigen::MatrixXcd field = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < c.size(); ++i)
    field += 0.5 * c.g_e(i) * site_product({{i, &ops[i].Iz}}, dims);
  return field;
}

struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

Spectrum diagonalize(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericalError("Hermitian eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXcd propagator(const Spectrum& s, double t) {
  Eigen::VectorXcd phases(s.values.size());
  for (Eigen::Index k = 0; k < s.values.size(); ++k)
    phases(k) = std::exp(Complex(0.0, -s.values(k) * t));
  return s.vectors * phases.asDiagonal() * s.vectors.adjoint();
}

void validate_run(const ExactConfig& cfg) {
  validate_grid(cfg.times);
  if (!(cfg.temperature > 0.0))
    throw ConfigError("temperature", "must be positive");
}

ExactSeries block_series(const ExactConfig& cfg, const CouplingSet& c,
                         const Eigen::MatrixXcd& rho) {
  const auto h = conditional_hamiltonians(c);
  const Spectrum plus = diagonalize(h.plus);
  const Spectrum minus = diagonalize(h.minus);
  ExactSeries out;
  out.coherence.reserve(cfg.times.size());

  if (cfg.protocol == Protocol::FreeInduction) {
    // C(t) = sum_ab exp(-i (l+_a - l-_b) t) (Q+^ rho Q-)_ab (Q-^ Q+)_ba
    const Eigen::MatrixXcd left = plus.vectors.adjoint() * rho * minus.vectors;
    const Eigen::MatrixXcd overlap = minus.vectors.adjoint() * plus.vectors;
    const Eigen::MatrixXcd weights = left.cwiseProduct(overlap.transpose());
    const Eigen::Index n = weights.rows();
    for (double t : cfg.times) {
      Eigen::VectorXcd ep(n), em(n);
      for (Eigen::Index a = 0; a < n; ++a) {
        ep(a) = std::exp(Complex(0.0, -plus.values(a) * t));
        em(a) = std::exp(Complex(0.0, minus.values(a) * t));
      }
      out.coherence.push_back(ep.transpose() * weights * em);
    }
    return out;
  }

  for (double t : cfg.times) {
    const double tau = 0.5 * t;
    const Eigen::MatrixXcd up = propagator(plus, tau);
    const Eigen::MatrixXcd um = propagator(minus, tau);
    const Eigen::MatrixXcd forward = up * um;  // branch ending in |up>
    const Eigen::MatrixXcd backward = um * up;  // branch ending in |down>
    out.coherence.push_back((forward * rho * backward.adjoint()).trace());
  }
  return out;
}

ExactSeries full_space_series(const ExactConfig& cfg, const CouplingSet& c,
                              const Eigen::MatrixXcd& rho_bath) {
  // The electron Zeeman term commutes with the rest; it is applied as exact
  // phases instead of being diagonalized together with the couplings.
  CouplingSet rest = c;
  rest.omega_e = 0.0;
  const Spectrum full = diagonalize(full_hamiltonian(rest));
  const Eigen::Index d = rho_bath.rows();
  auto zeeman = [&](double t) {
    Eigen::VectorXcd z(2 * d);
    z.head(d).setConstant(std::exp(Complex(0.0, -0.5 * c.omega_e * t)));
    z.tail(d).setConstant(std::exp(Complex(0.0, 0.5 * c.omega_e * t)));
    return z;
  };
  auto evolve = [&](double t) -> Eigen::MatrixXcd {
    return zeeman(t).asDiagonal() * propagator(full, t);
  };
  Eigen::Matrix2cd plus_state;
  plus_state << 0.5, 0.5, 0.5, 0.5;
  const Eigen::MatrixXcd rho0 = Eigen::kroneckerProduct(plus_state, rho_bath);
  Eigen::Matrix2cd sigma_x;
  sigma_x << 0.0, 1.0, 1.0, 0.0;
  const Eigen::MatrixXcd pulse = Eigen::kroneckerProduct(
      sigma_x, Eigen::MatrixXcd::Identity(d, d));

  ExactSeries out;
  for (double t : cfg.times) {
    Eigen::MatrixXcd u;
    Complex frame{1.0, 0.0};
    if (cfg.protocol == Protocol::FreeInduction) {
      u = evolve(t);
      frame = std::exp(Complex(0.0, c.omega_e * t));
    } else {
      const Eigen::MatrixXcd half = evolve(0.5 * t);
      u = half * pulse * half;
    }
    const Eigen::MatrixXcd rho = u * rho0 * u.adjoint();
    out.coherence.push_back(2.0 * rho.block(0, d, d, d).trace() * frame);
    out.state_norm.push_back(rho.trace().real());
  }
  return out;
}

}  // namespace

std::vector<int> bath_dimensions(const CouplingSet& c) {
  std::vector<int> dims;
  long total = 1;
  for (int i = 0; i < c.size(); ++i) {
    const int d = static_cast<int>(std::lround(2.0 * c.spin(i))) + 1;
    dims.push_back(d);
    total *= d;
    if (total > kMaxBathDimension)
      throw ResourceError("bath Hilbert space exceeds " +
                          std::to_string(kMaxBathDimension) +
                          " states; use the HPA engine");
  }
  return dims;
}

Eigen::MatrixXcd bath_hamiltonian(const CouplingSet& c) {
  const auto dims = bath_dimensions(c);
  const auto ops = site_spin_ops(c);
  const long dim = static_cast<long>(
      std::accumulate(dims.begin(), dims.end(), 1L, std::multiplies<long>()));
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < c.size(); ++i) {
    if (c.omega_n(i) != 0.0)
      h += c.omega_n(i) * site_product({{i, &ops[i].Iz}}, dims);
    for (int j = i + 1; j < c.size(); ++j) {
      const double g = c.g_nn(i, j);
      if (g == 0.0) continue;
      h += g * site_product({{i, &ops[i].Iz}, {j, &ops[j].Iz}}, dims);
      h -= 0.25 * g * site_product({{i, &ops[i].Iplus}, {j, &ops[j].Iminus}}, dims);
      h -= 0.25 * g * site_product({{i, &ops[i].Iminus}, {j, &ops[j].Iplus}}, dims);
    }
  }
  return h;
}

ConditionalHamiltonians conditional_hamiltonians(const CouplingSet& c) {
  const auto dims = bath_dimensions(c);
  const auto ops = site_spin_ops(c);
  const Eigen::MatrixXcd hb = bath_hamiltonian(c);
  const Eigen::MatrixXcd field = hyperfine_field(c, ops, dims);
  return {hb + field, hb - field};
}

Eigen::MatrixXcd full_hamiltonian(const CouplingSet& c) {
  const auto h = conditional_hamiltonians(c);
  const Eigen::Index d = h.plus.rows();
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  const Eigen::MatrixXcd shift = 0.5 * c.omega_e * Eigen::MatrixXcd::Identity(d, d);
  full.block(0, 0, d, d) = h.plus + shift;
  full.block(d, d, d, d) = h.minus - shift;
  return full;
}

Eigen::MatrixXcd bath_thermal_state(const CouplingSet& c, double temperature) {
  bath_dimensions(c);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(1, 1);
  for (int i = 0; i < c.size(); ++i) {
    Eigen::MatrixXcd next = Eigen::kroneckerProduct(
        rho, thermal_state(c.spin(i), c.omega_n(i), temperature));
    rho = std::move(next);
  }
  return rho;
}

ExactSeries exact_series(const ExactConfig& cfg) {
  validate(cfg.field);
  if (cfg.sites.empty()) throw ConfigError("bath", "no nuclear sites");
  return exact_series(make_couplings(cfg.sites, cfg.field), cfg);
}

ExactSeries exact_series(const CouplingSet& c, const ExactConfig& cfg) {
  validate_run(cfg);
  if (c.size() == 0) throw ConfigError("bath", "no nuclear sites");
  const Eigen::MatrixXcd rho = bath_thermal_state(c, cfg.temperature);
  return cfg.method == ExactMethod::Block ? block_series(cfg, c, rho)
                                          : full_space_series(cfg, c, rho);
}

namespace {

CoherenceTrace to_trace(const ExactConfig& cfg, const ExactSeries& series) {
  CoherenceTrace trace;
  trace.times = cfg.times;
  trace.sx.reserve(series.coherence.size());
  for (const auto& value : series.coherence) trace.sx.push_back(value.real());
  trace.n_samples = 1;
  return trace;
}

}  // namespace

CoherenceTrace coherence_trace(const ExactConfig& cfg) {
  return to_trace(cfg, exact_series(cfg));
}

CoherenceTrace coherence_trace(const CouplingSet& couplings, const ExactConfig& cfg) {
  return to_trace(cfg, exact_series(couplings, cfg));
}

}  // namespace vbdecoh
