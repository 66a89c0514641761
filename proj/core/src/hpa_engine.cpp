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

#include "vbdecoh/hpa_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

#include "vbdecoh/constants.hpp"
#include "vbdecoh/error.hpp"

namespace vbdecoh {

std::string_view to_string(ShiftMode mode) {
  return mode == ShiftMode::Literal ? "literal" : "derived";
}

ShiftMode parse_shift_mode(std::string_view text) {
  if (text == "derived") return ShiftMode::DerivedMeanField;
  if (text == "literal") return ShiftMode::Literal;
  throw ConfigError("shift_mode", "expected 'derived' or 'literal', got '" +
                                      std::string(text) + "'");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t k) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(~k)));
}

std::vector<int> sample_occupations(double temperature,
                                    const Eigen::VectorXd& omega_n,
                                    const Eigen::VectorXd& spin,
                                    std::mt19937_64& rng) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  std::vector<int> n(static_cast<std::size_t>(omega_n.size()), 0);
  for (Eigen::Index i = 0; i < omega_n.size(); ++i) {
    const int levels = static_cast<int>(std::lround(2.0 * spin(i))) + 1;
    const double x =
        constants::hbar * omega_n(i) / (constants::k_boltzmann * temperature);
    double norm = 0.0;
    for (int k = 0; k < levels; ++k) norm += std::exp(-x * k);
    const double u = uniform01(rng) * norm;
    double cumulative = 0.0;
    int draw = levels - 1;
    for (int k = 0; k < levels; ++k) {
      cumulative += std::exp(-x * k);
      if (u < cumulative) {
        draw = k;
        break;
      }
    }
    n[static_cast<std::size_t>(i)] = draw;
  }
  return n;
}

Eigen::VectorXd effective_frequencies(const Eigen::VectorXd& occupations,
                                      const CouplingSet& c, ShiftMode mode) {
  if (mode == ShiftMode::DerivedMeanField)
    return c.omega_n + c.g_nn * (occupations - c.spin);
  const Eigen::VectorXd row_sum = c.g_nn.rowwise().sum();
  return c.omega_n + 0.5 * row_sum.cwiseProduct(occupations) - c.g_nn * c.spin;
}

Eigen::VectorXd effective_frequencies(const Eigen::MatrixXcd& gamma,
                                      const CouplingSet& c, ShiftMode mode) {
  return effective_frequencies(Eigen::VectorXd(gamma.diagonal().real()), c, mode);
}

Eigen::MatrixXd coefficient_matrix(const Eigen::VectorXd& occupations,
                                   const CouplingSet& c, ShiftMode mode) {
  const Eigen::VectorXd root_s = c.spin.cwiseSqrt();
  Eigen::MatrixXd v = -0.5 * root_s.asDiagonal() * c.g_nn * root_s.asDiagonal();
  v.diagonal() = effective_frequencies(occupations, c, mode);
  return v;
}

Eigen::MatrixXcd evolve_covariance(const Eigen::MatrixXcd& gamma,
                                   const CouplingSet& c, ShiftMode mode,
                                   double dt) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  const Eigen::MatrixXd v =
      coefficient_matrix(Eigen::VectorXd(gamma.diagonal().real()), c, mode);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(v);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigendecomposition of V failed");
  Eigen::VectorXcd phases(v.rows());
  for (Eigen::Index k = 0; k < v.rows(); ++k)
    phases(k) = std::polar(1.0, -solver.eigenvalues()(k) * dt);
  const Eigen::MatrixXcd q = solver.eigenvectors().cast<std::complex<double>>();
  const Eigen::MatrixXcd u = q * phases.asDiagonal() * q.transpose();
  return u * gamma * u.adjoint();
}

GaussianBath::GaussianBath(const CouplingSet& couplings, ShiftMode mode,
                           const std::vector<int>& occupations)
    : couplings_(&couplings), mode_(mode) {
  const Eigen::Index n = couplings.size();
  if (static_cast<Eigen::Index>(occupations.size()) != n)
    throw ShapeError("occupation vector does not match the bath size");
  occupations_.resize(n);
  std::vector<Eigen::Index> excited;
  for (Eigen::Index i = 0; i < n; ++i) {
    occupations_(i) = occupations[static_cast<std::size_t>(i)];
    if (occupations[static_cast<std::size_t>(i)] > 0) excited.push_back(i);
  }
  total_ = occupations_.sum();
  shift0_ = effective_frequencies(occupations_, couplings, mode);
  delta_ = Eigen::VectorXd::Zero(n);

  const auto m = static_cast<Eigen::Index>(excited.size());
  weights_.resize(m);
  y_ = Eigen::MatrixXd::Zero(n, 2 * m);
  for (Eigen::Index k = 0; k < m; ++k) {
    weights_(k) = occupations_(excited[k]);
    y_(excited[k], k) = 1.0;
  }
  if (m == 0) return;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      coefficient_matrix(occupations_, couplings, mode));
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigendecomposition of V failed");
  basis_ = solver.eigenvectors();
  levels_ = solver.eigenvalues();
}

void GaussianBath::set_step(double dt) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  dt_ = dt;
  half_cos_ = (levels_ * (0.5 * dt)).array().cos();
  half_sin_ = (levels_ * (0.5 * dt)).array().sin();
}

void GaussianBath::kick(double fraction) {
  const Eigen::Index m = weights_.size();
  const Eigen::ArrayXd theta = -delta_.array() * (dt_ * fraction);
  const Eigen::ArrayXd c = theta.cos();
  const Eigen::ArrayXd s = theta.sin();
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::ArrayXd re = y_.col(k).array();
    const Eigen::ArrayXd im = y_.col(m + k).array();
    y_.col(k).array() = c * re - s * im;
    y_.col(m + k).array() = s * re + c * im;
  }
}

void GaussianBath::rotate_eigenbasis(const Eigen::VectorXd& cos_t,
                                     const Eigen::VectorXd& sin_t) {
  // z <- exp(-i lambda tau) z
  const Eigen::Index m = weights_.size();
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::ArrayXd re = z_.col(k).array();
    const Eigen::ArrayXd im = z_.col(m + k).array();
    z_.col(k).array() = cos_t.array() * re + sin_t.array() * im;
    z_.col(m + k).array() = cos_t.array() * im - sin_t.array() * re;
  }
}

void GaussianBath::refresh_occupations(const Eigen::MatrixXd& y,
                                       Eigen::VectorXd& out) const {
  const Eigen::Index m = weights_.size();
  out = (y.leftCols(m).array().square() + y.rightCols(m).array().square())
            .matrix() *
        weights_;
}

void GaussianBath::step(Eigen::VectorXd* midpoint) {
  if (weights_.size() == 0) {
    if (midpoint) *midpoint = occupations_;
    return;
  }
  if (!(dt_ > 0.0)) throw DomainError("set_step must be called before step");
  kick(0.5);
  z_.noalias() = basis_.transpose() * y_;
  rotate_eigenbasis(half_cos_, half_sin_);
  if (midpoint) {
    y_.noalias() = basis_ * z_;
    refresh_occupations(y_, *midpoint);
  }
  rotate_eigenbasis(half_cos_, half_sin_);
  y_.noalias() = basis_ * z_;
  refresh_occupations(y_, occupations_);
  delta_ = effective_frequencies(occupations_, *couplings_, mode_) - shift0_;
  kick(0.5);
}

Eigen::MatrixXcd GaussianBath::covariance() const {
  const Eigen::Index n = occupations_.size();
  const Eigen::Index m = weights_.size();
  if (m == 0) return Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd y(n, m);
  y.real() = y_.leftCols(m);
  y.imag() = y_.rightCols(m);
  return y * weights_.cast<std::complex<double>>().asDiagonal() * y.adjoint();
}

double default_substep(const CouplingSet& c, double spacing) {
  const double half = 0.5 * spacing;
  const double kappa = (c.g_nn * c.spin).maxCoeff();
  if (!(kappa > 0.0)) return half;
  const double target = 0.05 / kappa;
  const double pieces = std::max(1.0, std::ceil(half / target - 1e-9));
  return half / pieces;
}

namespace {

struct Schedule {
  double dt = 0.0;
  int substeps = 1;   // per half grid spacing
  int half_steps = 0;  // number of half spacings to cover t_max
};

Schedule make_schedule(const HpaConfig& cfg, const CouplingSet& c) {
  const auto& t = cfg.times;
  const double spacing = t.back() / static_cast<double>(t.size() - 1);
  for (std::size_t k = 0; k < t.size(); ++k)
    if (std::abs(t[k] - k * spacing) > 1e-9 * t.back())
      throw ConfigError("times", "HPA engine needs a uniform grid");
  Schedule s;
  s.half_steps = 2 * static_cast<int>(t.size() - 1);
  const double half = 0.5 * spacing;
  if (cfg.dt > 0.0) {
    if (cfg.dt > spacing) throw ConfigError("dt", "must not exceed the grid spacing");
    s.substeps = static_cast<int>(std::max(1.0, std::ceil(half / cfg.dt - 1e-9)));
    s.dt = half / s.substeps;
  } else {
    s.dt = default_substep(c, spacing);
    s.substeps = static_cast<int>(std::lround(half / s.dt));
  }
  return s;
}

std::vector<double> run_sample(const HpaConfig& cfg, const CouplingSet& c,
                               const Schedule& schedule, std::uint64_t k) {
  auto rng = sample_stream(cfg.rng_seed, k);
  const auto n0 = sample_occupations(cfg.temperature, c.omega_n, c.spin, rng);
  GaussianBath bath(c, cfg.shift_mode, n0);
  bath.set_step(schedule.dt);

  // Qubit phase rate in the frame rotating at w: sum_i g_e[i] <Iz_i>.
  auto rate = [&](const Eigen::VectorXd& occ) { return c.g_e.dot(occ - c.spin); };

  std::vector<double> phase(static_cast<std::size_t>(schedule.half_steps) + 1, 0.0);
  Eigen::VectorXd mid;
  double phi = 0.0;
  double f0 = rate(bath.occupations());
  for (int h = 1; h <= schedule.half_steps; ++h) {
    for (int m = 0; m < schedule.substeps; ++m) {
      bath.step(&mid);
      const double f1 = rate(bath.occupations());
      phi += schedule.dt / 6.0 * (f0 + 4.0 * rate(mid) + f1);
      f0 = f1;
    }
    phase[static_cast<std::size_t>(h)] = phi;
  }

  const std::size_t n = cfg.times.size();
  std::vector<double> sx(n);
  for (std::size_t j = 0; j < n; ++j) {
    sx[j] = cfg.protocol == Protocol::FreeInduction
                ? std::cos(phase[2 * j])
                : std::cos(phase[2 * j] - 2.0 * phase[j]);
  }
  return sx;
}

void validate_run(const HpaConfig& cfg) {
  validate_grid(cfg.times);
  if (cfg.times.size() < 2) throw ConfigError("n_points", "must be >= 2");
  if (!(cfg.temperature > 0.0)) throw ConfigError("temperature", "must be positive");
  if (cfg.n_samples < 1) throw ConfigError("n_samples", "must be >= 1");
}

}  // namespace

HpaResult run_hpa(const HpaConfig& cfg, const HpaOptions& options) {
  validate(cfg.field);
  if (cfg.sites.empty()) throw ConfigError("bath", "no nuclear sites");
  return run_hpa(make_couplings(cfg.sites, cfg.field), cfg, options);
}

HpaResult run_hpa(const CouplingSet& c, const HpaConfig& cfg, const HpaOptions& options) {
  validate_run(cfg);
  if (c.size() == 0) throw ConfigError("bath", "no nuclear sites");
  const Schedule schedule = make_schedule(cfg, c);

  const auto n_samples = static_cast<std::size_t>(cfg.n_samples);
  std::vector<std::vector<double>> samples(n_samples);
  int workers = options.workers > 0
                    ? options.workers
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min<int>(workers, cfg.n_samples);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < n_samples; k = next++) {
      try {
        samples[k] = run_sample(cfg, c, schedule, k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_samples;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Fixed-order fold so the result does not depend on the worker count.
  const std::size_t n = cfg.times.size();
  HpaResult result;
  result.dt = schedule.dt;
  result.trace.times = cfg.times;
  result.trace.n_samples = cfg.n_samples;
  result.trace.sx.assign(n, 0.0);
  result.trace.std_error.assign(n, 0.0);
  for (const auto& s : samples)
    for (std::size_t j = 0; j < n; ++j) result.trace.sx[j] += s[j];
  for (auto& v : result.trace.sx) v /= static_cast<double>(n_samples);
  if (n_samples > 1) {
    for (const auto& s : samples)
      for (std::size_t j = 0; j < n; ++j) {
        const double d = s[j] - result.trace.sx[j];
        result.trace.std_error[j] += d * d;
      }
    for (auto& v : result.trace.std_error)
      v = std::sqrt(v / static_cast<double>(n_samples - 1) /
                    static_cast<double>(n_samples));
  }
  if (options.keep_samples) result.samples = std::move(samples);
  return result;
}

}  // namespace vbdecoh
