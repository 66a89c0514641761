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

#include "vbdecoh/phonon.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "vbdecoh/error.hpp"

namespace vbdecoh {

void validate(const PhononParams& p) {
  if (!(p.omega_debye > 0.0)) throw ConfigError("omega_debye", "must be positive");
  if (!(p.sound_speed > 0.0)) throw ConfigError("sound_speed", "must be positive");
  if (!(p.upsilon > 0.0)) throw ConfigError("upsilon", "must be positive");
  if (!(p.lambda00 >= 0.0)) throw ConfigError("lambda00", "must be >= 0");
  if (!(p.cell_factor > 0.0)) throw ConfigError("cell_factor", "must be positive");
  if (!(p.temperature > 0.0)) throw ConfigError("temperature", "must be positive");
}

std::string_view to_string(RateRegime regime) {
  switch (regime) {
    case RateRegime::LowT:
      return "low_T";
    case RateRegime::HighT:
      return "high_T";
    case RateRegime::Quadrature:
      return "quadrature";
  }
  return "unknown";
}

namespace {

double thermal_frequency(const PhononParams& p) {
  return constants::k_boltzmann * p.temperature / constants::hbar;
}

}  // namespace

double rate_prefactor(const PhononParams& p) {
  const double a = p.cell_factor;
  const double v2 = p.sound_speed * p.sound_speed;
  return constants::two_pi * 8.0 * constants::pi * constants::pi * a * a *
         p.lambda00 * p.lambda00 /
         (v2 * v2 * std::pow(p.omega_debye, 4.0 * p.upsilon));
}

DephasingResult decay_rate_low_T(const PhononParams& p) {
  validate(p);
  const double power = 4.0 * p.upsilon + 3.0;
  return {rate_prefactor(p) * std::pow(thermal_frequency(p), power) *
              std::tgamma(power),
          RateRegime::LowT};
}

DephasingResult decay_rate_high_T(const PhononParams& p) {
  validate(p);
  const double a = p.cell_factor;
  const double v2 = p.sound_speed * p.sound_speed;
  const double wt = thermal_frequency(p);
  return {constants::two_pi * 8.0 * constants::pi * constants::pi * a * a *
              p.lambda00 * p.lambda00 * p.omega_debye * wt * wt /
              (v2 * v2 * (4.0 * p.upsilon + 1.0)),
          RateRegime::HighT};
}

double debye_integral(double upper, double upsilon) {
  if (!(upper > 0.0)) throw DomainError("integration limit must be positive");
  if (!(upsilon > 0.0)) throw DomainError("upsilon must be positive");
  const double s = 4.0 * upsilon + 2.0;
  // e^x / (e^x - 1)^2 = 1 / (4 sinh^2(x/2)); the integrand behaves as x^(4u)
  // at the origin and is below 1e-70 beyond x = 200.
  auto f = [s](double x) {
    if (x <= 0.0) return 0.0;
    if (x < 1e-4) return std::pow(x, s - 2.0) * (1.0 - x * x / 12.0);
    const double sh = std::sinh(0.5 * x);
    return std::pow(x, s) / (4.0 * sh * sh);
  };
  const double b = std::min(upper, 200.0);
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0, l1 = 0.0;
  double value = 0.0;
  // Split at the bulk of the Bose weight so both pieces are smooth.
  const double knee = std::min(b, 4.0 * s);
  double total_error = 0.0;
  try {
    value = integrator.integrate(f, 0.0, knee, 1e-13, &error, &l1);
    total_error = error;
    if (b > knee) {
      value += integrator.integrate(f, knee, b, 1e-13, &error, &l1);
      total_error += error;
    }
  } catch (const std::exception& e) {
    throw NumericalError(std::string("Debye integral: ") + e.what());
  }
  if (!std::isfinite(value) || total_error > 1e-8 * std::abs(value))
    throw NumericalError("Debye integral did not converge");
  return value;
}

DephasingResult decay_rate_quadrature(const PhononParams& p) {
  validate(p);
  const double wt = thermal_frequency(p);
  const double power = 4.0 * p.upsilon + 3.0;
  return {rate_prefactor(p) * std::pow(wt, power) *
              debye_integral(p.omega_debye / wt, p.upsilon),
          RateRegime::Quadrature};
}

double decoherence_function(double t, double gamma, double t2prime) {
  const double x = 0.92 * t / t2prime;
  return std::exp(-gamma * t - std::pow(x, 6));
}

double combined_T2(double gamma, double t2prime) {
  if (!(t2prime > 0.0)) throw ConfigError("t2prime", "must be positive");
  if (!(gamma >= 0.0)) throw ConfigError("gamma", "must be >= 0");
  const double ln2 = std::log(2.0);
  const double spin_only = t2prime * std::pow(ln2, 1.0 / 6.0) / 0.92;
  if (gamma == 0.0) return spin_only;
  if (std::isinf(gamma)) return 0.0;
  // ln F(t) + ln 2 is strictly decreasing with a root below both single-bath
  // half-lives.
  auto g = [&](double t) {
    return gamma * t + std::pow(0.92 * t / t2prime, 6) - ln2;
  };
  const double hi = std::min(ln2 / gamma, spin_only);
  if (g(hi) <= 0.0) return hi;  // rounding at the bracket end
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      g, 0.0, hi, -ln2, g(hi), boost::math::tools::eps_tolerance<double>(48),
      iterations);
  if (iterations >= 200) throw NumericalError("T2 root search did not converge");
  return 0.5 * (a + b);
}

std::vector<T2Point> t2_vs_lambda(PhononParams p, const std::vector<double>& lambdas,
                                  double t2prime) {
  std::vector<T2Point> curve;
  curve.reserve(lambdas.size());
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (k > 0 && !(lambdas[k] > lambdas[k - 1]))
      throw ConfigError("lambda", "grid must be ascending");
    p.lambda00 = lambdas[k];
    const double gamma = decay_rate_high_T(p).gamma;
    curve.push_back({lambdas[k], gamma, combined_T2(gamma, t2prime)});
  }
  return curve;
}

Eigen::Matrix3cd dephasing_rhs(const Eigen::Matrix3cd& rho,
                               const SpinOneDephasing& model) {
  const Eigen::Vector3d sz(1.0, 0.0, -1.0);
  const Eigen::Matrix3cd sz2 = sz.cwiseProduct(sz).cast<std::complex<double>>().asDiagonal();
  Eigen::Matrix3cd h = (model.D * sz.cwiseProduct(sz) + model.omega * sz)
                           .cast<std::complex<double>>()
                           .asDiagonal();
  const std::complex<double> i(0.0, 1.0);
  return -i * (h * rho - rho * h) -
         model.gamma * (sz2 * rho + rho * sz2 - 2.0 * sz2 * rho * sz2);
}

Eigen::Matrix3cd integrate_dephasing(const Eigen::Matrix3cd& rho0,
                                     const SpinOneDephasing& model, double t) {
  using State = std::array<std::complex<double>, 9>;
  namespace odeint = boost::numeric::odeint;
  State state;
  Eigen::Map<Eigen::Matrix3cd>(state.data()) = rho0;
  auto system = [&](const State& x, State& dxdt, double) {
    Eigen::Map<Eigen::Matrix3cd>(dxdt.data()) =
        dephasing_rhs(Eigen::Map<const Eigen::Matrix3cd>(x.data()), model);
  };
  if (t > 0.0) {
    const double rate = std::abs(model.gamma) + std::abs(model.D) + std::abs(model.omega);
    const double dt0 = rate > 0.0 ? 1e-3 / rate : t;
    odeint::integrate_adaptive(
        odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-14, 1e-13),
        system, state, 0.0, t, std::min(dt0, t));
  }
  return Eigen::Map<Eigen::Matrix3cd>(state.data());
}

}  // namespace vbdecoh
