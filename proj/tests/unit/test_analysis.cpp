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
#include <functional>
#include <sstream>

#include "vbdecoh/analysis.hpp"
#include "vbdecoh/constants.hpp"
#include "vbdecoh/error.hpp"

using namespace vbdecoh;

namespace {

CoherenceTrace sample(double t_max, int n, const std::function<double(double)>& f) {
  CoherenceTrace trace;
  trace.times = uniform_grid(t_max, n);
  for (double t : trace.times) trace.sx.push_back(f(t));
  return trace;
}

}  // namespace

TEST_CASE("envelope of a damped rectified cosine") {
  const double w = 2 * constants::pi * 1e6, tau = 3e-6;
  // Grid step divides the half period so every peak is sampled exactly.
  const double half_period = constants::pi / w;
  const auto trace = sample(20 * half_period, 20 * 16 + 1, [&](double t) {
    return std::abs(std::cos(w * t)) * std::exp(-t / tau);
  });
  const auto env = envelope(trace);
  for (std::size_t k = 0; k < trace.size(); k += 16)
    CHECK(env.sx[k] == doctest::Approx(std::exp(-trace.times[k] / tau)).epsilon(1e-12));
  for (std::size_t k = 0; k < trace.size(); ++k) CHECK(env.sx[k] >= std::abs(trace.sx[k]));
}

TEST_CASE("envelope of monotone and constant signals") {
  const auto mono = sample(1.0, 50, [](double t) { return std::exp(-t); });
  CHECK(envelope(mono).sx == mono.sx);
  const auto flat = sample(1.0, 50, [](double) { return 1.0; });
  CHECK(envelope(flat).sx == flat.sx);
}

TEST_CASE("coherence time") {
  const double tau = 2e-5;
  const auto stretched = sample(5e-5, 2001, [&](double t) { return std::exp(-std::pow(t / tau, 6)); });
  const double step = 5e-5 / 2000;
  CHECK(std::abs(*coherence_time(stretched) - tau * std::pow(std::log(2.0), 1.0 / 6.0)) < step);
  const auto flat = sample(1.0, 10, [](double) { return 1.0; });
  CHECK_FALSE(coherence_time(flat).has_value());
  const double g = 3e4;
  const auto expo = sample(1e-4, 4001, [&](double t) { return std::exp(-g * t); });
  CHECK(*coherence_time(expo) == doctest::Approx(std::log(2.0) / g).epsilon(1e-4));
}

TEST_CASE("coherence time is stable under grid refinement") {
  const double tau = 1e-5;
  auto f = [&](double t) { return std::exp(-std::pow(t / tau, 3)) * (0.9 + 0.1 * std::cos(6e5 * t)); };
  const auto coarse = sample(3e-5, 61, f);
  const auto fine = sample(3e-5, 481, f);
  CHECK(std::abs(*coherence_time(coarse) - *coherence_time(fine)) <= 3e-5 / 60);
}

TEST_CASE("stretched exponential self fit") {
  const double tau = 2.5e-5;
  const auto trace = sample(6e-5, 121, [&](double t) { return std::exp(-std::pow(t / tau, 6)); });
  const auto fit = fit_stretched_exponential(trace);
  CHECK(std::abs(fit.n - 6.0) < 1e-6);
  CHECK(fit.c * tau == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.residual < 1e-8);

  const auto refit = fit_stretched_exponential(sample(6e-5, 121, [&](double t) {
    return std::exp(-std::pow(fit.c * t, fit.n));
  }));
  CHECK(std::abs(refit.n - fit.n) < 1e-6);
  CHECK(std::abs(refit.c - fit.c) < 1e-6 * fit.c);

  const double g = 1e5;
  const auto expo = fit_stretched_exponential(sample(5e-5, 101, [&](double t) { return std::exp(-g * t); }));
  CHECK(std::abs(expo.n - 1.0) < 1e-3);
  CHECK(expo.c == doctest::Approx(g).epsilon(1e-3));
}

TEST_CASE("fit stops at the first rise of the signal") {
  const double tau = 2e-5;
  // Decay followed by a noise-like floor that must not enter the fit.
  const auto trace = sample(8e-5, 161, [&](double t) {
    const double y = std::exp(-std::pow(t / tau, 6));
    return t > 2.6e-5 ? 0.05 + 0.04 * std::sin(1e6 * t) : y;
  });
  const auto fit = fit_stretched_exponential(trace);
  CHECK(fit.n == doctest::Approx(6.0).epsilon(1e-3));
}

TEST_CASE("fit errors") {
  const auto flat = sample(1.0, 50, [](double) { return 1.0; });
  CHECK_THROWS_AS(fit_stretched_exponential(flat), NumericalError);
  const auto few = sample(1.0, 5, [](double t) { return std::exp(-t); });
  CHECK_THROWS_AS(fit_stretched_exponential(few), NumericalError);
  const auto negative = sample(1.0, 50, [](double t) { return t > 0.5 ? 0.0 : 1.0; });
  CHECK_THROWS_AS(fit_stretched_exponential(negative), DomainError);
}

TEST_CASE("trace CSV round trip") {
  CoherenceTrace trace = sample(1e-5, 11, [](double t) { return std::cos(1e6 * t) / 3.0; });
  trace.std_error.assign(trace.size(), 0.125);
  std::stringstream buffer;
  write_trace_csv(buffer, trace);
  const auto back = read_trace_csv(buffer);
  CHECK(back.sx == trace.sx);
  CHECK(back.std_error == trace.std_error);
  for (std::size_t k = 0; k < trace.size(); ++k)
    CHECK(back.times[k] == doctest::Approx(trace.times[k]).epsilon(1e-12));
}
