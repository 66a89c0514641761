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

#include "vbdecoh/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>

#include "vbdecoh/error.hpp"

namespace vbdecoh {

namespace {

constexpr double kPeakMargin = 1e-6;
constexpr double kWindowLow = 0.01;
constexpr double kWindowHigh = 0.99;
constexpr int kMinFitPoints = 8;

// Residuals r_k = exp[-(c t_k)^n] - y_k in the parameters (ln c, n).
struct StretchedResidual {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  Eigen::VectorXd log_t;
  Eigen::VectorXd y;

  int inputs() const { return 2; }
  int values() const { return static_cast<int>(y.size()); }

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const {
    for (Eigen::Index k = 0; k < y.size(); ++k) {
      const double u = std::exp(p(1) * (p(0) + log_t(k)));
      r(k) = std::exp(-u) - y(k);
    }
    return 0;
  }

  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& jac) const {
    for (Eigen::Index k = 0; k < y.size(); ++k) {
      const double x = p(0) + log_t(k);
      const double u = std::exp(p(1) * x);
      const double m = std::exp(-u);
      jac(k, 0) = -m * u * p(1);
      jac(k, 1) = -m * u * x;
    }
    return 0;
  }
};

}  // namespace

CoherenceTrace envelope(const CoherenceTrace& trace) {
  CoherenceTrace out = trace;
  out.std_error.clear();
  const std::size_t n = trace.size();
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = std::abs(trace.sx[i]);

  std::vector<std::size_t> anchors{0};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (a[i] >= a[i - 1] && a[i] >= a[i + 1] &&
        a[i] - std::min(a[i - 1], a[i + 1]) > kPeakMargin)
      anchors.push_back(i);
  }
  out.sx = a;
  if (anchors.size() == 1) return out;
  if (anchors.back() != n - 1) anchors.push_back(n - 1);

  for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
    const std::size_t i0 = anchors[k], i1 = anchors[k + 1];
    const double t0 = trace.times[i0], t1 = trace.times[i1];
    for (std::size_t i = i0 + 1; i < i1; ++i) {
      const double w = (trace.times[i] - t0) / (t1 - t0);
      out.sx[i] = std::max(a[i], (1.0 - w) * a[i0] + w * a[i1]);
    }
  }
  return out;
}

std::optional<double> coherence_time(const CoherenceTrace& trace, double threshold) {
  if (trace.size() == 0) return std::nullopt;
  const CoherenceTrace env = envelope(trace);
  if (env.sx[0] < threshold) return env.times[0];
  for (std::size_t i = 1; i < env.size(); ++i) {
    if (env.sx[i] < threshold) {
      const double y0 = env.sx[i - 1], y1 = env.sx[i];
      const double w = (y0 - threshold) / (y0 - y1);
      return env.times[i - 1] + w * (env.times[i] - env.times[i - 1]);
    }
  }
  return std::nullopt;
}

FitResult fit_stretched_exponential(const CoherenceTrace& trace) {
  const CoherenceTrace env = envelope(trace);
  for (std::size_t i = 0; i < env.size(); ++i) {
    const double y = env.sx[i];
    if (!(y > 0.0) || y > 1.0 + 1e-9)
      throw DomainError("envelope value outside (0, 1] at t = " +
                        std::to_string(env.times[i]));
  }
  // Only the leading decay is fitted: up to the first rise of |sx| the signal
  // is its own envelope, and later samples belong to revivals or to the
  // Monte Carlo noise floor.
  std::size_t stop = 1;
  while (stop < trace.size() &&
         std::abs(trace.sx[stop]) <= std::abs(trace.sx[stop - 1]) + kPeakMargin)
    ++stop;
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < stop; ++i) {
    const double y = std::abs(trace.sx[i]);
    if (trace.times[i] > 0.0 && y >= kWindowLow && y <= kWindowHigh) {
      ts.push_back(trace.times[i]);
      ys.push_back(y);
    }
  }
  const int m = static_cast<int>(ts.size());
  if (m < kMinFitPoints)
    throw NumericalError("stretched-exponential fit needs at least " +
                         std::to_string(kMinFitPoints) + " decaying points, got " +
                         std::to_string(m));

  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd rhs(m);
  for (int k = 0; k < m; ++k) {
    design(k, 0) = std::log(ts[k]);
    design(k, 1) = 1.0;
    rhs(k) = std::log(-std::log(ys[k]));
  }
  const Eigen::Vector2d line = design.colPivHouseholderQr().solve(rhs);
  if (!(line(0) > 0.0))
    throw NumericalError("envelope does not decay over the fit window");

  StretchedResidual functor;
  functor.log_t = design.col(0);
  functor.y = Eigen::Map<const Eigen::VectorXd>(ys.data(), m);
  Eigen::VectorXd p(2);
  p << line(1) / line(0), line(0);
  Eigen::LevenbergMarquardt<StretchedResidual> lm(functor);
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  const auto status = lm.minimize(p);
  if (status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters ||
      !p.allFinite() || !(p(1) > 0.0))
    throw NumericalError("stretched-exponential refinement failed");

  Eigen::VectorXd r(m);
  functor(p, r);
  FitResult fit;
  fit.c = std::exp(p(0));
  fit.n = p(1);
  fit.residual = std::sqrt(r.squaredNorm() / m);
  fit.points = m;
  return fit;
}

}  // namespace vbdecoh
