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

#include <benchmark/benchmark.h>

#include <Eigen/Eigenvalues>

#include "vbdecoh/exact_engine.hpp"
#include "vbdecoh/hpa_engine.hpp"
#include "vbdecoh/phonon.hpp"

namespace {

using namespace vbdecoh;

std::vector<int> half_filled(int n) {
  std::vector<int> occ(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; i += 2) occ[static_cast<std::size_t>(i)] = 1;
  return occ;
}

void BM_GaussianBathStep(benchmark::State& state) {
  const auto sites = standard_bath(state.range(0) == 240 ? "fig3-240" : "fig2-30");
  const auto c = make_couplings(sites, FieldParams{});
  GaussianBath bath(c, ShiftMode::DerivedMeanField, half_filled(c.size()));
  bath.set_step(1e-7);
  Eigen::VectorXd mid;
  for (auto _ : state) {
    bath.step(&mid);
    benchmark::DoNotOptimize(mid.data());
  }
}
BENCHMARK(BM_GaussianBathStep)->Arg(30)->Arg(240)->Unit(benchmark::kMicrosecond);

void BM_CoefficientEigensolve(benchmark::State& state) {
  const auto c = make_couplings(standard_bath("fig3-240"), FieldParams{});
  const Eigen::MatrixXd v =
      coefficient_matrix(Eigen::VectorXd::Zero(c.size()), c, ShiftMode::DerivedMeanField);
  for (auto _ : state) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(v);
    benchmark::DoNotOptimize(solver.eigenvalues().data());
  }
}
BENCHMARK(BM_CoefficientEigensolve)->Unit(benchmark::kMillisecond);

void BM_HpaEcho(benchmark::State& state) {
  HpaConfig cfg;
  cfg.sites = standard_bath("fig2-30");
  cfg.times = uniform_grid(80e-6, 81);
  cfg.n_samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_hpa(cfg).trace.sx.data());
}
BENCHMARK(BM_HpaEcho)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ExactEcho(benchmark::State& state) {
  ExactConfig cfg;
  cfg.sites = standard_bath(state.range(0) == 0 ? "fig1-n-ring1" : "fig1-b-ring2");
  cfg.times = uniform_grid(2e-6, 201);
  cfg.protocol = Protocol::HahnEcho;
  cfg.method = state.range(1) == 0 ? ExactMethod::Block : ExactMethod::FullSpace;
  for (auto _ : state) benchmark::DoNotOptimize(coherence_trace(cfg).sx.data());
}
BENCHMARK(BM_ExactEcho)->Args({0, 0})->Args({0, 1})->Args({1, 0})->Unit(benchmark::kMillisecond);

void BM_DebyeIntegral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(debye_integral(50.0, 0.375));
}
BENCHMARK(BM_DebyeIntegral)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
