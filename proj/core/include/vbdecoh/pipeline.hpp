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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vbdecoh/analysis.hpp"
#include "vbdecoh/coherence_trace.hpp"
#include "vbdecoh/config.hpp"

namespace vbdecoh {

struct PipelineOptions {
  int workers = 1;
  bool keep_samples = false;  // also write samples.csv for HPA runs
};

// Trace of an exact or HPA configuration.
struct SimulationResult {
  CoherenceTrace trace;
  double dt = 0.0;  // HPA substep, 0 for exact runs
  std::vector<std::vector<double>> samples;
};
SimulationResult simulate(const RunConfig& cfg, const PipelineOptions& options = {});

// Coherence time and fit of a trace as a JSON document. Echo traces report
// T2prime_s, free-induction traces T2star_s.
std::string analysis_report(const CoherenceTrace& trace, Protocol protocol);

struct PhononReport {
  DephasingResult low_T;
  DephasingResult high_T;
  DephasingResult quadrature;
  std::optional<double> t2prime;
  std::vector<T2Point> sweep;  // empty without t2prime
};
PhononReport phonon_report(const RunConfig& cfg);

struct CombineReport {
  double gamma = 0.0;
  double t2prime = 0.0;
  double t2 = 0.0;
};
// Resolves gamma and T2' from inline values or earlier run directories.
CombineReport combine(const RunConfig& cfg);

void write_sweep_csv(std::ostream& out, const std::vector<T2Point>& sweep);
// F(t) on n_points samples of [0, 3 T2].
void write_decoherence_csv(std::ostream& out, const CombineReport& report, int n_points);

// Executes cfg.engine and writes its artifacts plus manifest.cfg into `dir`.
// Returns the paths written.
std::vector<std::filesystem::path> run(const RunConfig& cfg,
                                       const std::filesystem::path& dir,
                                       const PipelineOptions& options = {});

}  // namespace vbdecoh
