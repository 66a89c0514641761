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

#include <optional>

#include "vbdecoh/coherence_trace.hpp"

namespace vbdecoh {

// y = exp[-(c t)^n].
struct FitResult {
  double c = 0.0;         // 1/s
  double n = 0.0;
  double residual = 0.0;  // RMS over the fit window
  int points = 0;         // samples inside the fit window
};

// Upper envelope of |sx| through its interior local maxima; the end points
// are kept as anchors. Signals without such maxima come back as |sx|.
CoherenceTrace envelope(const CoherenceTrace& trace);

// First time the envelope drops below `threshold`, linear between samples.
std::optional<double> coherence_time(const CoherenceTrace& trace,
                                     double threshold = 0.5);

// Linear fit of ln(-ln y) against ln t over y in [0.01, 0.99], then a
// Levenberg-Marquardt refinement on y itself.
FitResult fit_stretched_exponential(const CoherenceTrace& trace);

}  // namespace vbdecoh
