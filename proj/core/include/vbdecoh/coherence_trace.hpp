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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vbdecoh {

enum class Protocol { FreeInduction, HahnEcho };

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view text);

// n_points samples 0, dt, ..., t_max.
std::vector<double> uniform_grid(double t_max, int n_points);

// Throws ConfigError unless times start at 0 and strictly increase.
void validate_grid(const std::vector<double>& times);

// Rotating-frame <sigma_x(t)> of the qubit.
struct CoherenceTrace {
  std::vector<double> times;      // s
  std::vector<double> sx;
  int n_samples = 1;
  std::vector<double> std_error;  // empty unless Monte Carlo

  std::size_t size() const { return times.size(); }
};

// CSV with header `time_s,sx[,std_error]`; times carry 12 significant digits.
void write_trace_csv(std::ostream& out, const CoherenceTrace& trace);
CoherenceTrace read_trace_csv(std::istream& in);

}  // namespace vbdecoh
