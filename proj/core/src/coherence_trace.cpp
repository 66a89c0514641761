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

#include "vbdecoh/coherence_trace.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "vbdecoh/error.hpp"

namespace vbdecoh {

std::string_view to_string(Protocol p) {
  return p == Protocol::HahnEcho ? "echo" : "fid";
}

Protocol parse_protocol(std::string_view text) {
  if (text == "fid") return Protocol::FreeInduction;
  if (text == "echo") return Protocol::HahnEcho;
  throw ConfigError("protocol", "expected 'fid' or 'echo', got '" +
                                    std::string(text) + "'");
}

std::vector<double> uniform_grid(double t_max, int n_points) {
  if (!(t_max > 0.0)) throw ConfigError("t_max", "must be positive");
  if (n_points < 2) throw ConfigError("n_points", "must be >= 2");
  std::vector<double> t(static_cast<std::size_t>(n_points));
  const double step = t_max / (n_points - 1);
  for (int k = 0; k < n_points; ++k) t[k] = k * step;
  return t;
}

void validate_grid(const std::vector<double>& times) {
  if (times.empty() || times.front() != 0.0)
    throw ConfigError("times", "grid must start at 0");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw ConfigError("times", "grid must be strictly increasing");
}

namespace {

std::string format(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

double parse_double(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("trace", "bad number on line " + std::to_string(line));
  return value;
}

}  // namespace

void write_trace_csv(std::ostream& out, const CoherenceTrace& trace) {
  const bool with_error = trace.std_error.size() == trace.times.size();
  out << (with_error ? "time_s,sx,std_error\n" : "time_s,sx\n");
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    out << format("%.12g", trace.times[k]) << ',' << format("%.17g", trace.sx[k]);
    if (with_error) out << ',' << format("%.17g", trace.std_error[k]);
    out << '\n';
  }
}

CoherenceTrace read_trace_csv(std::istream& in) {
  CoherenceTrace trace;
  std::string line;
  if (!std::getline(in, line) || line.rfind("time_s,sx", 0) != 0)
    throw ConfigError("trace", "missing 'time_s,sx' header");
  const bool with_error = line.find("std_error") != std::string::npos;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (auto pos = rest.find(','); pos != std::string_view::npos;
         pos = rest.find(',')) {
      fields.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    fields.push_back(rest);
    if (fields.size() < 2)
      throw ConfigError("trace", "too few columns on line " + std::to_string(lineno));
    trace.times.push_back(parse_double(fields[0], lineno));
    trace.sx.push_back(parse_double(fields[1], lineno));
    if (with_error && fields.size() > 2)
      trace.std_error.push_back(parse_double(fields[2], lineno));
  }
  if (trace.times.empty()) throw ConfigError("trace", "no data rows");
  return trace;
}

}  // namespace vbdecoh
