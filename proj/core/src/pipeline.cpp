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

#include "vbdecoh/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "vbdecoh/error.hpp"
#include "vbdecoh/exact_engine.hpp"
#include "vbdecoh/hpa_engine.hpp"

namespace vbdecoh {

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json read_json(const std::string& key, const std::filesystem::path& source) {
  std::filesystem::path file = source;
  if (std::filesystem::is_directory(file)) file /= "analysis.json";
  std::ifstream in(file);
  if (!in) throw ConfigError(key, "cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(key, file.string() + ": " + e.what());
  }
}

double number_field(const std::string& key, const json& doc, const char* field,
                    const std::string& source) {
  const auto it = doc.find(field);
  if (it == doc.end() || !it->is_number())
    throw ConfigError(key, source + " has no numeric '" + field + "'");
  return it->get<double>();
}

std::optional<double> resolve_t2prime(const RunConfig& cfg) {
  if (cfg.t2prime) return cfg.t2prime;
  if (cfg.t2prime_from.empty()) return std::nullopt;
  return number_field("t2prime_from", read_json("t2prime_from", cfg.t2prime_from),
                      "T2prime_s", cfg.t2prime_from);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

SimulationResult simulate(const RunConfig& cfg, const PipelineOptions& options) {
  SimulationResult result;
  const auto times = uniform_grid(cfg.t_max, cfg.n_points);
  if (cfg.engine == Engine::Exact) {
    ExactConfig ec;
    ec.sites = resolve_sites(cfg);
    ec.field = cfg.field;
    ec.temperature = cfg.temperature;
    ec.times = times;
    ec.protocol = cfg.protocol;
    ec.method = cfg.method;
    result.trace = coherence_trace(ec);
  } else if (cfg.engine == Engine::Hpa) {
    HpaConfig hc;
    hc.sites = resolve_sites(cfg);
    hc.field = cfg.field;
    hc.temperature = cfg.temperature;
    hc.times = times;
    hc.protocol = cfg.protocol;
    hc.n_samples = cfg.n_samples;
    hc.rng_seed = cfg.seed;
    hc.dt = cfg.dt;
    hc.shift_mode = cfg.shift_mode;
    auto hpa = run_hpa(hc, {options.workers, options.keep_samples});
    result.trace = std::move(hpa.trace);
    result.dt = hpa.dt;
    result.samples = std::move(hpa.samples);
  } else {
    throw ConfigError("engine", "simulate needs engine = exact or hpa");
  }
  return result;
}

std::string analysis_report(const CoherenceTrace& trace, Protocol protocol) {
  json doc;
  doc["protocol"] = std::string(to_string(protocol));
  doc["n_samples"] = trace.n_samples;
  const auto tc = coherence_time(trace);
  doc["coherence_time_s"] = optional_number(tc);
  doc[protocol == Protocol::HahnEcho ? "T2prime_s" : "T2star_s"] = optional_number(tc);
  try {
    const FitResult fit = fit_stretched_exponential(trace);
    doc["fit"] = {{"c", fit.c}, {"n", fit.n}, {"residual", fit.residual},
                  {"points", fit.points}};
    doc["fit"]["c_times_T"] = tc ? json(fit.c * *tc) : json(nullptr);
  } catch (const Error& e) {
    doc["fit"] = nullptr;
    doc["fit_error"] = e.what();
  }
  return doc.dump(2) + "\n";
}

PhononReport phonon_report(const RunConfig& cfg) {
  PhononReport r;
  r.low_T = decay_rate_low_T(cfg.phonon);
  r.high_T = decay_rate_high_T(cfg.phonon);
  r.quadrature = decay_rate_quadrature(cfg.phonon);
  r.t2prime = resolve_t2prime(cfg);
  if (r.t2prime) r.sweep = t2_vs_lambda(cfg.phonon, lambda_grid(cfg), *r.t2prime);
  return r;
}

CombineReport combine(const RunConfig& cfg) {
  CombineReport r;
  if (cfg.gamma) {
    r.gamma = *cfg.gamma;
  } else if (!cfg.gamma_from.empty()) {
    r.gamma = number_field("gamma_from", read_json("gamma_from", cfg.gamma_from), "gamma",
                           cfg.gamma_from);
  } else {
    throw ConfigError("gamma", "combine needs gamma or gamma_from");
  }
  const auto t2p = resolve_t2prime(cfg);
  if (!t2p) throw ConfigError("t2prime", "combine needs t2prime or t2prime_from");
  r.t2prime = *t2p;
  r.t2 = combined_T2(r.gamma, r.t2prime);
  return r;
}

void write_sweep_csv(std::ostream& out, const std::vector<T2Point>& sweep) {
  out << "lambda00_rad_s,gamma_per_s,T2_s\n";
  char line[128];
  for (const auto& p : sweep) {
    std::snprintf(line, sizeof line, "%.12g,%.17g,%.17g\n", p.lambda00, p.gamma, p.t2);
    out << line;
  }
}

void write_decoherence_csv(std::ostream& out, const CombineReport& report, int n_points) {
  out << "time_s,F\n";
  char line[96];
  const auto times = uniform_grid(3.0 * report.t2, n_points);
  for (double t : times) {
    std::snprintf(line, sizeof line, "%.12g,%.17g\n", t,
                  decoherence_function(t, report.gamma, report.t2prime));
    out << line;
  }
}

std::vector<std::filesystem::path> run(const RunConfig& cfg,
                                       const std::filesystem::path& dir,
                                       const PipelineOptions& options) {
  validate(cfg);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const auto& write) {
    const auto path = dir / name;
    auto out = open_output(path);
    write(out);
    if (!out) throw Error("failed writing " + path.string());
    written.push_back(path);
  };

  switch (cfg.engine) {
    case Engine::Exact:
    case Engine::Hpa: {
      const auto result = simulate(cfg, options);
      emit("trace.csv", [&](std::ostream& o) { write_trace_csv(o, result.trace); });
      emit("analysis.json", [&](std::ostream& o) {
        auto doc = json::parse(analysis_report(result.trace, cfg.protocol));
        doc["engine"] = std::string(to_string(cfg.engine));
        if (cfg.engine == Engine::Hpa) doc["dt_s"] = result.dt;
        o << doc.dump(2) << "\n";
      });
      if (options.keep_samples && !result.samples.empty()) {
        emit("samples.csv", [&](std::ostream& o) {
          char cell[40];
          o << "time_s";
          for (std::size_t k = 0; k < result.samples.size(); ++k) o << ",s" << k;
          o << "\n";
          for (std::size_t i = 0; i < result.trace.size(); ++i) {
            std::snprintf(cell, sizeof cell, "%.12g", result.trace.times[i]);
            o << cell;
            for (const auto& s : result.samples) {
              std::snprintf(cell, sizeof cell, ",%.17g", s[i]);
              o << cell;
            }
            o << "\n";
          }
        });
      }
      break;
    }
    case Engine::Phonon: {
      const auto report = phonon_report(cfg);
      emit("analysis.json", [&](std::ostream& o) {
        json doc;
        doc["engine"] = "phonon";
        doc["lambda00_rad_s"] = cfg.phonon.lambda00;
        doc["temperature_K"] = cfg.phonon.temperature;
        doc["gamma"] = report.high_T.gamma;
        doc["gamma_low_T"] = report.low_T.gamma;
        doc["gamma_high_T"] = report.high_T.gamma;
        doc["gamma_quadrature"] = report.quadrature.gamma;
        doc["T2prime_s"] = optional_number(report.t2prime);
        doc["T2_s"] = report.t2prime
                          ? json(combined_T2(report.high_T.gamma, *report.t2prime))
                          : json(nullptr);
        o << doc.dump(2) << "\n";
      });
      if (!report.sweep.empty())
        emit("t2_vs_lambda.csv", [&](std::ostream& o) { write_sweep_csv(o, report.sweep); });
      break;
    }
    case Engine::Combine: {
      const auto report = combine(cfg);
      emit("analysis.json", [&](std::ostream& o) {
        json doc;
        doc["engine"] = "combine";
        doc["gamma"] = report.gamma;
        doc["T2prime_s"] = report.t2prime;
        doc["T2_s"] = report.t2;
        doc["decoherence_csv"] = "decoherence.csv";
        o << doc.dump(2) << "\n";
      });
      emit("decoherence.csv",
           [&](std::ostream& o) { write_decoherence_csv(o, report, cfg.n_points); });
      emit("t2_vs_lambda.csv", [&](std::ostream& o) {
        write_sweep_csv(o, t2_vs_lambda(cfg.phonon, lambda_grid(cfg), report.t2prime));
      });
      break;
    }
  }

  RunConfig resolved = cfg;
  resolved.output = dir.string();
  emit("manifest.cfg", [&](std::ostream& o) { write_manifest(o, resolved); });
  return written;
}

}  // namespace vbdecoh
