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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vbdecoh/analysis.hpp"
#include "vbdecoh/config.hpp"
#include "vbdecoh/couplings.hpp"
#include "vbdecoh/error.hpp"
#include "vbdecoh/pipeline.hpp"

namespace {

using namespace vbdecoh;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string output;
};

void add_common(CLI::App* cmd, Common& common,
                const char* output_help = "output file (default: stdout)") {
  cmd->add_option("config", common.config, "key = value configuration file");
  cmd->add_option("--set", common.sets, "override one key, e.g. --set temperature=0.01")
      ->take_all();
  cmd->add_option("-o,--output", common.output, output_help);
}

RunConfig resolve(const Common& common, std::optional<Engine> engine) {
  RunConfig cfg = common.config.empty() ? RunConfig{} : load_config(common.config, false);
  for (const auto& s : common.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(s, "--set expects key=value");
    set_option(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  if (engine) cfg.engine = *engine;
  validate(cfg);
  return cfg;
}

int default_workers() {
  if (const char* env = std::getenv("VBDECOH_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw ConfigError("VBDECOH_WORKERS", "must be a positive integer");
  }
  return 1;
}

template <typename Write>
void to_output(const std::string& path, Write&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  write(out);
}

void cmd_lattice(const Common& common) {
  const auto cfg = resolve(common, std::nullopt);
  const auto sites = resolve_sites(cfg);
  to_output(common.output, [&](std::ostream& out) {
    out << "index,species,x_m,y_m,ring\n";
    char line[128];
    for (const auto& s : sites) {
      std::snprintf(line, sizeof line, "%d,%s,%.12g,%.12g,%d\n", s.index,
                    std::string(to_string(s.species.label)).c_str(), s.position.x(),
                    s.position.y(), s.ring);
      out << line;
    }
  });
}

void cmd_couplings(const Common& common) {
  const auto cfg = resolve(common, std::nullopt);
  const auto sites = resolve_sites(cfg);
  const auto c = make_couplings(sites, cfg.field);
  to_output(common.output, [&](std::ostream& out) {
    out << "index,species,ring,g_e_rad_s,omega_rad_s";
    for (int j = 0; j < c.size(); ++j) out << ",g_nn_" << j;
    out << "\n";
    char cell[64];
    for (int i = 0; i < c.size(); ++i) {
      const auto& s = sites[static_cast<std::size_t>(i)];
      std::snprintf(cell, sizeof cell, "%d,%s,%d,%.17g,%.17g", i,
                    std::string(to_string(s.species.label)).c_str(), s.ring, c.g_e(i),
                    c.omega_n(i));
      out << cell;
      for (int j = 0; j < c.size(); ++j) {
        std::snprintf(cell, sizeof cell, ",%.17g", c.g_nn(i, j));
        out << cell;
      }
      out << "\n";
    }
  });
}

void cmd_trace(const Common& common, Engine engine, int workers,
               const std::string& samples_path) {
  const auto cfg = resolve(common, engine);
  PipelineOptions options{workers, !samples_path.empty()};
  const auto result = simulate(cfg, options);
  to_output(common.output, [&](std::ostream& out) { write_trace_csv(out, result.trace); });
  if (!samples_path.empty()) {
    to_output(samples_path, [&](std::ostream& out) {
      out << "sample,time_s,sx\n";
      char line[96];
      for (std::size_t k = 0; k < result.samples.size(); ++k)
        for (std::size_t i = 0; i < result.trace.size(); ++i) {
          std::snprintf(line, sizeof line, "%zu,%.12g,%.17g\n", k, result.trace.times[i],
                        result.samples[k][i]);
          out << line;
        }
    });
  }
}

void cmd_phonon(const Common& common, const std::string& sweep_path) {
  const auto cfg = resolve(common, Engine::Phonon);
  const auto report = phonon_report(cfg);
  nlohmann::json doc;
  doc["temperature_K"] = cfg.phonon.temperature;
  doc["lambda00_rad_s"] = cfg.phonon.lambda00;
  doc["gamma_low_T"] = report.low_T.gamma;
  doc["gamma_high_T"] = report.high_T.gamma;
  doc["gamma_quadrature"] = report.quadrature.gamma;
  to_output(common.output, [&](std::ostream& out) { out << doc.dump(2) << "\n"; });
  if (!sweep_path.empty()) {
    if (report.sweep.empty())
      throw ConfigError("t2prime", "the T2 sweep needs t2prime or t2prime_from");
    to_output(sweep_path, [&](std::ostream& out) { write_sweep_csv(out, report.sweep); });
  }
}

void cmd_fit(const std::string& trace_path, double threshold, const std::string& output) {
  std::ifstream in(trace_path);
  if (!in) throw ConfigError("trace", "cannot open " + trace_path);
  const auto trace = read_trace_csv(in);
  nlohmann::json doc;
  const auto tc = coherence_time(trace, threshold);
  doc["threshold"] = threshold;
  doc["coherence_time_s"] = tc ? nlohmann::json(*tc) : nlohmann::json(nullptr);
  const FitResult fit = fit_stretched_exponential(trace);
  doc["c"] = fit.c;
  doc["n"] = fit.n;
  doc["residual"] = fit.residual;
  doc["points"] = fit.points;
  to_output(output, [&](std::ostream& out) { out << doc.dump(2) << "\n"; });
}

void cmd_combine(const Common& common, const std::string& curve_path) {
  const auto cfg = resolve(common, Engine::Combine);
  const auto report = combine(cfg);
  nlohmann::json doc;
  doc["gamma"] = report.gamma;
  doc["T2prime_s"] = report.t2prime;
  doc["T2_s"] = report.t2;
  to_output(common.output, [&](std::ostream& out) { out << doc.dump(2) << "\n"; });
  if (!curve_path.empty())
    to_output(curve_path,
              [&](std::ostream& out) { write_decoherence_csv(out, report, cfg.n_points); });
}

void cmd_run(const Common& common, const std::string& dir, int workers, bool keep) {
  auto cfg = resolve(common, std::nullopt);
  if (!dir.empty()) cfg.output = dir;
  for (const auto& path : run(cfg, cfg.output, {workers, keep}))
    std::cout << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central spin decoherence of boron-vacancy centres in hBN"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);

  int workers = 0;
  app.add_option("-j,--workers", workers,
                 "parallel Monte Carlo workers (default: $VBDECOH_WORKERS or 1)");

  Common c_lattice, c_couplings, c_exact, c_hpa, c_phonon, c_combine, c_run;
  auto* lattice = app.add_subcommand("lattice", "list bath sites as CSV");
  add_common(lattice, c_lattice);
  auto* couplings = app.add_subcommand("couplings", "dump couplings as CSV");
  add_common(couplings, c_couplings);
  auto* exact = app.add_subcommand("exact", "exact small-bath coherence trace");
  add_common(exact, c_exact);
  auto* hpa = app.add_subcommand("hpa", "Holstein-Primakoff Monte Carlo trace");
  add_common(hpa, c_hpa);
  std::string samples_path;
  hpa->add_option("--samples-out", samples_path, "write every sample trace to this CSV");
  auto* phonon = app.add_subcommand("phonon", "phonon dephasing rates and T2 sweep");
  add_common(phonon, c_phonon);
  std::string sweep_path;
  phonon->add_option("--sweep", sweep_path, "write T2 against lambda00 to this CSV");
  auto* fit = app.add_subcommand("fit", "coherence time and stretched-exponential fit");
  std::string trace_path, fit_output;
  double threshold = 0.5;
  fit->add_option("trace", trace_path, "trace CSV")->required();
  fit->add_option("--threshold", threshold, "envelope level defining the coherence time");
  fit->add_option("-o,--output", fit_output, "output file (default: stdout)");
  auto* combine_cmd = app.add_subcommand("combine", "combine phonon and spin-bath decay");
  add_common(combine_cmd, c_combine);
  std::string curve_path;
  combine_cmd->add_option("--curve", curve_path, "write F(t) to this CSV");
  auto* run_cmd = app.add_subcommand("run", "run a configuration and write all artifacts");
  add_common(run_cmd, c_run, "output directory (default: the output key)");
  bool keep_samples = false;
  run_cmd->add_flag("--keep-samples", keep_samples, "also write samples.csv (hpa)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const int n_workers = workers > 0 ? workers : default_workers();
    if (*lattice) cmd_lattice(c_lattice);
    if (*couplings) cmd_couplings(c_couplings);
    if (*exact) cmd_trace(c_exact, Engine::Exact, n_workers, "");
    if (*hpa) cmd_trace(c_hpa, Engine::Hpa, n_workers, samples_path);
    if (*phonon) cmd_phonon(c_phonon, sweep_path);
    if (*fit) cmd_fit(trace_path, threshold, fit_output);
    if (*combine_cmd) cmd_combine(c_combine, curve_path);
    if (*run_cmd) cmd_run(c_run, c_run.output, n_workers, keep_samples);
  } catch (const ConfigError& e) {
    std::cerr << "vbdecoh: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "vbdecoh: invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "vbdecoh: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "vbdecoh: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
