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

#include "vbdecoh/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "vbdecoh/error.hpp"

#ifndef VBDECOH_VERSION
#define VBDECOH_VERSION "0.0.0"
#endif

namespace vbdecoh {

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::Exact:
      return "exact";
    case Engine::Hpa:
      return "hpa";
    case Engine::Phonon:
      return "phonon";
    case Engine::Combine:
      return "combine";
  }
  return "unknown";
}

Engine parse_engine(std::string_view text) {
  if (text == "exact") return Engine::Exact;
  if (text == "hpa") return Engine::Hpa;
  if (text == "phonon") return Engine::Phonon;
  if (text == "combine") return Engine::Combine;
  throw ConfigError("engine", "expected exact, hpa, phonon or combine, got '" +
                                  std::string(text) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError(std::string(key), "not a finite number: '" + std::string(text) + "'");
  return v;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view text) {
  Int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(std::string(key), "not an integer: '" + std::string(text) + "'");
  return v;
}

std::string format(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

template <typename Parse>
auto rethrow_as(std::string_view key, Parse&& parse) {
  try {
    return parse();
  } catch (const ConfigError& e) {
    if (!e.key().empty()) throw;
    throw ConfigError(std::string(key), e.what());
  }
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Field {
  std::string_view key;
  Setter set;
  Getter get;
};

#define VB_DOUBLE(name, member)                                                  \
  Field {                                                                        \
    name, [](RunConfig& c, std::string_view k, std::string_view v) {             \
      c.member = to_double(k, v);                                                \
    },                                                                           \
        [](const RunConfig& c) { return format(c.member); }                      \
  }

#define VB_INT(name, member)                                                     \
  Field {                                                                        \
    name, [](RunConfig& c, std::string_view k, std::string_view v) {             \
      c.member = to_integer<int>(k, v);                                          \
    },                                                                           \
        [](const RunConfig& c) { return std::to_string(c.member); }              \
  }

#define VB_TEXT(name, member)                                                    \
  Field {                                                                        \
    name, [](RunConfig& c, std::string_view, std::string_view v) {               \
      c.member = std::string(v);                                                 \
    },                                                                           \
        [](const RunConfig& c) { return c.member; }                              \
  }

#define VB_OPTIONAL(name, member)                                                \
  Field {                                                                        \
    name, [](RunConfig& c, std::string_view k, std::string_view v) {             \
      c.member = to_double(k, v);                                                \
    },                                                                           \
        [](const RunConfig& c) { return c.member ? format(*c.member) : std::string(); } \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"engine",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.engine = rethrow_as(k, [&] { return parse_engine(v); });
       },
       [](const RunConfig& c) { return std::string(to_string(c.engine)); }},
      VB_TEXT("bath", bath),
      VB_INT("rings", rings),
      VB_INT("n_boron", n_boron),
      VB_INT("n_nitrogen", n_nitrogen),
      VB_DOUBLE("bond_length", bond_length),
      VB_DOUBLE("field", field.B),
      VB_DOUBLE("zfs", field.D),
      VB_DOUBLE("gamma_e", field.gamma_e),
      VB_DOUBLE("temperature", temperature),
      {"protocol",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.protocol = rethrow_as(k, [&] { return parse_protocol(v); });
       },
       [](const RunConfig& c) { return std::string(to_string(c.protocol)); }},
      VB_DOUBLE("t_max", t_max),
      VB_INT("n_points", n_points),
      VB_INT("n_samples", n_samples),
      {"seed",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.seed = to_integer<std::uint64_t>(k, v);
       },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      VB_DOUBLE("dt", dt),
      {"shift_mode",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         c.shift_mode = rethrow_as(k, [&] { return parse_shift_mode(v); });
       },
       [](const RunConfig& c) { return std::string(to_string(c.shift_mode)); }},
      {"method",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v == "block")
           c.method = ExactMethod::Block;
         else if (v == "full")
           c.method = ExactMethod::FullSpace;
         else
           throw ConfigError(std::string(k), "expected block or full");
       },
       [](const RunConfig& c) {
         return std::string(c.method == ExactMethod::Block ? "block" : "full");
       }},
      VB_DOUBLE("omega_debye", phonon.omega_debye),
      VB_DOUBLE("sound_speed", phonon.sound_speed),
      VB_DOUBLE("upsilon", phonon.upsilon),
      VB_DOUBLE("lambda00", phonon.lambda00),
      VB_DOUBLE("cell_factor", phonon.cell_factor),
      VB_DOUBLE("phonon_temperature", phonon.temperature),
      VB_DOUBLE("lambda_min", lambda_min),
      VB_DOUBLE("lambda_max", lambda_max),
      VB_INT("lambda_points", lambda_points),
      VB_OPTIONAL("gamma", gamma),
      VB_OPTIONAL("t2prime", t2prime),
      VB_TEXT("gamma_from", gamma_from),
      VB_TEXT("t2prime_from", t2prime_from),
      VB_TEXT("output", output),
  };
  return table;
}

#undef VB_DOUBLE
#undef VB_INT
#undef VB_TEXT
#undef VB_OPTIONAL

std::vector<std::string_view> key_list() {
  std::vector<std::string_view> keys;
  for (const auto& f : fields()) keys.push_back(f.key);
  return keys;
}

}  // namespace

std::string_view library_version() { return VBDECOH_VERSION; }

std::span<const std::string_view> config_keys() {
  static const std::vector<std::string_view> keys = key_list();
  return keys;
}

void set_option(RunConfig& cfg, std::string_view key, std::string_view value) {
  const auto& table = fields();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const Field& f) { return f.key == key; });
  if (it == table.end()) throw ConfigError(std::string(key), "unknown key");
  if (value.empty()) {
    if (key == "gamma_from" || key == "t2prime_from") {
      it->set(cfg, key, value);
      return;
    }
    throw ConfigError(std::string(key), "missing value");
  }
  it->set(cfg, key, value);
}

RunConfig parse_config(std::istream& in, bool check) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos)
      text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    if (key == "version") continue;  // written by manifests, informational
    if (!seen.insert(std::string(key)).second &&
        std::find(config_keys().begin(), config_keys().end(), key) != config_keys().end())
      throw ConfigError(std::string(key), "given more than once");
    set_option(cfg, key, value);
  }
  if (check) validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, bool check) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  return parse_config(in, check);
}

void validate(const RunConfig& cfg) {
  if (cfg.bath == "lattice") {
    const bool by_rings = cfg.rings > 0;
    const bool by_counts = cfg.n_boron > 0 || cfg.n_nitrogen > 0;
    if (by_rings == by_counts)
      throw ConfigError("rings", "bath = lattice needs either rings or n_boron/n_nitrogen");
    if (cfg.n_boron < 0) throw ConfigError("n_boron", "must be >= 0");
    if (cfg.n_nitrogen < 0) throw ConfigError("n_nitrogen", "must be >= 0");
  } else {
    const auto names = standard_bath_names();
    if (std::find(names.begin(), names.end(), cfg.bath) == names.end())
      throw ConfigError("bath", "unknown preset '" + cfg.bath + "'");
    if (cfg.rings != 0 || cfg.n_boron != 0 || cfg.n_nitrogen != 0)
      throw ConfigError("bath", "rings and counts require bath = lattice");
  }
  if (!(cfg.bond_length > 0.0)) throw ConfigError("bond_length", "must be positive");
  if (!(cfg.field.B >= 0.0)) throw ConfigError("field", "must be >= 0");
  if (!(cfg.field.gamma_e > 0.0)) throw ConfigError("gamma_e", "must be positive");
  if (!(cfg.temperature > 0.0)) throw ConfigError("temperature", "must be positive");
  if (!(cfg.t_max > 0.0)) throw ConfigError("t_max", "must be positive");
  if (cfg.n_points < 2) throw ConfigError("n_points", "must be >= 2");
  if (cfg.n_samples < 1) throw ConfigError("n_samples", "must be >= 1");
  if (cfg.dt < 0.0) throw ConfigError("dt", "must be >= 0 (0 selects the default)");
  if (cfg.dt > cfg.t_max / (cfg.n_points - 1))
    throw ConfigError("dt", "must not exceed the grid spacing");
  validate(cfg.phonon);
  if (!(cfg.lambda_min > 0.0)) throw ConfigError("lambda_min", "must be positive");
  if (!(cfg.lambda_max > cfg.lambda_min))
    throw ConfigError("lambda_max", "must exceed lambda_min");
  if (cfg.lambda_points < 2) throw ConfigError("lambda_points", "must be >= 2");
  if (cfg.gamma && !(*cfg.gamma >= 0.0)) throw ConfigError("gamma", "must be >= 0");
  if (cfg.t2prime && !(*cfg.t2prime > 0.0))
    throw ConfigError("t2prime", "must be positive");
  if (cfg.gamma && !cfg.gamma_from.empty())
    throw ConfigError("gamma_from", "conflicts with gamma");
  if (cfg.t2prime && !cfg.t2prime_from.empty())
    throw ConfigError("t2prime_from", "conflicts with t2prime");
  if (cfg.output.empty()) throw ConfigError("output", "must not be empty");
}

void write_manifest(std::ostream& out, const RunConfig& cfg) {
  for (const auto& f : fields()) {
    const std::string value = f.get(cfg);
    if (value.empty()) continue;
    out << f.key << " = " << value << '\n';
  }
  out << "version = " << VBDECOH_VERSION << '\n';
}

std::vector<Site> resolve_sites(const RunConfig& cfg) {
  if (cfg.bath != "lattice") return standard_bath(cfg.bath);
  LatticeSpec spec;
  spec.bond_length = cfg.bond_length;
  if (cfg.rings > 0)
    spec.selection = RingCount{cfg.rings};
  else
    spec.selection = SpeciesCounts{cfg.n_boron, cfg.n_nitrogen};
  return build_lattice(spec);
}

std::vector<double> lambda_grid(const RunConfig& cfg) {
  std::vector<double> grid{0.0};
  const double a = std::log10(cfg.lambda_min), b = std::log10(cfg.lambda_max);
  for (int k = 0; k < cfg.lambda_points; ++k)
    grid.push_back(std::pow(10.0, a + (b - a) * k / (cfg.lambda_points - 1)));
  return grid;
}

}  // namespace vbdecoh
