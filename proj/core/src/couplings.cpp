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

#include "vbdecoh/couplings.hpp"

#include <cmath>
#include <string>

#include "vbdecoh/error.hpp"

namespace vbdecoh {

void validate(const FieldParams& field) {
  if (!(field.B >= 0.0)) throw ConfigError("field", "must be >= 0 T");
  if (!(field.D > 0.0)) throw ConfigError("zfs", "must be positive");
  if (!std::isfinite(field.gamma_e)) throw ConfigError("gamma_e", "must be finite");
}

Eigen::VectorXd hyperfine_couplings(std::span<const Site> sites,
                                    const FieldParams& field) {
  Eigen::VectorXd g(static_cast<Eigen::Index>(sites.size()));
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const double r = sites[i].distance();
    if (!(r > 0.0))
      throw SingularityError("site " + std::to_string(i) + " sits on the defect");
    g(i) = constants::mu0_over_4pi * field.gamma_e * sites[i].species.gamma *
           constants::hbar / (r * r * r);
  }
  return g;
}

Eigen::MatrixXd nuclear_couplings(std::span<const Site> sites) {
  const auto n = static_cast<Eigen::Index>(sites.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = (sites[i].position - sites[j].position).norm();
      if (!(r > 0.0))
        throw SingularityError("sites " + std::to_string(i) + " and " +
                               std::to_string(j) + " coincide");
      const double value = constants::mu0_over_4pi * sites[i].species.gamma *
                           sites[j].species.gamma * constants::hbar /
                           (r * r * r);
      g(i, j) = value;
      g(j, i) = value;
    }
  }
  return g;
}

Eigen::VectorXd zeeman_frequencies(std::span<const Site> sites, double B) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(sites.size()));
  for (std::size_t i = 0; i < sites.size(); ++i) w(i) = sites[i].species.gamma * B;
  return w;
}

double electron_splitting(const FieldParams& field) {
  return field.D - field.gamma_e * field.B;
}

CouplingSet make_couplings(std::span<const Site> sites, const FieldParams& field) {
  validate(field);
  CouplingSet c;
  c.g_e = hyperfine_couplings(sites, field);
  c.g_nn = nuclear_couplings(sites);
  c.omega_n = zeeman_frequencies(sites, field.B);
  c.spin.resize(static_cast<Eigen::Index>(sites.size()));
  for (std::size_t i = 0; i < sites.size(); ++i) c.spin(i) = sites[i].species.spin;
  c.omega_e = electron_splitting(field);
  return c;
}

}  // namespace vbdecoh
