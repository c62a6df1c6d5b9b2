// Copyright 2026 The lohe-discrete Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lohe/framework.hpp"

#include <algorithm>
#include <limits>

namespace lohe {

ConfigSummary summarize(const SphereEnsemble &ens) {
  ConfigSummary cfg;
  cfg.beta = ens.kappa * ens.h;
  const auto diag = sphere_diagnostics(ens);
  cfg.initial_diameter = diag.diameter;
  cfg.initial_min_pair_inner = diag.min_pair_inner;
  for (const auto &w : ens.omegas) {
    cfg.free_flow_max_norm = std::max(cfg.free_flow_max_norm, w.norm());
  }
  return cfg;
}

ConfigSummary summarize(const UnitaryEnsemble &ens,
                        const UnitaryEnsemble *tilde) {
  ConfigSummary cfg;
  cfg.beta = ens.beta();
  cfg.initial_diameter = matrix_diameter(ens);
  if (tilde != nullptr) cfg.initial_diameter_tilde = matrix_diameter(*tilde);
  const double dh = hamiltonian_diameter(ens);
  if (ens.kappa > 0.0) {
    cfg.dh_over_kappa = dh / ens.kappa;
  } else {
    cfg.dh_over_kappa =
        dh == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  cfg.h_sum_defect = hamiltonian_sum_defect(ens);
  for (const auto &hm : ens.hamiltonians) {
    cfg.free_flow_max_norm = std::max(cfg.free_flow_max_norm, hm.norm());
  }
  return cfg;
}

}  // namespace lohe
