// Copyright (c) 2026 The logmppi authors
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

#include "logmppi/costs.hpp"

#include <stdexcept>

namespace logmppi {

void ControlCostSpec::validate() const {
  if (r_diag.size() == 0 || (r_diag.array() <= 0.0).any()) {
    throw std::invalid_argument("control weights must be positive");
  }
  if (!(nu > 0.0)) {
    throw std::invalid_argument("exploration divisor nu must be positive");
  }
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("temperature lambda must be positive");
  }
}

double cost_to_go(const std::vector<double>& stage_state_costs,
                  double terminal_cost, const Eigen::MatrixXd& nominal,
                  const Eigen::MatrixXd& perturbations,
                  const ControlCostSpec& spec) {
  const Eigen::Index horizon = nominal.rows();
  if (perturbations.rows() != horizon ||
      perturbations.cols() != nominal.cols() ||
      static_cast<Eigen::Index>(stage_state_costs.size()) != horizon ||
      spec.r_diag.size() != nominal.cols()) {
    throw std::invalid_argument("cost_to_go: inconsistent horizon or channel counts");
  }
  double acc = 0.0;
  for (Eigen::Index k = 0; k < horizon; ++k) {
    acc += stage_state_costs[static_cast<size_t>(k)] +
           control_penalty_sum(spec, nominal.row(k), perturbations.row(k));
  }
  return acc + terminal_cost;
}

}  // namespace logmppi
