// Copyright 2026 The depp-sim Authors
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

#include "depp/sources.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace depp {

void PdcParams::validate() const {
  if (!std::isfinite(p) || !(p > 0.0) || p > 1.0) {
    throw std::invalid_argument("pdc: p must lie in (0, 1]");
  }
  if (p + p * p > 1.0 + kTolerance) {
    throw std::invalid_argument("pdc: p + p^2 exceeds 1");
  }
  if (!std::isfinite(r) || r < 0.0) {
    throw std::invalid_argument("pdc: r must be finite and non-negative");
  }
  if (!std::isfinite(pump_phase)) {
    throw std::invalid_argument("pdc: pump_phase must be finite");
  }
}

std::string_view to_string(EmissionModel model) {
  return model == EmissionModel::bosonic ? "bosonic" : "pair_resolved";
}

ModeBasis emission_basis(EmissionModel model) {
  return model == EmissionModel::bosonic ? transmission_basis({0})
                                         : transmission_basis({1, 2});
}

FockState apply_pair_operator(const FockState& state, const PairOperator& op) {
  struct PathTerm {
    Spatial a, b;
    Pol pol;
    Complex coefficient;
  };
  const Complex lower = std::polar(op.r, op.pump_phase);
  const std::array<PathTerm, 4> terms{{
      {Spatial::a1, Spatial::b1, Pol::H, 1.0},
      {Spatial::a1, Spatial::b1, Pol::V, 1.0},
      {Spatial::a2, Spatial::b2, Pol::H, lower},
      {Spatial::a2, Spatial::b2, Pol::V, lower},
  }};
  std::vector<WeightedState> parts;
  for (const auto& t : terms) {
    if (t.coefficient == Complex{}) continue;
    const Pol bob_pol =
        op.bob_flipped ? (t.pol == Pol::H ? Pol::V : Pol::H) : t.pol;
    FockState s = create(state, ModeId(t.a, t.pol, op.slot));
    s = create(s, ModeId(t.b, bob_pol, op.slot));
    parts.push_back({t.coefficient, std::move(s)});
  }
  return superpose(parts);
}

FockState ideal_hyper_pair() {
  return apply_pair_operator(vacuum(transmission_basis()), PairOperator{})
      .normalized();
}

FockState single_pair_state(const PdcParams& params, EmissionModel model) {
  const int slot = model == EmissionModel::bosonic ? 0 : 1;
  PairOperator op{slot, false, params.r, params.pump_phase};
  return apply_pair_operator(vacuum(emission_basis(model)), op).normalized();
}

FockState pdc_two_pair_state(const PdcParams& params) {
  PairOperator op{0, false, params.r, params.pump_phase};
  FockState s = apply_pair_operator(vacuum(transmission_basis()), op);
  return apply_pair_operator(s, op).normalized();
}

FockState pair_resolved_two_pair_state(const PdcParams& params) {
  PairOperator first{1, false, params.r, params.pump_phase};
  PairOperator second{2, false, params.r, params.pump_phase};
  FockState s = apply_pair_operator(
      vacuum(emission_basis(EmissionModel::pair_resolved)), first);
  return apply_pair_operator(s, second).normalized();
}

MixedState pdc_emission_ensemble(const PdcParams& params,
                                 EmissionModel model) {
  params.validate();
  const double p = params.p;
  const double p_two = p * p;
  const double p_vac = std::max(0.0, 1.0 - p - p_two);

  std::vector<Branch> branches;
  if (p_vac > 0.0) {
    branches.push_back({p_vac, vacuum(emission_basis(model)), "vacuum", {}});
  }
  branches.push_back({p, single_pair_state(params, model), "one-pair", {}});
  FockState two = model == EmissionModel::bosonic
                      ? pdc_two_pair_state(params)
                      : pair_resolved_two_pair_state(params);
  branches.push_back({p_two, std::move(two), "two-pair", {}});
  return MixedState(std::move(branches));
}

}  // namespace depp
