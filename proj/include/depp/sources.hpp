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

#pragma once

// Photon-pair sources: the ideal polarization/spatial hyperentangled pair and
// the two-pair-truncated parametric down-conversion emission ensemble.

#include <string>

#include "depp/fock.hpp"

namespace depp {

struct PdcParams {
  double p = 0.1;           // single-pair emission probability
  double r = 1.0;           // relative lower-path (a2 b2) emission amplitude
  double pump_phase = 0.0;  // phase between upper and lower emission

  /// Requires p in (0,1], p + p^2 <= 1, r >= 0 and finite values.
  void validate() const;
};

// How the two photon pairs of a double emission are represented.
//   bosonic:       both pairs share the same modes; S^2|0> with bunching.
//   pair_resolved: each pair lives in its own distinguishable slot (1 and 2),
//                  S1 S2 |0>; photons can be traced back to their pair.
enum class EmissionModel { bosonic, pair_resolved };

std::string_view to_string(EmissionModel model);

/// Transmission basis used by all branches of an emission ensemble.
ModeBasis emission_basis(EmissionModel model);

// One application of the pair-creation polynomial
//   S = a1H b1H + a1V b1V + r e^{i phase} (a2H b2H + a2V b2V)
// on the modes of `slot`. With bob_flipped, Bob's polarization is exchanged
// on every term (a pair that suffered a bit flip).
struct PairOperator {
  int slot = 0;
  bool bob_flipped = false;
  double r = 1.0;
  double pump_phase = 0.0;
};

FockState apply_pair_operator(const FockState& state, const PairOperator& op);

/// (|HH> + |VV>)(|a1 b1> + |a2 b2>) / 2 on transmission_basis().
FockState ideal_hyper_pair();

/// Normalized S|0>, on the emission basis of `model` (slot 1 if resolved).
FockState single_pair_state(const PdcParams& params,
                            EmissionModel model = EmissionModel::bosonic);

/// Normalized S^2|0> with exact double-occupation factors.
FockState pdc_two_pair_state(const PdcParams& params);

/// Normalized S1 S2 |0> over two distinguishable slots.
FockState pair_resolved_two_pair_state(const PdcParams& params);

/// Branches {vacuum: 1-p-p^2, one-pair: p, two-pair: p^2}.
MixedState pdc_emission_ensemble(const PdcParams& params,
                                 EmissionModel model = EmissionModel::bosonic);

}  // namespace depp
