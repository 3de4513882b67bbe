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

// Channel models: Bell-diagonal polarization noise, relative spatial phase
// drift, pair-level bit flips for PDC emissions, and per-photon loss.

#include "depp/fock.hpp"
#include "depp/sources.hpp"

namespace depp {

struct BellMixtureParams {
  double alpha = 1.0;  // phi+
  double beta = 0.0;   // phi-
  double delta = 0.0;  // psi+
  double eta = 0.0;    // psi-

  void validate() const;
};

struct DriftParams {
  double phi = 0.0;  // radians

  /// phi = k * delta_l (wave vector times path-length difference).
  static DriftParams from_path_difference(double k, double delta_l);
  /// phi reduced to [0, 2 pi).
  double reduced_phi() const;
};

struct LossParams {
  double m = 0.0;  // per-photon loss probability

  void validate() const;
};

/// Branches phi+/phi-/psi+/psi- with weights (alpha, beta, delta, eta),
/// obtained by applying {I, Z_B, X_B, X_B Z_B} to Bob's polarization modes.
/// Zero-weight branches are omitted.
MixedState bell_mixture_channel(const FockState& input,
                                const BellMixtureParams& params);

/// One relative factor e^{i phi} on the lower path: the phase is put on
/// Alice's a2 modes (every slot), which only the |a2 b2> branch occupies.
FockState spatial_drift(const FockState& state, const DriftParams& params);
MixedState spatial_drift(const MixedState& mixture, const DriftParams& params);

/// {no-error: (1-e)^2, one-error: 2e(1-e), two-error: e^2} built from
/// S^2, S S', S'^2 where S' is S with Bob's polarization flipped. The
/// pair-resolved model splits one-error by which pair flipped.
MixedState two_pair_bitflip_ensemble(
    const PdcParams& params, double e,
    EmissionModel model = EmissionModel::bosonic);

/// {no-error: 1-e, one-error: e} for a single emitted pair.
MixedState single_pair_bitflip_ensemble(
    const PdcParams& params, double e,
    EmissionModel model = EmissionModel::bosonic);

/// Independent loss of every photon with probability m (beam splitter to an
/// environment, environment traced). One output branch per environment
/// occupation pattern; Branch::lost records which modes leaked.
MixedState photon_loss(const MixedState& mixture, const LossParams& params);

enum class LossCategory {
  none,
  one_lost,
  perfect_pair_kept,  // both lost photons came from the same pair
  cross_pair_kept,    // one photon lost from each pair, on opposite sides
  same_party_kept,    // both lost photons on one side
  unresolved,         // one per side, pairs indistinguishable (slot 0)
  three_or_more_lost,
};

std::string_view to_string(LossCategory c);
LossCategory classify_loss(const Branch& branch);

}  // namespace depp
