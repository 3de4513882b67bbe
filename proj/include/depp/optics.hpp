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

// Passive linear-optical elements as ModeMaps. Every element acts on all
// slots of its labels present in the basis it is built on.

#include <span>
#include <string>
#include <vector>

#include "depp/fock.hpp"

namespace depp {

/// Half-wave plate at 45 degrees: exchanges H and V of `spatial`, no phase.
ModeMap hwp(const ModeBasis& basis, Spatial spatial);

/// Polarizing beam splitter, transmitting H and reflecting V:
///   upper H -> transmit H,  upper V -> reflect V,
///   lower H -> reflect H,   lower V -> transmit V.
/// The output basis is the input basis with the two input labels renamed to
/// the two output labels. Reflection carries no phase.
ModeMap pbs(const ModeBasis& basis, Spatial in_upper, Spatial in_lower,
            Spatial out_transmit, Spatial out_reflect);

/// Multiplies each listed mode's creation operator by e^{i phi}.
ModeMap phase_shift(const ModeBasis& basis, std::span<const ModeId> modes,
                    double phi);

/// Sequential composition; maps.front() acts first.
ModeMap compose(std::span<const ModeMap> maps);

enum class ElementKind { hwp, pbs, phase };

struct ElementSpec {
  ElementKind kind = ElementKind::hwp;
  // hwp: one label. pbs: {in_upper, in_lower, out_transmit, out_reflect}.
  std::vector<Spatial> spatial;
  std::vector<ModeId> modes;  // phase only
  double phase = 0.0;         // phase only, radians
  std::string name;           // e.g. "HWP1"

  /// Throws std::invalid_argument when the label count is wrong for `kind`.
  void validate() const;
};

ModeMap realize(const ElementSpec& spec, const ModeBasis& basis);

}  // namespace depp
