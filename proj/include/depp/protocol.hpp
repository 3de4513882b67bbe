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

// Deterministic polarization purification with spatial entanglement.
//
// Circuit (both parties apply the mirror-image setup):
//   HWP1 on a1, HWP2 on b1
//   PBSa: a1, a2 -> c1, c2        PBSb: b1, b2 -> d1, d2
//   HWP3 on c2, HWP4 on d2
//
// HWP3/HWP4 sit on the reflected ports. That is the only placement that both
// returns phi+ (x) (|a1 b1> + |a2 b2>) to phi+ (x) (|c1 d1> + |c2 d2>) and
// turns the psi+- inputs into phi+ on the c2d1 / c1d2 patterns: any bit flip
// is moved into the spatial degree of freedom and undone on the way out,
// while phase flips become a relative sign between spatial patterns that the
// detectors never see.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "depp/fock.hpp"
#include "depp/noise.hpp"
#include "depp/optics.hpp"
#include "depp/sources.hpp"

namespace depp {

// ---- circuit ---------------------------------------------------------------

struct CircuitStage {
  std::string label;
  std::vector<ElementSpec> elements;
};

std::vector<CircuitStage> depp_circuit_stages();

/// Full circuit on `input` (any slot set of the transmission labels).
ModeMap build_depp_circuit(const ModeBasis& input = transmission_basis());

struct TraceStep {
  std::string label;
  FockState state;
};

/// Input followed by the state after each of the three stages.
std::vector<TraceStep> trace_evolution(const FockState& input);

MixedState propagate(const MixedState& mixture, const ModeMap& map);

// ---- detection -------------------------------------------------------------

struct DetectionPattern {
  std::array<int, 4> counts{};  // photons in c1, c2, d1, d2 (all polarizations)

  int total() const;
  /// "c1d1" style name for single-pair coincidences, "c1c2d1d2" for the
  /// four-mode coincidence, "1,0,2,1" otherwise.
  std::string name() const;

  friend auto operator<=>(const DetectionPattern&,
                          const DetectionPattern&) = default;
};

enum class PatternClass { four_mode, pair_coincidence, rejected };

std::string_view to_string(PatternClass c);
PatternClass classify_pattern(const DetectionPattern& pattern);
DetectionPattern pattern_of(const ModeBasis& basis, const Occupation& occ);

struct PatternOutcome {
  DetectionPattern pattern;
  PatternClass cls = PatternClass::rejected;
  double probability = 0.0;
  MixedState conditional;  // conditioned, weights sum to one
};

/// Photon-number projection per output label (polarization coherence kept).
/// Outcomes are sorted by pattern; probabilities sum to the total weight.
std::vector<PatternOutcome> classify_detection(const MixedState& output);
std::vector<PatternOutcome> classify_detection(const FockState& output);

/// The (Alice, Bob) labels whose polarization pair is reported for an
/// accepted pattern: the occupied ones for a pair coincidence, c1/d1 for the
/// four-mode coincidence.
std::pair<Spatial, Spatial> reported_pair(const DetectionPattern& pattern);

// ---- reports ---------------------------------------------------------------

struct ProvenanceEntry {
  std::string tag;
  double probability = 0.0;  // joint probability of branch and pattern
  double fidelity = 0.0;     // branch-conditional fidelity to phi+
};

struct PatternReport {
  DetectionPattern pattern;
  PatternClass cls = PatternClass::rejected;
  double probability = 0.0;
  std::optional<TwoQubitDensity> rho;  // accepted patterns only
  double fidelity = 0.0;
  double fidelity_compensated = 0.0;
  double purity = 0.0;
  double relative_phase = 0.0;  // arg rho[VV,HH] before compensation
  std::vector<ProvenanceEntry> provenance;
};

struct PurificationReport {
  double phi = 0.0;
  std::vector<PatternReport> patterns;
  double accepted_probability = 0.0;
  double rejected_probability = 0.0;
  double fidelity = 0.0;              // probability-weighted over accepted
  double fidelity_compensated = 0.0;
};

/// Phase compensation: e^{-i phi} on Bob's output V modes.
ModeMap compensation_map(const ModeBasis& output, double phi);

/// Runs the circuit on `input` (already through the channel), classifies,
/// and reduces every accepted pattern. `drift.phi` is the compensation angle.
PurificationReport purify(const MixedState& input, const DriftParams& drift);

// ---- two-pair emission -----------------------------------------------------

/// ((1-e)^2 + e^2/4) / ((1-e)^2 + e^2)
double eq9_fidelity(double e);

/// Four-photon simulation: bit-flip ensemble of S^2|0>, circuit, four-mode
/// post-selection, reduction of (c1, d1), fidelity to phi+.
double eq9_oracle(double e);

/// Probability that `state` (transmission basis) yields the four-mode
/// coincidence after the circuit.
double four_mode_probability(const FockState& state);

/// (p(1-m)^2 + 2p^2 m^2 (1-m)^2) / (p(1-m)^2 + 4p^2 m^2 (1-m)^2)
double eq10_fidelity(double p, double m);

struct PdcReport {
  PdcParams params;
  double e = 0.0;
  double m = 0.0;
  PurificationReport detection;  // pair-resolved emission model

  double pair_probability = 0.0;  // single-pair-coincidence acceptance
  double four_mode_probability = 0.0;
  double rejected_probability = 0.0;

  double f_closed = 0.0;  // eq10_fidelity, NaN when undefined
  // Simulated fidelity where only single-pair events and two-pair events
  // with a surviving perfect pair are credited.
  double f_credited = 0.0;
  // Simulated fidelity over all accepted two-photon events.
  double f_exact = 0.0;
  double deviation = 0.0;            // f_exact - f_credited
  double predicted_deviation = 0.0;  // 0.5 p^2 m^2 (1-m)^2 / denominator
  double f_exact_bosonic = 0.0;      // same chain, bosonic two-pair emission
  double pair_probability_bosonic = 0.0;

  // Accepted pair-coincidence probability by origin.
  double w_single = 0.0;
  double w_perfect = 0.0;
  double w_cross = 0.0;
  double w_other = 0.0;
};

/// Emission ensemble (with per-pair bit flips at rate e) for `model`.
MixedState pdc_channel_ensemble(const PdcParams& params, double e,
                                EmissionModel model);

/// Source -> bit flips -> loss -> circuit -> classification.
PdcReport pdc_pipeline(const PdcParams& params, double e, double m);

// ---- reference states and entanglement swapping ----------------------------

/// (c1H d1H + c1V d1V)(c2H d2H + c2V d2V)|0>, normalized, output_basis().
FockState psi1_reference();
/// (c1H d2H + c1V d2V)(c2H d1H + c2V d1V)|0>, normalized, output_basis().
FockState psi2_reference();

enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };
std::string_view to_string(BellState b);

/// Two-qubit Bell state in the {HH, HV, VH, VV} basis.
Eigen::Vector4cd bell_vector(BellState b);

/// Polarization Bell state (x) (|a1 b1> + |a2 b2>)/sqrt(2) on the
/// transmission basis.
FockState hyper_pair_with(BellState b);

struct SwappingTable {
  // probability[i][j]: Alice (c1,c2) outcome i and Bob (d1,d2) outcome j,
  // both in BellState order.
  std::array<std::array<double, 4>, 4> probability{};

  double mutual_information_bits() const;
};

/// Ideal Bell-basis measurement of Alice's (c1, c2) photons jointly with the
/// Bell decomposition of Bob's (d1, d2) photons. Requires a four-mode state.
SwappingTable swapping_correlation(const FockState& state);

}  // namespace depp
