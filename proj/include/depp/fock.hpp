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

// Exact sparse bosonic Fock states over labeled optical modes.
//
// A state is a map from occupation vectors (photon count per mode, in the
// order fixed by a ModeBasis) to complex amplitudes. Photon numbers in this
// library never exceed four, so the occupation basis stays tiny and every
// operation is exact up to double rounding.

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace depp {

using Complex = std::complex<double>;

/// Amplitudes below this magnitude are dropped from the sparse term map.
inline constexpr double kPruneThreshold = 1e-15;
/// Comparison tolerance for norms, isometry and density-matrix checks.
inline constexpr double kTolerance = 1e-12;
inline constexpr int kMaxPhotons = 4;

/// Raised when an internal invariant (normalization, positivity, ...) fails.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Party : std::uint8_t { A, B };
enum class Pol : std::uint8_t { H, V };

// Alice holds the a/c labels, Bob the b/d labels. a,b are transmission
// (input) paths, c,d are the circuit outputs seen by the detectors.
enum class Spatial : std::uint8_t { a1, a2, c1, c2, b1, b2, d1, d2 };

Party owner(Spatial s);
std::string_view to_string(Spatial s);
std::string_view to_string(Pol p);
std::string_view to_string(Party p);
Spatial parse_spatial(std::string_view text);

// A single optical mode. `slot` distinguishes otherwise identical modes that
// carry distinguishable photons (e.g. two PDC pairs in separate time bins);
// slot 0 is the ordinary, fully indistinguishable case.
class ModeId {
 public:
  ModeId(Spatial spatial, Pol pol, int slot = 0);
  // Checks that `party` owns `spatial`.
  ModeId(Party party, Spatial spatial, Pol pol, int slot = 0);

  Party party() const { return party_; }
  Spatial spatial() const { return spatial_; }
  Pol pol() const { return pol_; }
  int slot() const { return slot_; }

  /// "a1H", or "a1H#2" for slot 2.
  std::string label() const;

  friend auto operator<=>(const ModeId&, const ModeId&) = default;

 private:
  Party party_;
  Spatial spatial_;
  Pol pol_;
  std::uint8_t slot_;
};

class ModeBasis {
 public:
  /// Throws std::invalid_argument on an empty list or a repeated mode.
  explicit ModeBasis(std::vector<ModeId> modes);

  std::size_t size() const { return modes_.size(); }
  const ModeId& operator[](std::size_t i) const { return modes_[i]; }
  std::span<const ModeId> modes() const { return modes_; }

  std::optional<std::size_t> find(const ModeId& mode) const;
  std::size_t index_of(const ModeId& mode) const;  // throws if absent
  bool contains(Spatial s) const;

  friend bool operator==(const ModeBasis&, const ModeBasis&) = default;

 private:
  std::vector<ModeId> modes_;
};

/// a1H a1V a2H a2V b1H b1V b2H b2V, repeated once per slot.
ModeBasis transmission_basis(const std::vector<int>& slots = {0});
/// c1H c1V c2H c2V d1H d1V d2H d2V, repeated once per slot.
ModeBasis output_basis(const std::vector<int>& slots = {0});

using Occupation = std::vector<std::uint8_t>;

class FockState {
 public:
  using Terms = std::map<Occupation, Complex>;

  /// The zero vector on `basis`.
  explicit FockState(ModeBasis basis);
  /// Validates occupation lengths and photon bounds, prunes tiny amplitudes.
  FockState(ModeBasis basis, Terms terms);

  const ModeBasis& basis() const { return basis_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Complex amplitude(const Occupation& occ) const;
  double norm_squared() const;
  double norm() const;

  FockState scaled(Complex factor) const;
  /// Throws InvariantViolation on the zero state.
  FockState normalized() const;

  /// "+0.5 |a1H b1H> +0.5 |a1V b1V>" style rendering for diagnostics.
  std::string to_string() const;

 private:
  ModeBasis basis_;
  Terms terms_;
};

int photon_number(const Occupation& occ);
/// "a1H b1H", with "^n" for multiple occupation; "vac" for the vacuum.
std::string occupation_label(const ModeBasis& basis, const Occupation& occ);

FockState vacuum(ModeBasis basis);
/// Bosonic creation operator: n -> n+1 with factor sqrt(n+1). Unnormalized.
FockState create(const FockState& state, const ModeId& mode);

struct WeightedState {
  Complex coefficient;
  FockState state;
};
/// Termwise linear combination; not normalized. All parts share one basis.
FockState superpose(std::span<const WeightedState> parts);

/// <a|b>, antilinear in the first argument.
Complex inner(const FockState& a, const FockState& b);

bool approx_equal(const FockState& a, const FockState& b,
                  double tol = kTolerance);

// Linear map on creation operators: a_in[i]^dag -> sum_j U(j, i) a_out[j]^dag.
class ModeMap {
 public:
  ModeMap(ModeBasis input, ModeBasis output, Eigen::MatrixXcd matrix);
  static ModeMap identity(const ModeBasis& basis);

  const ModeBasis& input() const { return input_; }
  const ModeBasis& output() const { return output_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  bool is_isometry(double tol = kTolerance) const;

 private:
  ModeBasis input_;
  ModeBasis output_;
  Eigen::MatrixXcd matrix_;
};

/// Rewrites each term as a product of mapped creation operators acting on
/// the vacuum, carrying the sqrt(n!) factors exactly.
FockState apply_mode_map(const FockState& state, const ModeMap& map);

struct Branch {
  double weight = 0.0;
  FockState state;   // normalized
  std::string tag;   // provenance, e.g. "psi+" or "two-pair/no-error"
  std::vector<ModeId> lost;  // modes that leaked a photon, with multiplicity
};

// Ensemble of normalized pure states. Complete ensembles have weights summing
// to one; conditioned (post-selected) ensembles may be sub-normalized.
class MixedState {
 public:
  explicit MixedState(std::vector<Branch> branches, bool conditioned = false);
  static MixedState pure(FockState state, std::string tag = "pure");

  std::span<const Branch> branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }
  bool conditioned() const { return conditioned_; }
  double total_weight() const;
  const ModeBasis& basis() const;

 private:
  std::vector<Branch> branches_;
  bool conditioned_;
};

// Two-qubit polarization state of one Alice mode and one Bob mode, ordered
// {HH, HV, VH, VV} (Alice first).
class TwoQubitDensity {
 public:
  /// Throws InvariantViolation unless Hermitian, PSD and unit trace.
  explicit TwoQubitDensity(const Eigen::Matrix4cd& rho);

  const Eigen::Matrix4cd& matrix() const { return rho_; }
  double purity() const;
  /// arg(rho[VV, HH]): relative phase of a (|HH> + e^{i theta}|VV>) state.
  double relative_phase_vv_hh() const;

 private:
  Eigen::Matrix4cd rho_;
};

TwoQubitDensity reduce_to_polarization_pair(const MixedState& mixture,
                                            Spatial alice, Spatial bob);
TwoQubitDensity reduce_to_polarization_pair(const FockState& state,
                                            Spatial alice, Spatial bob);

double fidelity_phi_plus(const TwoQubitDensity& rho);

}  // namespace depp
