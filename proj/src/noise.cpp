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

#include "depp/noise.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "depp/optics.hpp"

namespace depp {

namespace {

void require_probability(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

// Z on Bob: V -> -V on every Bob mode, exact sign.
ModeMap bob_phase_flip(const ModeBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].party() == Party::B && basis[i].pol() == Pol::V) {
      u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = -1.0;
    }
  }
  return ModeMap(basis, basis, std::move(u));
}

// X on Bob: HWP on each of Bob's spatial labels present in the basis.
ModeMap bob_bit_flip(const ModeBasis& basis) {
  std::vector<ModeMap> maps;
  for (Spatial s : {Spatial::b1, Spatial::b2, Spatial::d1, Spatial::d2}) {
    if (basis.contains(s)) maps.push_back(hwp(basis, s));
  }
  if (maps.empty()) return ModeMap::identity(basis);
  return compose(maps);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

void BellMixtureParams::validate() const {
  require_probability(alpha, "alpha");
  require_probability(beta, "beta");
  require_probability(delta, "delta");
  require_probability(eta, "eta");
  if (std::abs(alpha + beta + delta + eta - 1.0) > kTolerance) {
    throw std::invalid_argument("alpha + beta + delta + eta must equal 1");
  }
}

DriftParams DriftParams::from_path_difference(double k, double delta_l) {
  return DriftParams{k * delta_l};
}

double DriftParams::reduced_phi() const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

void LossParams::validate() const { require_probability(m, "m"); }

MixedState bell_mixture_channel(const FockState& input,
                                const BellMixtureParams& params) {
  params.validate();
  const ModeBasis& basis = input.basis();
  const ModeMap z = bob_phase_flip(basis);
  const ModeMap x = bob_bit_flip(basis);

  std::vector<Branch> branches;
  auto add = [&](double w, FockState s, const char* tag) {
    if (w > 0.0) branches.push_back({w, std::move(s), tag, {}});
  };
  add(params.alpha, input, "phi+");
  add(params.beta, apply_mode_map(input, z), "phi-");
  add(params.delta, apply_mode_map(input, x), "psi+");
  add(params.eta, apply_mode_map(apply_mode_map(input, z), x), "psi-");
  return MixedState(std::move(branches));
}

FockState spatial_drift(const FockState& state, const DriftParams& params) {
  if (!std::isfinite(params.phi)) {
    throw std::invalid_argument("drift phase must be finite");
  }
  std::vector<ModeId> lower;
  for (const auto& m : state.basis().modes()) {
    if (m.spatial() == Spatial::a2) lower.push_back(m);
  }
  return apply_mode_map(state, phase_shift(state.basis(), lower, params.phi));
}

MixedState spatial_drift(const MixedState& mixture, const DriftParams& params) {
  std::vector<Branch> out;
  out.reserve(mixture.size());
  for (const auto& b : mixture.branches()) {
    out.push_back({b.weight, spatial_drift(b.state, params), b.tag, b.lost});
  }
  return MixedState(std::move(out), mixture.conditioned());
}

MixedState two_pair_bitflip_ensemble(const PdcParams& params, double e,
                                     EmissionModel model) {
  params.validate();
  require_probability(e, "e");
  const ModeBasis basis = emission_basis(model);
  const int first_slot = model == EmissionModel::bosonic ? 0 : 1;
  const int second_slot = model == EmissionModel::bosonic ? 0 : 2;

  auto build = [&](bool flip_first, bool flip_second) {
    PairOperator a{first_slot, flip_first, params.r, params.pump_phase};
    PairOperator b{second_slot, flip_second, params.r, params.pump_phase};
    return apply_pair_operator(apply_pair_operator(vacuum(basis), a), b)
        .normalized();
  };

  std::vector<Branch> branches;
  auto add = [&](double w, bool f1, bool f2, const char* tag) {
    if (w > 0.0) branches.push_back({w, build(f1, f2), tag, {}});
  };
  const double ok = 1.0 - e;
  add(ok * ok, false, false, "no-error");
  if (model == EmissionModel::bosonic) {
    add(2.0 * e * ok, false, true, "one-error");
  } else {
    add(e * ok, true, false, "one-error(pair1)");
    add(e * ok, false, true, "one-error(pair2)");
  }
  add(e * e, true, true, "two-error");
  return MixedState(std::move(branches));
}

MixedState single_pair_bitflip_ensemble(const PdcParams& params, double e,
                                        EmissionModel model) {
  params.validate();
  require_probability(e, "e");
  const int slot = model == EmissionModel::bosonic ? 0 : 1;
  auto build = [&](bool flipped) {
    PairOperator op{slot, flipped, params.r, params.pump_phase};
    return apply_pair_operator(vacuum(emission_basis(model)), op).normalized();
  };
  std::vector<Branch> branches;
  if (1.0 - e > 0.0) branches.push_back({1.0 - e, build(false), "no-error", {}});
  if (e > 0.0) branches.push_back({e, build(true), "one-error", {}});
  return MixedState(std::move(branches));
}

MixedState photon_loss(const MixedState& mixture, const LossParams& params) {
  params.validate();
  const double m = params.m;
  const double keep = 1.0 - m;

  std::vector<Branch> out;
  for (const auto& branch : mixture.branches()) {
    const ModeBasis& basis = branch.state.basis();
    // Environment occupation (photons leaked per mode) -> surviving terms.
    std::map<Occupation, FockState::Terms> by_env;

    for (const auto& [occ, amp] : branch.state.terms()) {
      std::vector<std::size_t> occupied;
      for (std::size_t i = 0; i < occ.size(); ++i) {
        if (occ[i] > 0) occupied.push_back(i);
      }
      Occupation lost(occ.size(), 0);
      // Odometer over lost counts 0..occ[i] on the occupied modes.
      while (true) {
        Complex a = amp;
        Occupation kept = occ;
        for (std::size_t i : occupied) {
          const int n = occ[i];
          const int l = lost[i];
          a *= std::sqrt(binomial(n, l) * std::pow(keep, n - l) *
                         std::pow(m, l));
          kept[i] = static_cast<std::uint8_t>(n - l);
        }
        if (a != Complex{}) by_env[lost][kept] += a;

        std::size_t k = 0;
        for (; k < occupied.size(); ++k) {
          const std::size_t i = occupied[k];
          if (lost[i] < occ[i]) {
            ++lost[i];
            break;
          }
          lost[i] = 0;
        }
        if (k == occupied.size()) break;
      }
    }

    for (auto& [env, terms] : by_env) {
      FockState survivor(basis, std::move(terms));
      const double p = survivor.norm_squared();
      if (survivor.empty() || p == 0.0) continue;
      Branch b{branch.weight * p, survivor.normalized(), branch.tag,
               branch.lost};
      std::string lost_label;
      for (std::size_t i = 0; i < env.size(); ++i) {
        for (int c = 0; c < env[i]; ++c) {
          b.lost.push_back(basis[i]);
          lost_label += (lost_label.empty() ? "" : ",") + basis[i].label();
        }
      }
      if (!lost_label.empty()) b.tag += "/lost:" + lost_label;
      out.push_back(std::move(b));
    }
  }
  return MixedState(std::move(out), mixture.conditioned());
}

std::string_view to_string(LossCategory c) {
  switch (c) {
    case LossCategory::none: return "none";
    case LossCategory::one_lost: return "one-lost";
    case LossCategory::perfect_pair_kept: return "perfect-pair-kept";
    case LossCategory::cross_pair_kept: return "cross-pair-kept";
    case LossCategory::same_party_kept: return "same-party-kept";
    case LossCategory::unresolved: return "unresolved";
    case LossCategory::three_or_more_lost: return "three-or-more-lost";
  }
  return "?";
}

LossCategory classify_loss(const Branch& branch) {
  const auto& lost = branch.lost;
  if (lost.empty()) return LossCategory::none;
  if (lost.size() == 1) return LossCategory::one_lost;
  if (lost.size() > 2) return LossCategory::three_or_more_lost;
  if (lost[0].party() == lost[1].party()) return LossCategory::same_party_kept;
  if (lost[0].slot() != lost[1].slot()) return LossCategory::cross_pair_kept;
  if (lost[0].slot() == 0) return LossCategory::unresolved;
  return LossCategory::perfect_pair_kept;
}

}  // namespace depp
