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

#include "depp/protocol.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace depp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ElementSpec hwp_spec(Spatial s, std::string name) {
  return ElementSpec{ElementKind::hwp, {s}, {}, 0.0, std::move(name)};
}

ElementSpec pbs_spec(Spatial up, Spatial low, Spatial tr, Spatial rf,
                     std::string name) {
  return ElementSpec{ElementKind::pbs, {up, low, tr, rf}, {}, 0.0,
                     std::move(name)};
}

ModeMap realize_stage(const CircuitStage& stage, const ModeBasis& basis) {
  std::vector<ModeMap> maps;
  ModeBasis current = basis;
  for (const auto& el : stage.elements) {
    maps.push_back(realize(el, current));
    current = maps.back().output();
  }
  return compose(maps);
}

int spatial_slot(Spatial s) {
  switch (s) {
    case Spatial::c1: return 0;
    case Spatial::c2: return 1;
    case Spatial::d1: return 2;
    case Spatial::d2: return 3;
    default: return -1;
  }
}

}  // namespace

std::vector<CircuitStage> depp_circuit_stages() {
  using S = Spatial;
  return {
      {"HWP1,HWP2", {hwp_spec(S::a1, "HWP1"), hwp_spec(S::b1, "HWP2")}},
      {"PBSa,PBSb",
       {pbs_spec(S::a1, S::a2, S::c1, S::c2, "PBSa"),
        pbs_spec(S::b1, S::b2, S::d1, S::d2, "PBSb")}},
      {"HWP3,HWP4", {hwp_spec(S::c2, "HWP3"), hwp_spec(S::d2, "HWP4")}},
  };
}

ModeMap build_depp_circuit(const ModeBasis& input) {
  std::vector<ModeMap> maps;
  ModeBasis current = input;
  for (const auto& stage : depp_circuit_stages()) {
    maps.push_back(realize_stage(stage, current));
    current = maps.back().output();
  }
  return compose(maps);
}

std::vector<TraceStep> trace_evolution(const FockState& input) {
  std::vector<TraceStep> steps;
  steps.push_back({"input", input});
  for (const auto& stage : depp_circuit_stages()) {
    const FockState& prev = steps.back().state;
    steps.push_back(
        {stage.label, apply_mode_map(prev, realize_stage(stage, prev.basis()))});
  }
  return steps;
}

MixedState propagate(const MixedState& mixture, const ModeMap& map) {
  std::vector<Branch> out;
  out.reserve(mixture.size());
  for (const auto& b : mixture.branches()) {
    out.push_back({b.weight, apply_mode_map(b.state, map), b.tag, b.lost});
  }
  return MixedState(std::move(out), mixture.conditioned());
}

int DetectionPattern::total() const {
  return counts[0] + counts[1] + counts[2] + counts[3];
}

std::string DetectionPattern::name() const {
  static constexpr const char* labels[] = {"c1", "c2", "d1", "d2"};
  const auto cls = classify_pattern(*this);
  if (cls == PatternClass::pair_coincidence) {
    std::string s;
    for (int i = 0; i < 4; ++i) {
      if (counts[i] == 1) s += labels[i];
    }
    return s;
  }
  if (cls == PatternClass::four_mode) return "c1c2d1d2";
  return std::to_string(counts[0]) + "," + std::to_string(counts[1]) + "," +
         std::to_string(counts[2]) + "," + std::to_string(counts[3]);
}

std::string_view to_string(PatternClass c) {
  switch (c) {
    case PatternClass::four_mode: return "FOUR_MODE";
    case PatternClass::pair_coincidence: return "PAIR_COINCIDENCE";
    case PatternClass::rejected: return "REJECTED";
  }
  return "?";
}

PatternClass classify_pattern(const DetectionPattern& p) {
  const auto& n = p.counts;
  if (n == std::array<int, 4>{1, 1, 1, 1}) return PatternClass::four_mode;
  const int c_total = n[0] + n[1];
  const int d_total = n[2] + n[3];
  const bool single_c = c_total == 1 && n[0] <= 1 && n[1] <= 1;
  const bool single_d = d_total == 1 && n[2] <= 1 && n[3] <= 1;
  if (single_c && single_d) return PatternClass::pair_coincidence;
  return PatternClass::rejected;
}

DetectionPattern pattern_of(const ModeBasis& basis, const Occupation& occ) {
  DetectionPattern p;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i] == 0) continue;
    const int k = spatial_slot(basis[i].spatial());
    if (k < 0) {
      throw std::invalid_argument(
          "classify_detection: photon in non-output mode " + basis[i].label());
    }
    p.counts[static_cast<std::size_t>(k)] += occ[i];
  }
  return p;
}

std::vector<PatternOutcome> classify_detection(const MixedState& output) {
  struct Accum {
    double probability = 0.0;
    std::vector<Branch> branches;
  };
  std::map<DetectionPattern, Accum> by_pattern;

  for (const auto& b : output.branches()) {
    const ModeBasis& basis = b.state.basis();
    std::map<DetectionPattern, FockState::Terms> split;
    for (const auto& [occ, amp] : b.state.terms()) {
      split[pattern_of(basis, occ)].emplace(occ, amp);
    }
    for (auto& [pattern, terms] : split) {
      FockState part(basis, std::move(terms));
      const double p = part.norm_squared();
      if (part.empty() || p == 0.0) continue;
      auto& acc = by_pattern[pattern];
      acc.probability += b.weight * p;
      acc.branches.push_back({b.weight * p, part.normalized(), b.tag, b.lost});
    }
  }

  std::vector<PatternOutcome> out;
  out.reserve(by_pattern.size());
  for (auto& [pattern, acc] : by_pattern) {
    if (acc.probability <= 0.0) continue;
    for (auto& b : acc.branches) b.weight /= acc.probability;
    out.push_back({pattern, classify_pattern(pattern), acc.probability,
                   MixedState(std::move(acc.branches), true)});
  }
  return out;
}

std::vector<PatternOutcome> classify_detection(const FockState& output) {
  return classify_detection(MixedState::pure(output));
}

std::pair<Spatial, Spatial> reported_pair(const DetectionPattern& pattern) {
  switch (classify_pattern(pattern)) {
    case PatternClass::four_mode:
      return {Spatial::c1, Spatial::d1};
    case PatternClass::pair_coincidence:
      return {pattern.counts[0] == 1 ? Spatial::c1 : Spatial::c2,
              pattern.counts[2] == 1 ? Spatial::d1 : Spatial::d2};
    case PatternClass::rejected:
      break;
  }
  throw std::invalid_argument("reported_pair: pattern " + pattern.name() +
                              " is rejected");
}

ModeMap compensation_map(const ModeBasis& output, double phi) {
  std::vector<ModeId> bob_v;
  for (const auto& m : output.modes()) {
    if (m.party() == Party::B && m.pol() == Pol::V) bob_v.push_back(m);
  }
  return phase_shift(output, bob_v, -phi);
}

namespace {

PurificationReport analyze(const std::vector<PatternOutcome>& outcomes,
                           double phi) {
  PurificationReport report;
  report.phi = phi;
  double f_sum = 0.0;
  double fc_sum = 0.0;

  for (const auto& o : outcomes) {
    PatternReport pr;
    pr.pattern = o.pattern;
    pr.cls = o.cls;
    pr.probability = o.probability;
    if (o.cls == PatternClass::rejected) {
      pr.fidelity = pr.fidelity_compensated = pr.purity = pr.relative_phase =
          kNaN;
      report.rejected_probability += o.probability;
      for (const auto& b : o.conditional.branches()) {
        pr.provenance.push_back({b.tag, o.probability * b.weight, kNaN});
      }
      report.patterns.push_back(std::move(pr));
      continue;
    }

    const auto [alice, bob] = reported_pair(o.pattern);
    pr.rho = reduce_to_polarization_pair(o.conditional, alice, bob);
    pr.fidelity = fidelity_phi_plus(*pr.rho);
    pr.purity = pr.rho->purity();
    pr.relative_phase = pr.rho->relative_phase_vv_hh();

    const ModeMap comp = compensation_map(o.conditional.basis(), phi);
    const MixedState compensated = propagate(o.conditional, comp);
    pr.fidelity_compensated = fidelity_phi_plus(
        reduce_to_polarization_pair(compensated, alice, bob));

    for (const auto& b : o.conditional.branches()) {
      const double fb =
          fidelity_phi_plus(reduce_to_polarization_pair(b.state, alice, bob));
      pr.provenance.push_back({b.tag, o.probability * b.weight, fb});
    }

    report.accepted_probability += o.probability;
    f_sum += o.probability * pr.fidelity;
    fc_sum += o.probability * pr.fidelity_compensated;
    report.patterns.push_back(std::move(pr));
  }
  if (report.accepted_probability > 0.0) {
    report.fidelity = f_sum / report.accepted_probability;
    report.fidelity_compensated = fc_sum / report.accepted_probability;
  } else {
    report.fidelity = report.fidelity_compensated = kNaN;
  }
  return report;
}

void require_probability(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

void append_scaled(std::vector<Branch>& out, double weight,
                   const MixedState& part, const std::string& prefix) {
  if (weight <= 0.0) return;
  for (const auto& b : part.branches()) {
    out.push_back({weight * b.weight, b.state, prefix + "/" + b.tag, b.lost});
  }
}

}  // namespace

PurificationReport purify(const MixedState& input, const DriftParams& drift) {
  if (!std::isfinite(drift.phi)) {
    throw std::invalid_argument("purify: drift phase must be finite");
  }
  const ModeMap circuit = build_depp_circuit(input.basis());
  return analyze(classify_detection(propagate(input, circuit)), drift.phi);
}

double eq9_fidelity(double e) {
  require_probability(e, "e");
  const double ok = (1.0 - e) * (1.0 - e);
  return (ok + e * e / 4.0) / (ok + e * e);
}

double eq9_oracle(double e) {
  const PdcParams ideal{0.1, 1.0, 0.0};
  const MixedState ensemble =
      two_pair_bitflip_ensemble(ideal, e, EmissionModel::bosonic);
  const ModeMap circuit = build_depp_circuit(ensemble.basis());
  for (const auto& o : classify_detection(propagate(ensemble, circuit))) {
    if (o.cls != PatternClass::four_mode) continue;
    return fidelity_phi_plus(
        reduce_to_polarization_pair(o.conditional, Spatial::c1, Spatial::d1));
  }
  throw InvariantViolation("eq9_oracle: no four-mode coincidence");
}

double four_mode_probability(const FockState& state) {
  const FockState out = apply_mode_map(state, build_depp_circuit(state.basis()));
  double p = 0.0;
  for (const auto& o : classify_detection(out)) {
    if (o.cls == PatternClass::four_mode) p += o.probability;
  }
  return p;
}

double eq10_fidelity(double p, double m) {
  if (!std::isfinite(p) || !(p > 0.0) || p > 1.0) {
    throw std::invalid_argument("eq10: p must lie in (0, 1]");
  }
  require_probability(m, "m");
  if (m >= 1.0) throw std::invalid_argument("eq10: undefined for m = 1");
  const double keep2 = (1.0 - m) * (1.0 - m);
  const double two = p * p * m * m * keep2;
  return (p * keep2 + 2.0 * two) / (p * keep2 + 4.0 * two);
}

MixedState pdc_channel_ensemble(const PdcParams& params, double e,
                                EmissionModel model) {
  params.validate();
  require_probability(e, "e");
  const double p = params.p;
  const double p_two = p * p;
  const double p_vac = std::max(0.0, 1.0 - p - p_two);

  std::vector<Branch> branches;
  if (p_vac > 0.0) {
    branches.push_back({p_vac, vacuum(emission_basis(model)), "vacuum", {}});
  }
  append_scaled(branches, p, single_pair_bitflip_ensemble(params, e, model),
                "one-pair");
  append_scaled(branches, p_two, two_pair_bitflip_ensemble(params, e, model),
                "two-pair");
  return MixedState(std::move(branches));
}

PdcReport pdc_pipeline(const PdcParams& params, double e, double m) {
  params.validate();
  require_probability(e, "e");
  require_probability(m, "m");

  PdcReport r;
  r.params = params;
  r.e = e;
  r.m = m;

  auto run = [&](EmissionModel model) {
    const MixedState lossy =
        photon_loss(pdc_channel_ensemble(params, e, model), LossParams{m});
    const ModeMap circuit = build_depp_circuit(lossy.basis());
    return classify_detection(propagate(lossy, circuit));
  };

  const auto outcomes = run(EmissionModel::pair_resolved);
  r.detection = analyze(outcomes, 0.0);

  double credited = 0.0;
  double total = 0.0;
  for (const auto& o : outcomes) {
    if (o.cls == PatternClass::four_mode) r.four_mode_probability += o.probability;
    if (o.cls == PatternClass::rejected) r.rejected_probability += o.probability;
    if (o.cls != PatternClass::pair_coincidence) continue;
    r.pair_probability += o.probability;
    const auto [alice, bob] = reported_pair(o.pattern);
    for (const auto& b : o.conditional.branches()) {
      const double w = o.probability * b.weight;
      const double f =
          fidelity_phi_plus(reduce_to_polarization_pair(b.state, alice, bob));
      total += w * f;
      const bool single = b.tag.starts_with("one-pair");
      const LossCategory cat = classify_loss(b);
      if (single) {
        r.w_single += w;
        credited += w * f;
      } else if (cat == LossCategory::perfect_pair_kept) {
        r.w_perfect += w;
        credited += w * f;
      } else if (cat == LossCategory::cross_pair_kept) {
        r.w_cross += w;
      } else {
        r.w_other += w;
      }
    }
  }

  if (r.pair_probability > 0.0) {
    r.f_credited = credited / r.pair_probability;
    r.f_exact = total / r.pair_probability;
  } else {
    r.f_credited = r.f_exact = kNaN;
  }
  r.deviation = r.f_exact - r.f_credited;

  const double keep2 = (1.0 - m) * (1.0 - m);
  const double p = params.p;
  const double denominator = p * keep2 + 4.0 * p * p * m * m * keep2;
  r.predicted_deviation =
      denominator > 0.0 ? 0.5 * p * p * m * m * keep2 / denominator : kNaN;
  r.f_closed = m < 1.0 ? eq10_fidelity(p, m) : kNaN;

  double bos_f = 0.0;
  for (const auto& o : run(EmissionModel::bosonic)) {
    if (o.cls != PatternClass::pair_coincidence) continue;
    const auto [alice, bob] = reported_pair(o.pattern);
    r.pair_probability_bosonic += o.probability;
    bos_f += o.probability *
             fidelity_phi_plus(reduce_to_polarization_pair(o.conditional, alice, bob));
  }
  r.f_exact_bosonic = r.pair_probability_bosonic > 0.0
                          ? bos_f / r.pair_probability_bosonic
                          : kNaN;
  return r;
}

namespace {

FockState product_of_pairs(Spatial a_first, Spatial b_first, Spatial a_second,
                           Spatial b_second) {
  auto apply_pair = [](const FockState& s, Spatial a, Spatial b) {
    std::vector<WeightedState> parts;
    for (Pol pol : {Pol::H, Pol::V}) {
      parts.push_back({1.0, create(create(s, ModeId(a, pol)), ModeId(b, pol))});
    }
    return superpose(parts);
  };
  FockState s = apply_pair(vacuum(output_basis()), a_first, b_first);
  return apply_pair(s, a_second, b_second).normalized();
}

}  // namespace

FockState psi1_reference() {
  return product_of_pairs(Spatial::c1, Spatial::d1, Spatial::c2, Spatial::d2);
}

FockState psi2_reference() {
  return product_of_pairs(Spatial::c1, Spatial::d2, Spatial::c2, Spatial::d1);
}

std::string_view to_string(BellState b) {
  switch (b) {
    case BellState::phi_plus: return "phi+";
    case BellState::phi_minus: return "phi-";
    case BellState::psi_plus: return "psi+";
    case BellState::psi_minus: return "psi-";
  }
  return "?";
}

Eigen::Vector4cd bell_vector(BellState b) {
  const double h = std::numbers::sqrt2 / 2.0;
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (b) {
    case BellState::phi_plus: v << h, 0, 0, h; break;
    case BellState::phi_minus: v << h, 0, 0, -h; break;
    case BellState::psi_plus: v << 0, h, h, 0; break;
    case BellState::psi_minus: v << 0, h, -h, 0; break;
  }
  return v;
}

FockState hyper_pair_with(BellState b) {
  const Eigen::Vector4cd pol = bell_vector(b);
  const FockState vac = vacuum(transmission_basis());
  std::vector<WeightedState> parts;
  for (int k = 0; k < 4; ++k) {
    if (pol(k) == Complex{}) continue;
    const Pol pa = k / 2 == 0 ? Pol::H : Pol::V;
    const Pol pb = k % 2 == 0 ? Pol::H : Pol::V;
    const Complex c = pol(k) * (std::numbers::sqrt2 / 2.0);
    parts.push_back(
        {c, create(create(vac, ModeId(Spatial::a1, pa)), ModeId(Spatial::b1, pb))});
    parts.push_back(
        {c, create(create(vac, ModeId(Spatial::a2, pa)), ModeId(Spatial::b2, pb))});
  }
  return superpose(parts);
}

double SwappingTable::mutual_information_bits() const {
  std::array<double, 4> pa{};
  std::array<double, 4> pb{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      pa[i] += probability[i][j];
      pb[j] += probability[i][j];
    }
  }
  double info = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double p = probability[i][j];
      if (p > kPruneThreshold) info += p * std::log2(p / (pa[i] * pb[j]));
    }
  }
  return info;
}

SwappingTable swapping_correlation(const FockState& state) {
  // amplitude[c1][c2][d1][d2] over polarizations (0 = H, 1 = V).
  Complex amp[2][2][2][2] = {};
  const ModeBasis& basis = state.basis();
  for (const auto& [occ, a] : state.terms()) {
    const DetectionPattern pattern = pattern_of(basis, occ);
    if (classify_pattern(pattern) != PatternClass::four_mode) {
      throw std::invalid_argument("swapping_correlation: term " +
                                  occupation_label(basis, occ) +
                                  " is not a four-mode coincidence");
    }
    std::array<int, 4> pol{};
    for (std::size_t i = 0; i < occ.size(); ++i) {
      if (occ[i] == 0) continue;
      pol[static_cast<std::size_t>(spatial_slot(basis[i].spatial()))] =
          static_cast<int>(basis[i].pol());
    }
    amp[pol[0]][pol[1]][pol[2]][pol[3]] += a;
  }

  constexpr BellState order[] = {BellState::phi_plus, BellState::phi_minus,
                                 BellState::psi_plus, BellState::psi_minus};
  SwappingTable table;
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector4cd alice = bell_vector(order[i]);
    for (int j = 0; j < 4; ++j) {
      const Eigen::Vector4cd bob = bell_vector(order[j]);
      Complex overlap{};
      for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
          overlap += std::conj(alice(k)) * std::conj(bob(l)) *
                     amp[k / 2][k % 2][l / 2][l % 2];
        }
      }
      table.probability[i][j] = std::norm(overlap);
    }
  }
  return table;
}

}  // namespace depp
