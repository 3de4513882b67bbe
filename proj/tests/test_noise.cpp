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

#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "depp/noise.hpp"
#include "depp/protocol.hpp"
#include "test_support.hpp"

using namespace depp;
using Catch::Matchers::WithinAbs;

namespace {

// Upper path only, so (a1, b1) carries exactly one photon each.
FockState upper_pair() { return single_pair_state(PdcParams{0.1, 0.0, 0.0}); }

double bell_population(const TwoQubitDensity& rho, BellState b) {
  const Eigen::Vector4cd v = bell_vector(b);
  return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

FockState four_mode_conditional(const FockState& emitted) {
  const FockState out = apply_mode_map(emitted, build_depp_circuit(emitted.basis()));
  for (const auto& o : classify_detection(out)) {
    if (o.cls == PatternClass::four_mode) {
      REQUIRE(o.conditional.size() == 1);
      return o.conditional.branches()[0].state;
    }
  }
  FAIL("no four-mode outcome");
  return out;
}

double weight_with(const MixedState& s, std::size_t lost_count) {
  double w = 0.0;
  for (const auto& b : s.branches())
    if (b.lost.size() == lost_count) w += b.weight;
  return w;
}

double weight_in(const MixedState& s, LossCategory c) {
  double w = 0.0;
  for (const auto& b : s.branches())
    if (classify_loss(b) == c) w += b.weight;
  return w;
}

}  // namespace

TEST_CASE("BellMixtureParams validation", "[noise]") {
  CHECK_NOTHROW((BellMixtureParams{0.25, 0.25, 0.25, 0.25}.validate()));
  CHECK_THROWS_AS((BellMixtureParams{0.7, 0.7, 0.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BellMixtureParams{1.2, -0.2, 0.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((BellMixtureParams{NAN, 0.0, 0.0, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("Bell mixture channel populations", "[noise]") {
  const BellMixtureParams cases[] = {
      {1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0},
      {0.0, 0.0, 0.0, 1.0}, {0.4, 0.3, 0.2, 0.1}, {0.25, 0.25, 0.25, 0.25},
  };
  for (const auto& params : cases) {
    const MixedState mixed = bell_mixture_channel(upper_pair(), params);
    const TwoQubitDensity rho = reduce_to_polarization_pair(mixed, Spatial::a1, Spatial::b1);
    CHECK_THAT(bell_population(rho, BellState::phi_plus), WithinAbs(params.alpha, 1e-12));
    CHECK_THAT(bell_population(rho, BellState::phi_minus), WithinAbs(params.beta, 1e-12));
    CHECK_THAT(bell_population(rho, BellState::psi_plus), WithinAbs(params.delta, 1e-12));
    CHECK_THAT(bell_population(rho, BellState::psi_minus), WithinAbs(params.eta, 1e-12));
    CHECK_THAT(fidelity_phi_plus(rho), WithinAbs(params.alpha, 1e-12));
  }

  const MixedState uniform =
      bell_mixture_channel(upper_pair(), BellMixtureParams{0.25, 0.25, 0.25, 0.25});
  const auto rho = reduce_to_polarization_pair(uniform, Spatial::a1, Spatial::b1);
  CHECK((rho.matrix() - 0.25 * Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Bell mixture channel branch states", "[noise]") {
  const MixedState mixed =
      bell_mixture_channel(ideal_hyper_pair(), BellMixtureParams{0.4, 0.3, 0.2, 0.1});
  REQUIRE(mixed.size() == 4);
  const char* tags[] = {"phi+", "phi-", "psi+", "psi-"};
  const BellState states[] = {BellState::phi_plus, BellState::phi_minus,
                              BellState::psi_plus, BellState::psi_minus};
  for (std::size_t i = 0; i < 4; ++i) {
    const Branch& b = mixed.branches()[i];
    CHECK(b.tag == tags[i]);
    CHECK(approx_equal(b.state, hyper_pair_with(states[i])));

    // The spatial part is untouched: half the weight on each path.
    double upper = 0.0;
    const auto a1 = b.state.basis().index_of(ModeId(Spatial::a1, Pol::H));
    const auto a1v = b.state.basis().index_of(ModeId(Spatial::a1, Pol::V));
    for (const auto& [occ, amp] : b.state.terms())
      if (occ[a1] + occ[a1v] == 1) upper += std::norm(amp);
    CHECK_THAT(upper, WithinAbs(0.5, 1e-14));
  }

  const MixedState pure = bell_mixture_channel(ideal_hyper_pair(), BellMixtureParams{});
  CHECK(pure.size() == 1);
}

TEST_CASE("spatial drift", "[noise]") {
  const double phi = 0.8;
  const FockState s = ideal_hyper_pair();
  const FockState d = spatial_drift(s, DriftParams{phi});
  const ModeBasis& basis = s.basis();
  const auto a2h = basis.index_of(ModeId(Spatial::a2, Pol::H));
  const auto a2v = basis.index_of(ModeId(Spatial::a2, Pol::V));
  for (const auto& [occ, amp] : s.terms()) {
    const bool lower = occ[a2h] + occ[a2v] > 0;
    const Complex want = lower ? amp * std::polar(1.0, phi) : amp;
    CHECK(std::abs(d.amplitude(occ) - want) < 1e-15);
  }

  CHECK(approx_equal(spatial_drift(s, DriftParams{2.0 * std::numbers::pi}), s));
  CHECK(approx_equal(spatial_drift(s, DriftParams{0.0}), s));
  CHECK(approx_equal(spatial_drift(s, DriftParams::from_path_difference(2.0, 0.4)), d));
  CHECK_THAT(DriftParams{-0.5}.reduced_phi(), WithinAbs(2.0 * std::numbers::pi - 0.5, 1e-15));
  CHECK_THAT(DriftParams{7.0}.reduced_phi(), WithinAbs(7.0 - 2.0 * std::numbers::pi, 1e-15));
  CHECK_THROWS_AS(spatial_drift(s, DriftParams{INFINITY}), std::invalid_argument);

  const MixedState m = spatial_drift(
      bell_mixture_channel(s, BellMixtureParams{0.5, 0.5, 0.0, 0.0}), DriftParams{phi});
  CHECK(m.size() == 2);
  CHECK(m.branches()[1].tag == "phi-");
}

TEST_CASE("two-pair bit-flip ensemble", "[noise]") {
  const PdcParams params{};
  SECTION("no errors") {
    const MixedState s = two_pair_bitflip_ensemble(params, 0.0);
    REQUIRE(s.size() == 1);
    CHECK(s.branches()[0].tag == "no-error");
    CHECK(approx_equal(s.branches()[0].state, pdc_two_pair_state(params)));
  }
  SECTION("weights") {
    const double e = 0.3;
    const MixedState s = two_pair_bitflip_ensemble(params, e);
    REQUIRE(s.size() == 3);
    CHECK_THAT(s.branches()[0].weight, WithinAbs(0.49, 1e-15));
    CHECK_THAT(s.branches()[1].weight, WithinAbs(0.42, 1e-15));
    CHECK_THAT(s.branches()[2].weight, WithinAbs(0.09, 1e-15));
    const MixedState r = two_pair_bitflip_ensemble(params, e, EmissionModel::pair_resolved);
    REQUIRE(r.size() == 4);
    CHECK(r.branches()[1].tag == "one-error(pair1)");
    CHECK(r.branches()[2].tag == "one-error(pair2)");
    CHECK_THAT(r.branches()[1].weight + r.branches()[2].weight, WithinAbs(0.42, 1e-15));
  }
  SECTION("post-selected four-mode states") {
    const MixedState s = two_pair_bitflip_ensemble(params, 1.0);
    REQUIRE(s.size() == 1);
    const FockState two_error = four_mode_conditional(s.branches()[0].state);
    CHECK_THAT(std::norm(inner(psi2_reference(), two_error)), WithinAbs(1.0, 1e-12));
    const FockState no_error = four_mode_conditional(pdc_two_pair_state(params));
    CHECK_THAT(std::norm(inner(psi1_reference(), no_error)), WithinAbs(1.0, 1e-12));
  }
  SECTION("a single flipped pair never reaches all four outputs") {
    for (double e : {0.1, 0.5}) {
      for (EmissionModel model : {EmissionModel::bosonic, EmissionModel::pair_resolved}) {
        const MixedState s = two_pair_bitflip_ensemble(params, e, model);
        for (const auto& b : s.branches()) {
          if (b.tag.starts_with("one-error")) CHECK(four_mode_probability(b.state) < 1e-12);
        }
      }
    }
  }
  CHECK_THROWS_AS(two_pair_bitflip_ensemble(params, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(two_pair_bitflip_ensemble(params, -0.1), std::invalid_argument);
}

TEST_CASE("single-pair bit-flip ensemble", "[noise]") {
  const MixedState s = single_pair_bitflip_ensemble(PdcParams{}, 0.2);
  REQUIRE(s.size() == 2);
  CHECK_THAT(s.branches()[0].weight, WithinAbs(0.8, 1e-15));
  CHECK(approx_equal(s.branches()[1].state, hyper_pair_with(BellState::psi_plus)));
}

TEST_CASE("photon loss", "[noise]") {
  SECTION("m = 0 is the identity") {
    const MixedState in = pdc_emission_ensemble(PdcParams{});
    const MixedState out = photon_loss(in, LossParams{0.0});
    REQUIRE(out.size() == in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      CHECK(out.branches()[i].weight == in.branches()[i].weight);
      CHECK(approx_equal(out.branches()[i].state, in.branches()[i].state));
      CHECK(out.branches()[i].tag == in.branches()[i].tag);
    }
  }
  SECTION("single pair") {
    const MixedState one({{1.0, ideal_hyper_pair(), "one-pair", {}}});
    for (double m : {0.1, 0.3, 0.5, 0.9}) {
      const MixedState out = photon_loss(one, LossParams{m});
      CHECK_THAT(weight_with(out, 0), WithinAbs((1 - m) * (1 - m), 1e-14));
      CHECK_THAT(weight_with(out, 1), WithinAbs(2 * m * (1 - m), 1e-14));
      CHECK_THAT(weight_with(out, 2), WithinAbs(m * m, 1e-14));
    }
  }
  SECTION("four photons, both emission models") {
    for (EmissionModel model : {EmissionModel::bosonic, EmissionModel::pair_resolved}) {
      const FockState two = model == EmissionModel::bosonic
                                ? pdc_two_pair_state(PdcParams{})
                                : pair_resolved_two_pair_state(PdcParams{});
      const MixedState in({{1.0, two, "two-pair", {}}});
      for (double m : {0.1, 0.3, 0.5}) {
        const MixedState out = photon_loss(in, LossParams{m});
        const double k = 1 - m;
        CHECK_THAT(out.total_weight(), WithinAbs(1.0, 1e-13));
        CHECK_THAT(weight_with(out, 0), WithinAbs(std::pow(k, 4), 1e-13));
        CHECK_THAT(weight_with(out, 1), WithinAbs(4 * m * std::pow(k, 3), 1e-13));
        CHECK_THAT(weight_with(out, 2), WithinAbs(6 * m * m * k * k, 1e-13));
        CHECK_THAT(weight_with(out, 3), WithinAbs(4 * std::pow(m, 3) * k, 1e-13));
        CHECK_THAT(weight_with(out, 4), WithinAbs(std::pow(m, 4), 1e-13));
        const double third = 2 * m * m * k * k;
        CHECK_THAT(weight_in(out, LossCategory::same_party_kept), WithinAbs(third, 1e-13));
        if (model == EmissionModel::pair_resolved) {
          CHECK_THAT(weight_in(out, LossCategory::perfect_pair_kept), WithinAbs(third, 1e-13));
          CHECK_THAT(weight_in(out, LossCategory::cross_pair_kept), WithinAbs(third, 1e-13));
        } else {
          CHECK_THAT(weight_in(out, LossCategory::unresolved), WithinAbs(2 * third, 1e-13));
        }
      }
    }
  }
  SECTION("weight is conserved over the m grid") {
    const MixedState in = two_pair_bitflip_ensemble(PdcParams{}, 0.2, EmissionModel::pair_resolved);
    for (int i = 0; i <= 10; ++i) {
      const double m = 0.1 * i;
      const MixedState out = photon_loss(in, LossParams{m});
      CHECK_THAT(out.total_weight(), WithinAbs(1.0, 1e-13));
      for (const auto& b : out.branches()) {
        CHECK_THAT(b.state.norm(), WithinAbs(1.0, 1e-13));
        CHECK(photon_number(b.state.terms().begin()->first) + b.lost.size() == 4);
      }
    }
  }
  SECTION("lost tags") {
    const MixedState one({{1.0, upper_pair(), "one-pair", {}}});
    const MixedState out = photon_loss(one, LossParams{0.5});
    bool seen = false;
    for (const auto& b : out.branches()) {
      if (b.lost.size() == 1 && b.lost[0].spatial() == Spatial::a1) {
        CHECK(b.tag.starts_with("one-pair/lost:a1"));
        CHECK(classify_loss(b) == LossCategory::one_lost);
        seen = true;
      }
    }
    CHECK(seen);
  }
  CHECK_THROWS_AS(photon_loss(MixedState({{1.0, upper_pair(), "x", {}}}), LossParams{1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(photon_loss(MixedState({{1.0, upper_pair(), "x", {}}}), LossParams{-0.1}),
                  std::invalid_argument);
}
