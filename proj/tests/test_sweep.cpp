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
#include <cstring>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "depp/protocol.hpp"
#include "depp/sweep.hpp"

using namespace depp;
using Catch::Matchers::WithinAbs;

namespace {

bool same_bits(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return std::memcmp(&a, &b, sizeof a) == 0;
}

}  // namespace

TEST_CASE("grid points", "[sweep]") {
  const auto e = Grid{0.0, 1.0, 0.1}.points();
  REQUIRE(e.size() == 11);
  CHECK(e.front() == 0.0);
  CHECK_THAT(e.back(), WithinAbs(1.0, 1e-12));
  CHECK(Grid{0.05, 0.1, 0.05}.points().size() == 2);
  CHECK(Grid{0.3, 0.3, 0.1}.points().size() == 1);
  CHECK(Grid{0.0, 0.25, 0.1}.points().size() == 3);
  CHECK_THROWS_AS(Grid({0.0, 1.0, 0.0}).validate("e"), std::invalid_argument);
  CHECK_THROWS_AS(Grid({1.0, 0.0, 0.1}).validate("e"), std::invalid_argument);
  CHECK_THROWS_AS(Grid({0.0, NAN, 0.1}).validate("e"), std::invalid_argument);
}

TEST_CASE("simplex points", "[sweep]") {
  const auto pts = simplex_points(10);
  CHECK(pts.size() == 286);
  for (const auto& p : pts) {
    CHECK_NOTHROW(p.validate());
    for (double x : {p.alpha, p.beta, p.delta, p.eta}) {
      CHECK_THAT(x * 10, WithinAbs(std::round(x * 10), 1e-12));
    }
  }
  CHECK(pts.front().alpha == 1.0);
  CHECK(pts.back().eta == 1.0);
  CHECK(simplex_points(1).size() == 4);
  CHECK_THROWS_AS(simplex_points(0), std::invalid_argument);
}

TEST_CASE("serial and parallel kernels agree bit for bit", "[sweep]") {
  SECTION("eq9") {
    const auto s = sweep_eq9(Grid{0.0, 1.0, 0.1}, Execution::serial);
    const auto p = sweep_eq9(Grid{0.0, 1.0, 0.1}, Execution::parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(same_bits(s[i].e, p[i].e));
      CHECK(same_bits(s[i].f_oracle, p[i].f_oracle));
      CHECK(same_bits(s[i].four_mode_probability, p[i].four_mode_probability));
      CHECK_THAT(s[i].f_oracle, WithinAbs(s[i].f_closed, 1e-12));
    }
  }
  SECTION("eq10") {
    const Grid pg{0.05, 0.1, 0.05};
    const Grid mg{0.0, 0.5, 0.1};
    const auto s = sweep_eq10(pg, mg, 0.1, 1.0, 0.0, Execution::serial);
    const auto p = sweep_eq10(pg, mg, 0.1, 1.0, 0.0, Execution::parallel);
    REQUIRE(s.size() == 12);
    REQUIRE(p.size() == 12);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(same_bits(s[i].p, p[i].p));
      CHECK(same_bits(s[i].m, p[i].m));
      CHECK(same_bits(s[i].f_exact, p[i].f_exact));
      CHECK(same_bits(s[i].f_credited, p[i].f_credited));
      CHECK(same_bits(s[i].f_exact_bosonic, p[i].f_exact_bosonic));
      CHECK_THAT(s[i].f_credited, WithinAbs(s[i].f_closed, 1e-9));
    }
    CHECK(s[1].p == s[0].p);  // m varies fastest
  }
  SECTION("simplex") {
    const auto s = sweep_simplex(4, 0.3, Execution::serial);
    const auto p = sweep_simplex(4, 0.3, Execution::parallel);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(same_bits(s[i].accepted_probability, p[i].accepted_probability));
      CHECK(same_bits(s[i].min_fidelity, p[i].min_fidelity));
      CHECK(same_bits(s[i].p_parallel, p[i].p_parallel));
      CHECK_THAT(s[i].p_parallel, WithinAbs(s[i].noise.alpha + s[i].noise.beta, 1e-12));
      CHECK_THAT(s[i].p_crossed, WithinAbs(s[i].noise.delta + s[i].noise.eta, 1e-12));
    }
  }
  SECTION("drift") {
    const Grid g{0.0, std::numbers::pi, std::numbers::pi / 8};
    const BellMixtureParams n{0.4, 0.3, 0.2, 0.1};
    const auto s = sweep_drift(g, n, Execution::serial);
    const auto p = sweep_drift(g, n, Execution::parallel);
    REQUIRE(s.size() == 9);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(same_bits(s[i].min_fidelity, p[i].min_fidelity));
      CHECK(same_bits(s[i].min_fidelity_compensated, p[i].min_fidelity_compensated));
      const double c = std::cos(s[i].phi / 2);
      CHECK_THAT(s[i].min_fidelity, WithinAbs(c * c, 1e-12));
      CHECK_THAT(s[i].min_fidelity_compensated, WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("sweep errors propagate from both kernels", "[sweep]") {
  for (Execution x : {Execution::serial, Execution::parallel}) {
    CHECK_THROWS_AS(sweep_eq9(Grid{0.0, 1.5, 0.5}, x), std::invalid_argument);
    CHECK_THROWS_AS(sweep_eq10(Grid{0.1, 0.1, 0.1}, Grid{0.0, 0.1, 0.0}, 0.0, 1.0, 0.0, x),
                    std::invalid_argument);
  }
}
