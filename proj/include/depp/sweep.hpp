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

// Parameter sweeps. Every grid cell is an independent exact computation, so
// the OpenMP kernels evaluate cells concurrently and write each result into
// its own slot; the serial kernels are the reference the tests compare
// against. Row order is grid order in both.

#include <vector>

#include "depp/noise.hpp"
#include "depp/sources.hpp"

namespace depp {

enum class Execution { serial, parallel };

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// start + i*step for i = 0..n-1, with stop included up to 1e-9 slack.
  std::vector<double> points() const;
  void validate(const char* name) const;
};

struct Eq9Row {
  double e = 0.0;
  double f_closed = 0.0;
  double f_oracle = 0.0;
  double four_mode_probability = 0.0;  // given a two-pair emission
};

struct Eq10Row {
  double p = 0.0;
  double m = 0.0;
  double f_closed = 0.0;
  double f_credited = 0.0;
  double f_exact = 0.0;
  double deviation = 0.0;
  double predicted_deviation = 0.0;
  double f_exact_bosonic = 0.0;
  double pair_probability = 0.0;
  double four_mode_probability = 0.0;
  double rejected_probability = 0.0;
};

struct SimplexRow {
  BellMixtureParams noise;
  double accepted_probability = 0.0;
  double min_fidelity = 0.0;
  double max_fidelity = 0.0;
  double p_parallel = 0.0;  // patterns c1d1 + c2d2
  double p_crossed = 0.0;   // patterns c1d2 + c2d1
};

struct DriftRow {
  double phi = 0.0;
  double min_fidelity = 0.0;  // before compensation
  double max_fidelity = 0.0;
  double min_fidelity_compensated = 0.0;
  double min_purity = 0.0;
  double accepted_probability = 0.0;
};

std::vector<Eq9Row> sweep_eq9(const Grid& e, Execution exec);
std::vector<Eq10Row> sweep_eq10(const Grid& p, const Grid& m, double e,
                                double r, double pump_phase, Execution exec);
/// All (alpha, beta, delta, eta) with components k/divisions, in
/// decreasing lexicographic order of (alpha, beta, delta); pure phi+ first.
std::vector<BellMixtureParams> simplex_points(int divisions);
std::vector<SimplexRow> sweep_simplex(int divisions, double phi,
                                      Execution exec);
std::vector<DriftRow> sweep_drift(const Grid& phi,
                                  const BellMixtureParams& noise,
                                  Execution exec);

SimplexRow evaluate_simplex_point(const BellMixtureParams& noise, double phi);
DriftRow evaluate_drift_point(const BellMixtureParams& noise, double phi);

}  // namespace depp
