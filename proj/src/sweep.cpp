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

#include "depp/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include <omp.h>

#include "depp/protocol.hpp"

namespace depp {

namespace {

// Evaluates fn(i) for i in [0, n) into a preallocated vector. Exceptions are
// captured per cell and the first one (in index order) is rethrown.
template <typename Row, typename Fn>
std::vector<Row> evaluate_cells(std::size_t n, Fn fn, Execution exec) {
  std::vector<Row> rows(n);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) rows[i] = fn(i);
    return rows;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      rows[k] = fn(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return rows;
}

}  // namespace

std::vector<double> Grid::points() const {
  validate("grid");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

void Grid::validate(const char* name) const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw std::invalid_argument(std::string(name) + ": grid values must be finite");
  }
  if (!(step > 0.0)) {
    throw std::invalid_argument(std::string(name) + ": grid step must be positive");
  }
  if (stop < start) {
    throw std::invalid_argument(std::string(name) + ": grid is empty (stop < start)");
  }
}

std::vector<Eq9Row> sweep_eq9(const Grid& e, Execution exec) {
  e.validate("e");
  const auto es = e.points();
  const PdcParams ideal{};
  return evaluate_cells<Eq9Row>(
      es.size(),
      [&](std::size_t i) {
        Eq9Row row;
        row.e = es[i];
        row.f_closed = eq9_fidelity(row.e);
        row.f_oracle = eq9_oracle(row.e);
        const MixedState ensemble = two_pair_bitflip_ensemble(ideal, row.e);
        for (const auto& b : ensemble.branches()) {
          row.four_mode_probability += b.weight * four_mode_probability(b.state);
        }
        return row;
      },
      exec);
}

std::vector<Eq10Row> sweep_eq10(const Grid& p, const Grid& m, double e,
                                double r, double pump_phase, Execution exec) {
  p.validate("p");
  m.validate("m");
  const auto ps = p.points();
  const auto ms = m.points();
  return evaluate_cells<Eq10Row>(
      ps.size() * ms.size(),
      [&](std::size_t k) {
        const PdcParams params{ps[k / ms.size()], r, pump_phase};
        const PdcReport rep = pdc_pipeline(params, e, ms[k % ms.size()]);
        return Eq10Row{params.p,
                       rep.m,
                       rep.f_closed,
                       rep.f_credited,
                       rep.f_exact,
                       rep.deviation,
                       rep.predicted_deviation,
                       rep.f_exact_bosonic,
                       rep.pair_probability,
                       rep.four_mode_probability,
                       rep.rejected_probability};
      },
      exec);
}

std::vector<BellMixtureParams> simplex_points(int divisions) {
  if (divisions <= 0) throw std::invalid_argument("simplex divisions must be positive");
  std::vector<BellMixtureParams> pts;
  const double d = divisions;
  for (int a = divisions; a >= 0; --a) {
    for (int b = divisions - a; b >= 0; --b) {
      for (int c = divisions - a - b; c >= 0; --c) {
        const int rest = divisions - a - b - c;
        pts.push_back({a / d, b / d, c / d, rest / d});
      }
    }
  }
  return pts;
}

SimplexRow evaluate_simplex_point(const BellMixtureParams& noise, double phi) {
  const MixedState channel =
      spatial_drift(bell_mixture_channel(ideal_hyper_pair(), noise),
                    DriftParams{phi});
  const PurificationReport rep = purify(channel, DriftParams{phi});
  SimplexRow row;
  row.noise = noise;
  row.accepted_probability = rep.accepted_probability;
  row.min_fidelity = std::numeric_limits<double>::infinity();
  row.max_fidelity = -std::numeric_limits<double>::infinity();
  for (const auto& pat : rep.patterns) {
    if (pat.cls == PatternClass::rejected) continue;
    row.min_fidelity = std::min(row.min_fidelity, pat.fidelity_compensated);
    row.max_fidelity = std::max(row.max_fidelity, pat.fidelity_compensated);
    const auto& n = pat.pattern.counts;
    if ((n[0] == 1 && n[2] == 1) || (n[1] == 1 && n[3] == 1)) {
      row.p_parallel += pat.probability;
    } else {
      row.p_crossed += pat.probability;
    }
  }
  return row;
}

std::vector<SimplexRow> sweep_simplex(int divisions, double phi,
                                      Execution exec) {
  const auto pts = simplex_points(divisions);
  return evaluate_cells<SimplexRow>(
      pts.size(),
      [&](std::size_t i) { return evaluate_simplex_point(pts[i], phi); },
      exec);
}

DriftRow evaluate_drift_point(const BellMixtureParams& noise, double phi) {
  const MixedState channel =
      spatial_drift(bell_mixture_channel(ideal_hyper_pair(), noise),
                    DriftParams{phi});
  const PurificationReport rep = purify(channel, DriftParams{phi});
  DriftRow row;
  row.phi = phi;
  row.accepted_probability = rep.accepted_probability;
  row.min_fidelity = row.min_fidelity_compensated = row.min_purity =
      std::numeric_limits<double>::infinity();
  row.max_fidelity = -std::numeric_limits<double>::infinity();
  for (const auto& pat : rep.patterns) {
    if (pat.cls == PatternClass::rejected) continue;
    row.min_fidelity = std::min(row.min_fidelity, pat.fidelity);
    row.max_fidelity = std::max(row.max_fidelity, pat.fidelity);
    row.min_fidelity_compensated =
        std::min(row.min_fidelity_compensated, pat.fidelity_compensated);
    row.min_purity = std::min(row.min_purity, pat.purity);
  }
  return row;
}

std::vector<DriftRow> sweep_drift(const Grid& phi,
                                  const BellMixtureParams& noise,
                                  Execution exec) {
  phi.validate("phi");
  noise.validate();
  const auto phis = phi.points();
  return evaluate_cells<DriftRow>(
      phis.size(),
      [&](std::size_t i) { return evaluate_drift_point(noise, phis[i]); },
      exec);
}

}  // namespace depp
