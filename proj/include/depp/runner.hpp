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

// Experiment front end: configuration, dispatch and CSV emission.
//
// Config files are flat INI documents:
//
//   [experiment]  kind = trace|purify|pdc|sweep, out = <path>, parallel = true
//   [noise]       alpha, beta, delta, eta   (alpha defaults to 1 - the rest)
//   [drift]       phi, or k and delta_l
//   [source]      p, r, pump_phase
//   [channel]     e, m
//   [trace]       input = phi+|phi-|psi+|psi-
//   [sweep]       target = eq9|eq10|simplex|drift, simplex_divisions,
//                 {e,p,m,phi}_{start,stop,step}

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "depp/noise.hpp"
#include "depp/protocol.hpp"
#include "depp/sources.hpp"
#include "depp/sweep.hpp"

namespace depp {

enum class ExperimentKind { trace, purify, pdc, sweep };
enum class SweepTarget { eq9, eq10, simplex, drift };

std::string_view to_string(ExperimentKind k);
std::string_view to_string(SweepTarget t);

struct RunConfig {
  ExperimentKind kind = ExperimentKind::purify;
  BellMixtureParams noise;
  DriftParams drift;
  PdcParams source;
  double e = 0.0;
  double m = 0.0;
  BellState trace_input = BellState::phi_plus;

  SweepTarget sweep_target = SweepTarget::eq9;
  Grid e_grid{0.0, 1.0, 0.1};
  Grid p_grid{0.05, 0.1, 0.05};
  Grid m_grid{0.0, 0.5, 0.1};
  Grid phi_grid{0.0, 3.141592653589793, 0.39269908169872414};
  int simplex_divisions = 10;

  bool parallel = true;
  std::string out;  // empty: write to the text stream
};

// Configuration problem; key() names the offending "section.key".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// "section.key" -> raw value, applied on top of the document.
using Overrides = std::vector<std::pair<std::string, std::string>>;

RunConfig parse_config(std::string_view text, const Overrides& overrides = {});
RunConfig load_config(const std::string& path, const Overrides& overrides = {});

// ---- rendering -------------------------------------------------------------

/// Fixed 12-significant-digit formatting; NaN renders as an empty field.
std::string format_number(double x);

std::string render_trace_text(const std::vector<TraceStep>& steps);
std::string render_trace_csv(const std::vector<TraceStep>& steps);
std::string render_purify_csv(const BellMixtureParams& noise,
                              const PurificationReport& report);
std::string render_pdc_csv(const PdcReport& report);
std::string render_eq9_csv(const std::vector<Eq9Row>& rows);
std::string render_eq10_csv(const std::vector<Eq10Row>& rows, double e);
std::string render_simplex_csv(const std::vector<SimplexRow>& rows, double phi);
std::string render_drift_csv(const std::vector<DriftRow>& rows,
                             const BellMixtureParams& noise);

/// The CSV document an experiment produces (trace: the CSV form).
std::string run_to_csv(const RunConfig& config);

/// Runs the experiment, writing CSV to config.out (or `text` when empty);
/// the trace experiment also prints aligned text to `text`.
void run(const RunConfig& config, std::ostream& text);

/// Command-line entry point. Exit codes: 0 success, 1 usage or
/// configuration error, 2 internal invariant violation.
int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace depp
