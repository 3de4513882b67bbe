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

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "depp/runner.hpp"

namespace depp {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k{
        "experiment.kind", "experiment.out",  "experiment.parallel",
        "noise.alpha",     "noise.beta",      "noise.delta",
        "noise.eta",       "drift.phi",       "drift.k",
        "drift.delta_l",   "source.p",        "source.r",
        "source.pump_phase", "channel.e",     "channel.m",
        "trace.input",     "sweep.target",    "sweep.simplex_divisions"};
    for (const char* g : {"e", "p", "m", "phi"}) {
      for (const char* part : {"_start", "_stop", "_step"}) {
        k.insert(std::string("sweep.") + g + part);
      }
    }
    return k;
  }();
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

class Document {
 public:
  explicit Document(std::map<std::string, std::string> values)
      : values_(std::move(values)) {}

  bool has(const std::string& key) const { return values_.contains(key); }

  double number(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string v = trim(it->second);
    double x = 0.0;
    const auto* first = v.data();
    const auto* last = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (v.empty() || ec != std::errc{} || ptr != last || !std::isfinite(x)) {
      throw ConfigError(key, "expected a finite number, got '" + v + "'");
    }
    return x;
  }

  std::string text(const std::string& key, std::string fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : trim(it->second);
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = text(key, "");
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(key, "expected a boolean, got '" + v + "'");
  }

 private:
  std::map<std::string, std::string> values_;
};

void check_probability(const std::string& key, double x) {
  if (x < 0.0 || x > 1.0) {
    throw ConfigError(key, "must lie in [0, 1], got " + format_number(x));
  }
}

Grid read_grid(const Document& doc, const std::string& name, Grid fallback) {
  const std::string base = "sweep." + name;
  Grid g{doc.number(base + "_start", fallback.start),
         doc.number(base + "_stop", fallback.stop),
         doc.number(base + "_step", fallback.step)};
  if (!(g.step > 0.0)) {
    throw ConfigError(base + "_step", "grid step must be positive");
  }
  if (g.stop < g.start) {
    throw ConfigError(base + "_stop", "grid stop is below start");
  }
  return g;
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(key.empty() ? message : key + ": " + message),
      key_(std::move(key)) {}

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::trace: return "trace";
    case ExperimentKind::purify: return "purify";
    case ExperimentKind::pdc: return "pdc";
    case ExperimentKind::sweep: return "sweep";
  }
  return "?";
}

std::string_view to_string(SweepTarget t) {
  switch (t) {
    case SweepTarget::eq9: return "eq9";
    case SweepTarget::eq10: return "eq10";
    case SweepTarget::simplex: return "simplex";
    case SweepTarget::drift: return "drift";
  }
  return "?";
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& err) {
    throw ConfigError("", "malformed config (line " +
                              std::to_string(err.line()) +
                              "): " + err.message());
  }

  std::map<std::string, std::string> values;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError(section, "key outside of a [section]");
    }
    for (const auto& [key, value] : body) {
      values[section + "." + key] = value.data();
    }
  }
  for (const auto& [key, value] : overrides) values[key] = value;
  for (const auto& [key, value] : values) {
    if (!known_keys().contains(key)) throw ConfigError(key, "unknown key");
  }

  const Document doc(std::move(values));
  RunConfig cfg;

  const std::string kind = doc.text("experiment.kind", "purify");
  if (kind == "trace") cfg.kind = ExperimentKind::trace;
  else if (kind == "purify") cfg.kind = ExperimentKind::purify;
  else if (kind == "pdc") cfg.kind = ExperimentKind::pdc;
  else if (kind == "sweep") cfg.kind = ExperimentKind::sweep;
  else throw ConfigError("experiment.kind", "unknown experiment '" + kind + "'");
  cfg.out = doc.text("experiment.out", "");
  cfg.parallel = doc.flag("experiment.parallel", true);

  // Noise simplex: alpha absorbs whatever the other three leave.
  BellMixtureParams& n = cfg.noise;
  n.beta = doc.number("noise.beta", 0.0);
  n.delta = doc.number("noise.delta", 0.0);
  n.eta = doc.number("noise.eta", 0.0);
  n.alpha = doc.number("noise.alpha", 1.0 - (n.beta + n.delta + n.eta));
  check_probability("noise.alpha", n.alpha);
  check_probability("noise.beta", n.beta);
  check_probability("noise.delta", n.delta);
  check_probability("noise.eta", n.eta);
  const double sum = n.alpha + n.beta + n.delta + n.eta;
  if (std::abs(sum - 1.0) > kTolerance) {
    throw ConfigError("noise", "alpha + beta + delta + eta = " +
                                   format_number(sum) + ", must equal 1");
  }

  if (doc.has("drift.k") || doc.has("drift.delta_l")) {
    if (doc.has("drift.phi")) {
      throw ConfigError("drift.phi", "give either phi or k and delta_l, not both");
    }
    if (!doc.has("drift.k") || !doc.has("drift.delta_l")) {
      throw ConfigError(doc.has("drift.k") ? "drift.delta_l" : "drift.k",
                        "k and delta_l must be given together");
    }
    cfg.drift = DriftParams::from_path_difference(doc.number("drift.k", 0.0),
                                                  doc.number("drift.delta_l", 0.0));
  } else {
    cfg.drift.phi = doc.number("drift.phi", 0.0);
  }

  cfg.source.p = doc.number("source.p", 0.1);
  cfg.source.r = doc.number("source.r", 1.0);
  cfg.source.pump_phase = doc.number("source.pump_phase", 0.0);
  if (!(cfg.source.p > 0.0) || cfg.source.p > 1.0) {
    throw ConfigError("source.p", "must lie in (0, 1]");
  }
  if (cfg.source.p + cfg.source.p * cfg.source.p > 1.0 + kTolerance) {
    throw ConfigError("source.p", "p + p^2 must not exceed 1");
  }
  if (cfg.source.r < 0.0) throw ConfigError("source.r", "must be non-negative");

  cfg.e = doc.number("channel.e", 0.0);
  cfg.m = doc.number("channel.m", 0.0);
  check_probability("channel.e", cfg.e);
  check_probability("channel.m", cfg.m);

  const std::string input = doc.text("trace.input", "phi+");
  if (input == "phi+") cfg.trace_input = BellState::phi_plus;
  else if (input == "phi-") cfg.trace_input = BellState::phi_minus;
  else if (input == "psi+") cfg.trace_input = BellState::psi_plus;
  else if (input == "psi-") cfg.trace_input = BellState::psi_minus;
  else throw ConfigError("trace.input", "expected phi+, phi-, psi+ or psi-");

  const std::string target = doc.text("sweep.target", "eq9");
  if (target == "eq9") cfg.sweep_target = SweepTarget::eq9;
  else if (target == "eq10") cfg.sweep_target = SweepTarget::eq10;
  else if (target == "simplex") cfg.sweep_target = SweepTarget::simplex;
  else if (target == "drift") cfg.sweep_target = SweepTarget::drift;
  else throw ConfigError("sweep.target", "unknown sweep target '" + target + "'");

  cfg.e_grid = read_grid(doc, "e", cfg.e_grid);
  cfg.p_grid = read_grid(doc, "p", cfg.p_grid);
  cfg.m_grid = read_grid(doc, "m", cfg.m_grid);
  cfg.phi_grid = read_grid(doc, "phi", cfg.phi_grid);
  if (cfg.e_grid.start < 0.0 || cfg.e_grid.stop > 1.0 + 1e-9) {
    throw ConfigError("sweep.e_start", "e grid must stay within [0, 1]");
  }
  if (cfg.m_grid.start < 0.0 || cfg.m_grid.stop > 1.0 + 1e-9) {
    throw ConfigError("sweep.m_start", "m grid must stay within [0, 1]");
  }
  if (!(cfg.p_grid.start > 0.0) ||
      cfg.p_grid.stop + cfg.p_grid.stop * cfg.p_grid.stop > 1.0 + kTolerance) {
    throw ConfigError("sweep.p_start", "p grid must stay within (0, p + p^2 <= 1]");
  }
  const double divisions = doc.number("sweep.simplex_divisions", 10.0);
  if (divisions < 1.0 || divisions > 100.0 || divisions != std::floor(divisions)) {
    throw ConfigError("sweep.simplex_divisions", "expected an integer in [1, 100]");
  }
  cfg.simplex_divisions = static_cast<int>(divisions);
  return cfg;
}

RunConfig load_config(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

}  // namespace depp
