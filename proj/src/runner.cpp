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
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "depp/runner.hpp"

namespace depp {

std::string format_number(double x) {
  if (std::isnan(x)) return "";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<std::string_view> header) {
    row(header);
  }

  void row(std::initializer_list<std::string_view> fields) {
    bool first = true;
    for (auto f : fields) {
      if (!first) os_ << ',';
      os_ << f;
      first = false;
    }
    os_ << '\n';
  }

  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::string num(double x) { return format_number(x); }

}  // namespace

std::string render_trace_text(const std::vector<TraceStep>& steps) {
  std::ostringstream os;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& st = steps[i];
    os << "stage " << i << "  " << st.label << '\n';
    if (st.state.empty()) os << "    (zero state)\n";
    for (const auto& [occ, amp] : st.state.terms()) {
      char buf[80];
      std::snprintf(buf, sizeof buf, "    %+.12f %+.12fi  ", amp.real(),
                    amp.imag());
      os << buf << '|' << occupation_label(st.state.basis(), occ) << ">\n";
    }
  }
  return os.str();
}

std::string render_trace_csv(const std::vector<TraceStep>& steps) {
  CsvWriter csv{"stage_index", "stage", "term", "re", "im"};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& st = steps[i];
    for (const auto& [occ, amp] : st.state.terms()) {
      csv.row({std::to_string(i), st.label,
               occupation_label(st.state.basis(), occ), num(amp.real()),
               num(amp.imag())});
    }
  }
  return csv.str();
}

std::string render_purify_csv(const BellMixtureParams& noise,
                              const PurificationReport& report) {
  CsvWriter csv{"alpha", "beta", "delta", "eta", "phi", "c1", "c2", "d1",
                "d2", "pattern", "class", "probability", "fidelity",
                "relative_phase", "fidelity_compensated", "purity"};
  for (const auto& p : report.patterns) {
    const auto& n = p.pattern.counts;
    csv.row({num(noise.alpha), num(noise.beta), num(noise.delta),
             num(noise.eta), num(report.phi), std::to_string(n[0]),
             std::to_string(n[1]), std::to_string(n[2]), std::to_string(n[3]),
             p.pattern.name(), to_string(p.cls), num(p.probability),
             num(p.fidelity), num(p.relative_phase),
             num(p.fidelity_compensated), num(p.purity)});
  }
  return csv.str();
}

std::string render_pdc_csv(const PdcReport& r) {
  CsvWriter csv{"p", "r", "pump_phase", "e", "m", "pair_probability",
                "four_mode_probability", "rejected_probability", "f_eq10",
                "f_credited", "f_exact", "deviation", "predicted_deviation",
                "f_exact_bosonic", "w_single", "w_perfect", "w_cross"};
  csv.row({num(r.params.p), num(r.params.r), num(r.params.pump_phase),
           num(r.e), num(r.m), num(r.pair_probability),
           num(r.four_mode_probability), num(r.rejected_probability),
           num(r.f_closed), num(r.f_credited), num(r.f_exact), num(r.deviation),
           num(r.predicted_deviation), num(r.f_exact_bosonic),
           num(r.w_single), num(r.w_perfect), num(r.w_cross)});
  return csv.str();
}

std::string render_eq9_csv(const std::vector<Eq9Row>& rows) {
  CsvWriter csv{"e", "f_eq9", "f_oracle", "abs_diff", "four_mode_probability"};
  for (const auto& r : rows) {
    csv.row({num(r.e), num(r.f_closed), num(r.f_oracle),
             num(std::abs(r.f_oracle - r.f_closed)),
             num(r.four_mode_probability)});
  }
  return csv.str();
}

std::string render_eq10_csv(const std::vector<Eq10Row>& rows, double e) {
  CsvWriter csv{"p", "m", "e", "f_eq10", "f_credited", "f_exact", "deviation",
                "predicted_deviation", "f_exact_bosonic", "pair_probability",
                "four_mode_probability", "rejected_probability"};
  for (const auto& r : rows) {
    csv.row({num(r.p), num(r.m), num(e), num(r.f_closed), num(r.f_credited),
             num(r.f_exact), num(r.deviation), num(r.predicted_deviation),
             num(r.f_exact_bosonic), num(r.pair_probability),
             num(r.four_mode_probability), num(r.rejected_probability)});
  }
  return csv.str();
}

std::string render_simplex_csv(const std::vector<SimplexRow>& rows,
                               double phi) {
  CsvWriter csv{"alpha", "beta", "delta", "eta", "phi",
                "accepted_probability", "p_parallel", "p_crossed",
                "min_fidelity", "max_fidelity"};
  for (const auto& r : rows) {
    csv.row({num(r.noise.alpha), num(r.noise.beta), num(r.noise.delta),
             num(r.noise.eta), num(phi), num(r.accepted_probability),
             num(r.p_parallel), num(r.p_crossed), num(r.min_fidelity),
             num(r.max_fidelity)});
  }
  return csv.str();
}

std::string render_drift_csv(const std::vector<DriftRow>& rows,
                             const BellMixtureParams& noise) {
  CsvWriter csv{"alpha", "beta", "delta", "eta", "phi",
                "accepted_probability", "min_fidelity", "max_fidelity",
                "min_fidelity_compensated", "min_purity"};
  for (const auto& r : rows) {
    csv.row({num(noise.alpha), num(noise.beta), num(noise.delta),
             num(noise.eta), num(r.phi), num(r.accepted_probability),
             num(r.min_fidelity), num(r.max_fidelity),
             num(r.min_fidelity_compensated), num(r.min_purity)});
  }
  return csv.str();
}

namespace {

std::vector<TraceStep> run_trace(const RunConfig& cfg) {
  return trace_evolution(
      spatial_drift(hyper_pair_with(cfg.trace_input), cfg.drift));
}

}  // namespace

std::string run_to_csv(const RunConfig& cfg) {
  const Execution exec = cfg.parallel ? Execution::parallel : Execution::serial;
  switch (cfg.kind) {
    case ExperimentKind::trace:
      return render_trace_csv(run_trace(cfg));
    case ExperimentKind::purify: {
      const MixedState channel = spatial_drift(
          bell_mixture_channel(ideal_hyper_pair(), cfg.noise), cfg.drift);
      return render_purify_csv(cfg.noise, purify(channel, cfg.drift));
    }
    case ExperimentKind::pdc:
      return render_pdc_csv(pdc_pipeline(cfg.source, cfg.e, cfg.m));
    case ExperimentKind::sweep:
      switch (cfg.sweep_target) {
        case SweepTarget::eq9:
          return render_eq9_csv(sweep_eq9(cfg.e_grid, exec));
        case SweepTarget::eq10:
          return render_eq10_csv(
              sweep_eq10(cfg.p_grid, cfg.m_grid, cfg.e, cfg.source.r,
                         cfg.source.pump_phase, exec),
              cfg.e);
        case SweepTarget::simplex:
          return render_simplex_csv(
              sweep_simplex(cfg.simplex_divisions, cfg.drift.phi, exec),
              cfg.drift.phi);
        case SweepTarget::drift:
          return render_drift_csv(sweep_drift(cfg.phi_grid, cfg.noise, exec),
                                  cfg.noise);
      }
  }
  throw std::logic_error("unreachable experiment kind");
}

void run(const RunConfig& cfg, std::ostream& text) {
  if (cfg.kind == ExperimentKind::trace) {
    text << render_trace_text(run_trace(cfg));
    if (cfg.out.empty()) return;
  }
  const std::string csv = run_to_csv(cfg);
  if (cfg.out.empty()) {
    text << csv;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("experiment.out", "cannot write '" + cfg.out + "'");
  file << csv;
  file.flush();
  if (!file) throw ConfigError("experiment.out", "write failed for '" + cfg.out + "'");
}

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Exact linear-optics simulator for deterministic polarization "
               "entanglement purification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  struct NumericFlag {
    const char* flag;
    const char* key;
    const char* help;
    double value = 0.0;
  };
  std::vector<NumericFlag> numeric{
      {"--alpha", "noise.alpha", "phi+ weight"},
      {"--beta", "noise.beta", "phi- weight"},
      {"--delta", "noise.delta", "psi+ weight"},
      {"--eta", "noise.eta", "psi- weight"},
      {"--phi", "drift.phi", "spatial phase drift (rad)"},
      {"--p", "source.p", "single-pair emission probability"},
      {"--m", "channel.m", "per-photon loss probability"},
      {"--e", "channel.e", "pair bit-flip probability"},
  };
  std::string input;
  std::string target;
  bool serial = false;

  for (const char* name : {"trace", "purify", "pdc", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "INI config file");
    sub->add_option("--out", out_path, "CSV output path");
    for (auto& f : numeric) sub->add_option(f.flag, f.value, f.help);
    if (std::string_view(name) == "trace") {
      sub->add_option("--input", input, "phi+, phi-, psi+ or psi-");
    }
    if (std::string_view(name) == "sweep") {
      sub->add_option("--target", target, "eq9, eq10, simplex or drift");
      sub->add_flag("--serial", serial, "use the serial reference kernels");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? 0 : 1;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    overrides.emplace_back("experiment.kind", sub->get_name());
    if (!out_path.empty()) overrides.emplace_back("experiment.out", out_path);
    for (const auto& f : numeric) {
      if (sub->count(f.flag) > 0) {
        std::ostringstream v;
        v << std::setprecision(17) << f.value;
        overrides.emplace_back(f.key, v.str());
      }
    }
    if (!input.empty()) overrides.emplace_back("trace.input", input);
    if (!target.empty()) overrides.emplace_back("sweep.target", target);
    if (serial) overrides.emplace_back("experiment.parallel", "false");

    const RunConfig cfg = config_path.empty()
                              ? parse_config("", overrides)
                              : load_config(config_path, overrides);
    run(cfg, out);
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace depp
