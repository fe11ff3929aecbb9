#pragma once

#include <string>
#include <vector>

#include "common.hpp"
#include "doppler.hpp"
#include "dressed_atom.hpp"
#include "linear_response.hpp"
#include "propagation.hpp"

namespace qs {

struct DopplerConfig {
  double temperature_K = 0.0;
  double atomic_mass_amu = 0.0;
  int doppler_nodes = 16;
  bool average_field = false;  // "average": "exponent" (default) or "field"
  bool present = false;
};

struct SimulationConfig {
  PumpParams pump;
  ProbeParams probe;
  MediumParams medium;
  GridSpec grid;
  DopplerConfig doppler;
  TermMode mode = TermMode::resonant;
  double exponent_cap = kDefaultExponentCap;

  DopplerSpec doppler_spec() const;
  void validate() const;  // full cross-validation; warnings go to log_notice
};

SimulationConfig load_config(const std::string& path);
SimulationConfig parse_config(const std::string& json_text);
std::string canonical_json(const SimulationConfig& cfg);

const char* tool_version();

// FNV-1a 64-bit, hex string.
std::string fnv1a_hex(const std::string& data);

struct SimulateResult {
  EnvelopeField field;
  bool has_metrics = false;
  TrainMetrics metrics;
  std::string metrics_error;
};

// Writes envelope.csv, metrics.json, manifest.json (+ plot.svg when asked).
SimulateResult run_simulate(const SimulationConfig& cfg, const std::string& out_dir,
                            bool write_svg);

struct SweepRow {
  double value = 0.0;
  bool ok = false;
  TrainMetrics metrics;
  std::string error;
};

// Parameter path is dotted, e.g. "medium.rho" or "pump.V0".
std::vector<SweepRow> run_sweep(const SimulationConfig& cfg,
                                const std::string& param_path,
                                const std::vector<double>& values,
                                const std::string& out_dir);

// Suites: atom, response, polarization. Returns true when every tolerance
// holds; the JSON report (always written) includes the recorded literal-mode
// disagreement for the polarization suite.
bool run_validate(const std::string& suite, const std::string& report_path);

std::string emit_plot_svg(const EnvelopeField& field);
void emit_plot(const EnvelopeField& field, const std::string& path);

void write_envelope_csv(const EnvelopeField& field, const std::string& path);
void write_atom_trace_csv(const SimulationConfig& cfg, double t_min, double t_max,
                          int n, const std::string& path);
void write_response_trace_csv(const SimulationConfig& cfg, double t_min,
                              double t_max, int n, const std::string& path);

}  // namespace qs
