#include "cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "specfun.hpp"
#include "threads.hpp"
#include "verify.hpp"

namespace qs {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double require_number(const ordered_json& obj, const std::string& block,
                      const std::string& key) {
  if (!obj.contains(key)) {
    throw ConfigError("config: missing field " + block + "." + key);
  }
  if (!obj.at(key).is_number()) {
    throw ConfigError("config: field " + block + "." + key + " must be a number");
  }
  return obj.at(key).get<double>();
}

double optional_number(const ordered_json& obj, const std::string& block,
                       const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) {
    throw ConfigError("config: field " + block + "." + key + " must be a number");
  }
  return obj.at(key).get<double>();
}

int require_int(const ordered_json& obj, const std::string& block,
                const std::string& key) {
  if (!obj.contains(key)) {
    throw ConfigError("config: missing field " + block + "." + key);
  }
  if (!obj.at(key).is_number_integer()) {
    throw ConfigError("config: field " + block + "." + key + " must be an integer");
  }
  return obj.at(key).get<int>();
}

void reject_unknown(const ordered_json& obj, const std::string& block,
                    std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigError("config: unknown field " + block + "." + it.key());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << content;
  if (!out) throw ConfigError("write failed: " + path);
}

EnvelopeField compute_field(const SimulationConfig& cfg) {
  DopplerSpec ds = cfg.doppler_spec();
  if (ds.n_nodes > 1 && ds.v_sigma > 0.0) {
    return doppler_average_envelope(cfg.grid, cfg.pump, cfg.probe, cfg.medium, ds,
                                    cfg.mode, cfg.exponent_cap);
  }
  return intensity_profile(cfg.grid, cfg.pump, cfg.probe, cfg.medium, cfg.mode,
                           cfg.exponent_cap);
}

ordered_json metrics_json(const SimulateResult& res) {
  ordered_json j;
  if (res.has_metrics) {
    j["repetition_period_s"] = res.metrics.repetition_period;
    j["peak_fwhm_s"] = res.metrics.peak_fwhm;
    j["contrast"] = res.metrics.contrast;
    j["mean_gain"] = res.metrics.mean_gain;
    j["n_peaks"] = res.metrics.n_peaks;
    j["period_jitter"] = res.metrics.period_jitter;
  } else {
    j["error"] = res.metrics_error;
  }
  j["saturated"] = res.field.any_saturated();
  return j;
}

}  // namespace

const char* tool_version() { return QSCOMB_VERSION; }

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

DopplerSpec SimulationConfig::doppler_spec() const {
  DopplerSpec ds;
  ds.average_field = doppler.average_field;
  if (!doppler.present) {
    ds.n_nodes = 1;
    ds.v_sigma = 0.0;
    return ds;
  }
  ds.n_nodes = doppler.doppler_nodes;
  ds.v_sigma = doppler.temperature_K > 0.0
                   ? velocity_sigma(doppler.temperature_K,
                                    doppler.atomic_mass_amu * kAmuGrams)
                   : 0.0;
  return ds;
}

void SimulationConfig::validate() const {
  pump.validate();
  probe.validate();
  medium.validate();
  grid.validate();
  doppler_spec().validate();
  if (!(exponent_cap > 0.0)) throw ConfigError("exponent_cap must be positive");
  if (medium.gamma > 0.0 && std::abs(pump.delta) < 2.0 * medium.gamma) {
    log_notice("warning: |delta| < 2*gamma; the closed-form response assumes the "
               "detuning exceeds the line broadening");
  }
  if (medium.gamma == 0.0 && probe.omega == medium.omega0) {
    log_notice("warning: undamped probe exactly on resonance; response integrals "
               "grow secularly");
  }
}

SimulationConfig parse_config(const std::string& json_text) {
  ordered_json root;
  try {
    root = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(root, "<root>",
                 {"units", "pump", "probe", "medium", "grid", "doppler", "mode",
                  "exponent_cap"});

  if (!root.contains("units") || !root["units"].is_object()) {
    throw ConfigError("config: missing units block");
  }
  const auto& units = root["units"];
  reject_unknown(units, "units", {"frequency", "density", "dipole"});
  auto expect_unit = [&](const char* key, const char* want) {
    if (!units.contains(key) || !units.at(key).is_string() ||
        units.at(key).get<std::string>() != want) {
      throw ConfigError(std::string("config: units.") + key + " must be \"" + want +
                        "\"");
    }
  };
  expect_unit("frequency", "rad/s");
  expect_unit("density", "cm^-3");
  expect_unit("dipole", "CGSE");

  SimulationConfig cfg;

  if (!root.contains("pump") || !root["pump"].is_object()) {
    throw ConfigError("config: missing pump block");
  }
  const auto& jp = root["pump"];
  reject_unknown(jp, "pump", {"V0", "delta", "T", "omega_pump", "eps0"});
  cfg.pump.V0 = require_number(jp, "pump", "V0");
  cfg.pump.delta = require_number(jp, "pump", "delta");
  cfg.pump.T = require_number(jp, "pump", "T");
  cfg.pump.eps0 = optional_number(jp, "pump", "eps0", 1.0);

  if (!root.contains("medium") || !root["medium"].is_object()) {
    throw ConfigError("config: missing medium block");
  }
  const auto& jm = root["medium"];
  reject_unknown(jm, "medium", {"omega0", "d12_sq", "rho", "gamma"});
  cfg.medium.omega0 = require_number(jm, "medium", "omega0");
  cfg.medium.d12_sq = require_number(jm, "medium", "d12_sq");
  cfg.medium.rho = require_number(jm, "medium", "rho");
  cfg.medium.gamma = optional_number(jm, "medium", "gamma", 0.0);

  cfg.pump.omega_pump =
      optional_number(jp, "pump", "omega_pump", cfg.medium.omega0 + cfg.pump.delta);

  if (!root.contains("probe") || !root["probe"].is_object()) {
    throw ConfigError("config: missing probe block");
  }
  const auto& jpr = root["probe"];
  reject_unknown(jpr, "probe", {"omega", "eps_probe", "co_propagating"});
  cfg.probe.omega = require_number(jpr, "probe", "omega");
  cfg.probe.eps_probe = optional_number(jpr, "probe", "eps_probe", 1.0);
  if (jpr.contains("co_propagating")) {
    if (!jpr["co_propagating"].is_boolean()) {
      throw ConfigError("config: probe.co_propagating must be a boolean");
    }
    cfg.probe.co_propagating = jpr["co_propagating"].get<bool>();
  }

  if (!root.contains("grid") || !root["grid"].is_object()) {
    throw ConfigError("config: missing grid block");
  }
  const auto& jg = root["grid"];
  reject_unknown(jg, "grid",
                 {"tau_min", "tau_max", "n_tau", "z", "n_z_quadrature", "t0"});
  cfg.grid.tau_min = require_number(jg, "grid", "tau_min");
  cfg.grid.tau_max = require_number(jg, "grid", "tau_max");
  cfg.grid.n_tau = require_int(jg, "grid", "n_tau");
  cfg.grid.z = require_number(jg, "grid", "z");
  cfg.grid.n_z_quadrature = require_int(jg, "grid", "n_z_quadrature");
  cfg.grid.t0 = optional_number(jg, "grid", "t0", -20.0 * cfg.pump.T);

  if (root.contains("doppler")) {
    const auto& jd = root["doppler"];
    if (!jd.is_object()) throw ConfigError("config: doppler must be an object");
    reject_unknown(jd, "doppler",
                   {"temperature_K", "atomic_mass_amu", "doppler_nodes", "average"});
    cfg.doppler.present = true;
    cfg.doppler.temperature_K = optional_number(jd, "doppler", "temperature_K", 0.0);
    cfg.doppler.atomic_mass_amu =
        optional_number(jd, "doppler", "atomic_mass_amu", 0.0);
    cfg.doppler.doppler_nodes =
        jd.contains("doppler_nodes") ? require_int(jd, "doppler", "doppler_nodes") : 16;
    if (jd.contains("average")) {
      if (!jd["average"].is_string()) {
        throw ConfigError("config: doppler.average must be a string");
      }
      std::string avg = jd["average"].get<std::string>();
      if (avg == "exponent") {
        cfg.doppler.average_field = false;
      } else if (avg == "field") {
        cfg.doppler.average_field = true;
      } else {
        throw ConfigError("config: doppler.average must be \"exponent\" or \"field\"");
      }
    }
    if (cfg.doppler.temperature_K > 0.0 && !(cfg.doppler.atomic_mass_amu > 0.0)) {
      throw ConfigError(
          "config: doppler.atomic_mass_amu required when temperature_K > 0");
    }
    cfg.medium.temperature = cfg.doppler.temperature_K;
    cfg.medium.mass = cfg.doppler.atomic_mass_amu * kAmuGrams;
  }

  if (root.contains("mode")) {
    if (!root["mode"].is_string()) throw ConfigError("config: mode must be a string");
    cfg.mode = parse_term_mode(root["mode"].get<std::string>());
  }
  cfg.exponent_cap =
      optional_number(root, "<root>", "exponent_cap", kDefaultExponentCap);

  cfg.validate();
  return cfg;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_json(const SimulationConfig& cfg) {
  ordered_json j;
  j["units"] = {{"frequency", "rad/s"}, {"density", "cm^-3"}, {"dipole", "CGSE"}};
  j["pump"] = {{"V0", cfg.pump.V0},
               {"delta", cfg.pump.delta},
               {"T", cfg.pump.T},
               {"omega_pump", cfg.pump.omega_pump},
               {"eps0", cfg.pump.eps0}};
  j["probe"] = {{"omega", cfg.probe.omega},
                {"eps_probe", cfg.probe.eps_probe},
                {"co_propagating", cfg.probe.co_propagating}};
  j["medium"] = {{"omega0", cfg.medium.omega0},
                 {"d12_sq", cfg.medium.d12_sq},
                 {"rho", cfg.medium.rho},
                 {"gamma", cfg.medium.gamma}};
  j["grid"] = {{"tau_min", cfg.grid.tau_min},
               {"tau_max", cfg.grid.tau_max},
               {"n_tau", cfg.grid.n_tau},
               {"z", cfg.grid.z},
               {"n_z_quadrature", cfg.grid.n_z_quadrature},
               {"t0", cfg.grid.resolve_t0(cfg.pump.T)}};
  if (cfg.doppler.present) {
    j["doppler"] = {{"temperature_K", cfg.doppler.temperature_K},
                    {"atomic_mass_amu", cfg.doppler.atomic_mass_amu},
                    {"doppler_nodes", cfg.doppler.doppler_nodes},
                    {"average", cfg.doppler.average_field ? "field" : "exponent"}};
  }
  j["mode"] = term_mode_name(cfg.mode);
  j["exponent_cap"] = cfg.exponent_cap;
  return j.dump(2) + "\n";
}

void write_envelope_csv(const EnvelopeField& field, const std::string& path) {
  std::string out = "tau_s,re_eps,im_eps,intensity,incident_intensity\n";
  for (std::size_t i = 0; i < field.tau.size(); ++i) {
    out += fmt_double(field.tau[i]) + "," + fmt_double(field.values[i].real()) + "," +
           fmt_double(field.values[i].imag()) + "," +
           fmt_double(std::norm(field.values[i])) + "," +
           fmt_double(std::norm(field.incident[i])) + "\n";
  }
  write_file(path, out);
}

std::string emit_plot_svg(const EnvelopeField& field) {
  if (field.tau.empty()) throw ConfigError("emit_plot: empty field");
  const int W = 880, H = 440, ml = 70, mr = 20, mt = 20, mb = 50;
  double tmin = field.tau.front(), tmax = field.tau.back();
  double imax = 0.0;
  for (std::size_t i = 0; i < field.tau.size(); ++i) {
    imax = std::max(imax, std::max(std::norm(field.values[i]),
                                   std::norm(field.incident[i])));
  }
  if (imax <= 0.0) imax = 1.0;
  auto px = [&](double t) {
    return ml + (t - tmin) / std::max(tmax - tmin, 1e-300) * (W - ml - mr);
  };
  auto py = [&](double v) { return H - mb - v / imax * (H - mt - mb); };
  auto poly = [&](auto value_of) {
    std::string pts;
    for (std::size_t i = 0; i < field.tau.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(field.tau[i]),
                    py(value_of(i)));
      pts += buf;
    }
    if (!pts.empty()) pts.pop_back();
    return pts;
  };
  char head[256];
  std::snprintf(head, sizeof head,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                W, H, W, H);
  std::string svg = head;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char axis[512];
  std::snprintf(axis, sizeof axis,
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n"
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n",
                ml, H - mb, W - mr, H - mb, ml, mt, ml, H - mb);
  svg += axis;
  svg += "<polyline fill=\"none\" stroke=\"#888888\" stroke-width=\"1\" points=\"" +
         poly([&](std::size_t i) { return std::norm(field.incident[i]); }) + "\"/>\n";
  svg += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"" +
         poly([&](std::size_t i) { return std::norm(field.values[i]); }) + "\"/>\n";
  char labels[512];
  std::snprintf(labels, sizeof labels,
                "<text x=\"%d\" y=\"%d\" font-size=\"13\" "
                "font-family=\"monospace\">tau: %.6g .. %.6g s</text>\n"
                "<text x=\"%d\" y=\"%d\" font-size=\"13\" font-family=\"monospace\" "
                "transform=\"rotate(-90 18 %d)\">intensity (max %.6g)</text>\n",
                ml, H - 18, tmin, tmax, 18, (H / 2), H / 2, imax);
  svg += labels;
  svg += "<text x=\"" + std::to_string(W - 260) +
         "\" y=\"32\" font-size=\"13\" font-family=\"monospace\" "
         "fill=\"#1f4e9c\">output</text>\n";
  svg += "<text x=\"" + std::to_string(W - 180) +
         "\" y=\"32\" font-size=\"13\" font-family=\"monospace\" "
         "fill=\"#888888\">incident</text>\n";
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const EnvelopeField& field, const std::string& path) {
  write_file(path, emit_plot_svg(field));
}

SimulateResult run_simulate(const SimulationConfig& cfg, const std::string& out_dir,
                            bool write_svg) {
  cfg.validate();
  std::filesystem::create_directories(out_dir);
  SimulateResult res;
  res.field = compute_field(cfg);
  try {
    res.metrics = train_metrics(res.field);
    res.has_metrics = true;
  } catch (const ValidationError& e) {
    res.metrics_error = e.what();
  }

  std::vector<std::pair<std::string, std::string>> files;  // name -> content
  {
    std::string csv = "tau_s,re_eps,im_eps,intensity,incident_intensity\n";
    for (std::size_t i = 0; i < res.field.tau.size(); ++i) {
      csv += fmt_double(res.field.tau[i]) + "," +
             fmt_double(res.field.values[i].real()) + "," +
             fmt_double(res.field.values[i].imag()) + "," +
             fmt_double(std::norm(res.field.values[i])) + "," +
             fmt_double(std::norm(res.field.incident[i])) + "\n";
    }
    files.emplace_back("envelope.csv", std::move(csv));
  }
  files.emplace_back("metrics.json", metrics_json(res).dump(2) + "\n");
  if (write_svg) files.emplace_back("plot.svg", emit_plot_svg(res.field));

  ordered_json manifest;
  manifest["tool"] = "qscomb";
  manifest["version"] = tool_version();
  manifest["mode"] = term_mode_name(cfg.mode);
  manifest["config"] = ordered_json::parse(canonical_json(cfg));
  // Deterministic work counters stand in for wall-clock timing so that
  // identical runs produce identical manifests.
  DopplerSpec ds = cfg.doppler_spec();
  int nodes = (ds.n_nodes > 1 && ds.v_sigma > 0.0) ? ds.n_nodes : 1;
  manifest["timing"] = {
      {"tau_samples", cfg.grid.n_tau},
      {"depth_nodes", cfg.grid.n_z_quadrature},
      {"doppler_nodes", nodes},
      {"envelope_evaluations", static_cast<long long>(cfg.grid.n_tau) * nodes}};
  ordered_json sums;
  for (const auto& [name, content] : files) sums[name] = fnv1a_hex(content);
  manifest["checksums"] = sums;
  files.emplace_back("manifest.json", manifest.dump(2) + "\n");

  for (const auto& [name, content] : files) {
    write_file((std::filesystem::path(out_dir) / name).string(), content);
  }
  return res;
}

namespace {

void set_param(SimulationConfig& cfg, const std::string& path, double value) {
  if (path == "pump.V0") cfg.pump.V0 = value;
  else if (path == "pump.delta") cfg.pump.delta = value;
  else if (path == "pump.T") cfg.pump.T = value;
  else if (path == "pump.omega_pump") cfg.pump.omega_pump = value;
  else if (path == "pump.eps0") cfg.pump.eps0 = value;
  else if (path == "probe.omega") cfg.probe.omega = value;
  else if (path == "probe.eps_probe") cfg.probe.eps_probe = value;
  else if (path == "medium.omega0") cfg.medium.omega0 = value;
  else if (path == "medium.d12_sq") cfg.medium.d12_sq = value;
  else if (path == "medium.rho") cfg.medium.rho = value;
  else if (path == "medium.gamma") cfg.medium.gamma = value;
  else if (path == "grid.z") cfg.grid.z = value;
  else if (path == "grid.tau_min") cfg.grid.tau_min = value;
  else if (path == "grid.tau_max") cfg.grid.tau_max = value;
  else if (path == "grid.t0") cfg.grid.t0 = value;
  else if (path == "doppler.temperature_K") cfg.doppler.temperature_K = value;
  else if (path == "doppler.atomic_mass_amu") cfg.doppler.atomic_mass_amu = value;
  else if (path == "exponent_cap") cfg.exponent_cap = value;
  else throw ConfigError("sweep: unknown parameter path " + path);
  if (path.rfind("doppler.", 0) == 0) {
    cfg.medium.temperature = cfg.doppler.temperature_K;
    cfg.medium.mass = cfg.doppler.atomic_mass_amu * kAmuGrams;
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SimulationConfig& cfg,
                                const std::string& param_path,
                                const std::vector<double>& values,
                                const std::string& out_dir) {
  if (values.empty()) throw ConfigError("sweep: no values given");
  {
    SimulationConfig probe_cfg = cfg;  // fail fast on a bad path
    set_param(probe_cfg, param_path, values.front());
  }
  std::vector<SweepRow> rows(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    rows[i].value = values[i];
    try {
      SimulationConfig c = cfg;
      set_param(c, param_path, values[i]);
      c.validate();
      EnvelopeField field = compute_field(c);
      rows[i].metrics = train_metrics(field);
      rows[i].ok = true;
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  }

  std::filesystem::create_directories(out_dir);
  std::string csv = "param_value,period_s,fwhm_s,contrast,mean_gain\n";
  for (const auto& r : rows) {
    if (r.ok) {
      csv += fmt_double(r.value) + "," + fmt_double(r.metrics.repetition_period) +
             "," + fmt_double(r.metrics.peak_fwhm) + "," +
             fmt_double(r.metrics.contrast) + "," + fmt_double(r.metrics.mean_gain) +
             "\n";
    } else {
      csv += fmt_double(r.value) + ",nan,nan,nan,nan\n";
    }
  }
  write_file((std::filesystem::path(out_dir) / "sweep.csv").string(), csv);

  ordered_json manifest;
  manifest["tool"] = "qscomb";
  manifest["version"] = tool_version();
  manifest["parameter"] = param_path;
  manifest["config"] = ordered_json::parse(canonical_json(cfg));
  ordered_json failures = ordered_json::array();
  for (const auto& r : rows) {
    if (!r.ok) failures.push_back({{"value", r.value}, {"error", r.error}});
  }
  manifest["failures"] = failures;
  manifest["checksums"] = {{"sweep.csv", fnv1a_hex(csv)}};
  write_file((std::filesystem::path(out_dir) / "manifest.json").string(),
             manifest.dump(2) + "\n");
  return rows;
}

void write_atom_trace_csv(const SimulationConfig& cfg, double t_min, double t_max,
                          int n, const std::string& path) {
  if (n < 2) throw ConfigError("atom trace: n must be >= 2");
  if (!(t_min < t_max)) throw ConfigError("atom trace: t_min must be < t_max");
  DressedSolver sol(cfg.pump, cfg.medium.gamma);
  std::string csv = "t_s,re_f,im_f,re_g,im_g,norm_defect\n";
  for (int i = 0; i < n; ++i) {
    double t = t_min + (t_max - t_min) * i / (n - 1.0);
    DressedAmplitudes a = sol.exact(t);
    csv += fmt_double(t) + "," + fmt_double(a.f.real()) + "," +
           fmt_double(a.f.imag()) + "," + fmt_double(a.g.real()) + "," +
           fmt_double(a.g.imag()) + "," + fmt_double(a.norm_defect()) + "\n";
  }
  write_file(path, csv);
}

void write_response_trace_csv(const SimulationConfig& cfg, double t_min,
                              double t_max, int n, const std::string& path) {
  if (n < 2) throw ConfigError("response trace: n must be >= 2");
  if (!(t_min < t_max)) throw ConfigError("response trace: t_min must be < t_max");
  double t0 = cfg.grid.resolve_t0(cfg.pump.T);
  if (!(t0 < t_min)) throw ConfigError("response trace: t0 must precede t_min");
  ResponseAccumulator acc(cfg.pump, cfg.probe, cfg.medium, cfg.mode, t0, t_max);
  std::string csv =
      "t_s,re_sigma1,im_sigma1,re_sigma2,im_sigma2,re_theta1,im_theta1,"
      "re_theta2,im_theta2\n";
  for (int i = 0; i < n; ++i) {
    double t = t_min + (t_max - t_min) * i / (n - 1.0);
    ResponseIntegrals ri = acc.at(t);
    csv += fmt_double(t) + "," + fmt_double(ri.sigma1.real()) + "," +
           fmt_double(ri.sigma1.imag()) + "," + fmt_double(ri.sigma2.real()) + "," +
           fmt_double(ri.sigma2.imag()) + "," + fmt_double(ri.theta1.real()) + "," +
           fmt_double(ri.theta1.imag()) + "," + fmt_double(ri.theta2.real()) + "," +
           fmt_double(ri.theta2.imag()) + "\n";
  }
  write_file(path, csv);
}

namespace {

struct Check {
  std::string name;
  double value;
  double tolerance;  // <= 0 means informational only
  bool pass;
};

void add_check(std::vector<Check>& cs, const std::string& name, double value,
               double tol) {
  cs.push_back({name, value, tol, tol <= 0.0 || value <= tol});
}

bool finish_report(const std::string& suite, std::vector<Check>& checks,
                   const std::string& report_path) {
  bool pass = true;
  ordered_json j;
  j["suite"] = suite;
  j["version"] = tool_version();
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    if (!c.pass) pass = false;
    ordered_json e;
    e["name"] = c.name;
    e["value"] = c.value;
    if (c.tolerance > 0.0) e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    if (c.tolerance <= 0.0) e["recorded_only"] = true;
    arr.push_back(e);
  }
  j["checks"] = arr;
  j["pass"] = pass;
  if (!report_path.empty()) write_file(report_path, j.dump(2) + "\n");
  return pass;
}

bool validate_atom(const std::string& report_path) {
  std::vector<Check> checks;
  // Oracle equivalence on three parameter sets (T = 1 units).
  const double sets[3][2] = {{-5.0, 1.0}, {-1.0, 0.5}, {1.0, 2.0}};
  for (auto& s : sets) {
    PumpParams pump;
    pump.delta = s[0];
    pump.V0 = s[1];
    pump.T = 1.0;
    pump.omega_pump = 1.0;
    OdeSpec spec;
    spec.step = 1.0 / 400.0;
    spec.t_start = -15.0;
    spec.t_end = 25.0;
    auto trace = tdse_oracle(spec, pump);
    DressedSolver sol(pump);
    double worst = 0.0;
    std::size_t stride = std::max<std::size_t>(1, trace.size() / 200);
    for (std::size_t k = 0; k < trace.size(); k += stride) {
      DressedAmplitudes ex = sol.exact(trace[k].t);
      double err = std::abs(ex.f - trace[k].amps.f) + std::abs(ex.g - trace[k].amps.g);
      worst = std::max(worst, err);
    }
    char name[80];
    std::snprintf(name, sizeof name, "oracle_equivalence(dT=%g,v0T=%g)", s[0], s[1]);
    add_check(checks, name, worst, 1e-6);
  }
  // Unitarity over the 3x3 grid.
  double worst_norm = 0.0;
  for (double dt : {-5.0, -1.0, 1.0}) {
    for (double vt : {0.1, 1.0, 5.0}) {
      PumpParams pump;
      pump.delta = dt;
      pump.V0 = vt;
      pump.T = 1.0;
      pump.omega_pump = 1.0;
      DressedSolver sol(pump);
      for (double t = -10.0; t <= 40.0; t += 0.1) {
        worst_norm = std::max(worst_norm, sol.exact(t).norm_defect());
      }
    }
  }
  add_check(checks, "unitarity_grid", worst_norm, 1e-8);
  // Asymptotic law.
  {
    PumpParams pump;
    pump.delta = -5.0;
    pump.V0 = 1.0;
    pump.T = 1.0;
    pump.omega_pump = 1.0;
    DressedSolver sol(pump);
    DressedAmplitudes e = sol.exact(30.0), a = sol.asymptotic(30.0);
    double rel = (std::abs(e.f - a.f) + std::abs(e.g - a.g)) /
                 (std::abs(e.f) + std::abs(e.g));
    add_check(checks, "asymptotic_at_30T", rel, 1e-8);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double t = 10.0; t <= 25.0; t += 0.5) {
      DressedAmplitudes ee = sol.exact(t), aa = sol.asymptotic(t);
      double err = (std::abs(ee.f - aa.f) + std::abs(ee.g - aa.g)) /
                   (std::abs(ee.f) + std::abs(ee.g));
      double y = std::log(err);
      sx += t;
      sy += y;
      sxx += t * t;
      sxy += t * y;
      ++n;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    add_check(checks, "asymptotic_slope_deviation", std::abs(slope + 1.0), 0.05);
  }
  return finish_report("atom", checks, report_path);
}

struct OracleSetup {
  PumpParams pump;
  ProbeParams probe;
  MediumParams medium;
  OdeSpec spec;
};

OracleSetup fig1_weak_setup() {
  OracleSetup s;
  double T = 1e-12, w0 = 1e15;
  s.pump.delta = -5e12;
  s.pump.V0 = 1e10;
  s.pump.T = T;
  s.pump.omega_pump = w0 + s.pump.delta;
  s.probe.omega = w0 + 5.004e11;
  s.probe.eps_probe = 1.0;
  s.medium.omega0 = w0;
  s.medium.d12_sq = 2e-34;
  s.medium.rho = 1e15;
  s.medium.gamma = 0.0;
  s.spec.step = 2.0 * kPi / (50.0 * (s.probe.omega + w0));
  s.spec.t_start = -15.0 * T;
  s.spec.t_end = 25.0 * T;
  return s;
}

bool validate_response(const std::string& report_path) {
  std::vector<Check> checks;
  OracleSetup s = fig1_weak_setup();
  double T = s.pump.T;
  auto series = linearized_oracle(s.spec, s.pump, s.probe, s.medium, 2000);
  ResponseAccumulator acc(s.pump, s.probe, s.medium, TermMode::full, s.spec.t_start,
                          s.spec.t_end);
  double worst_int = 0.0, worst_c = 0.0;
  for (std::size_t k = 0; k < series.size(); k += 97) {
    if (series[k].t < -10.0 * T) continue;
    ResponseIntegrals ri = acc.at(series[k].t);
    const ResponseIntegrals& oi = series[k].integrals;
    double scale = std::abs(oi.sigma2) + std::abs(oi.theta2) + std::abs(oi.sigma1) +
                   std::abs(oi.theta1) + 1e-30;
    worst_int = std::max(
        worst_int,
        (std::abs(ri.sigma1 - oi.sigma1) + std::abs(ri.sigma2 - oi.sigma2) +
         std::abs(ri.theta1 - oi.theta1) + std::abs(ri.theta2 - oi.theta2)) / scale);
    PerturbationAmplitudes pa = perturbation_amplitudes(0.0, ri, s.probe, s.medium);
    double cscale = std::abs(series[k].C1) + std::abs(series[k].C2) + 1e-30;
    worst_c = std::max(worst_c, (std::abs(pa.C1 - series[k].C1) +
                                 std::abs(pa.C2 - series[k].C2)) / cscale);
  }
  add_check(checks, "kernel_integrals_vs_oracle", worst_int, 1e-6);
  add_check(checks, "perturbation_amplitudes_vs_oracle", worst_c, 5e-3);
  // Linearity in the probe amplitude is exact by construction.
  {
    ResponseIntegrals ri = acc.at(10.0 * T);
    ProbeParams p2 = s.probe;
    p2.eps_probe = 3.0;
    PerturbationAmplitudes a1 = perturbation_amplitudes(0.0, ri, s.probe, s.medium);
    PerturbationAmplitudes a3 = perturbation_amplitudes(0.0, ri, p2, s.medium);
    double lin = std::abs(a3.C1 - 3.0 * a1.C1) + std::abs(a3.C2 - 3.0 * a1.C2);
    add_check(checks, "probe_linearity", lin, 1e-18);
  }
  return finish_report("response", checks, report_path);
}

bool validate_polarization(const std::string& report_path) {
  std::vector<Check> checks;
  OracleSetup s = fig1_weak_setup();
  double T = s.pump.T;
  auto series = linearized_oracle(s.spec, s.pump, s.probe, s.medium, 2000);
  Propagator res(s.pump, s.probe, s.medium, TermMode::resonant, s.spec.t_start,
                 s.spec.t_end);
  Propagator full(s.pump, s.probe, s.medium, TermMode::full, s.spec.t_start,
                  s.spec.t_end);
  Propagator lit(s.pump, s.probe, s.medium, TermMode::literal, s.spec.t_start,
                 s.spec.t_end);
  cd drive = -cd(0.0, 1.0) * std::sqrt(s.medium.d12_sq) * s.probe.eps_probe / kHbar;
  double scale = 0.0;
  for (const auto& p : series) {
    if (p.t >= 10.0 * T) scale = std::max(scale, std::abs(p.A));
  }
  double worst_res = 0.0, worst_full = 0.0, worst_lit = 0.0;
  for (std::size_t k = 0; k < series.size(); k += 29) {
    if (series[k].t < 10.0 * T) continue;
    double t = series[k].t;
    worst_res = std::max(worst_res,
                         std::abs(drive * res.integrand(t) - series[k].A) / scale);
    worst_full = std::max(worst_full,
                          std::abs(drive * full.integrand(t) - series[k].A) / scale);
    worst_lit = std::max(worst_lit,
                         std::abs(drive * lit.integrand(t) - series[k].A) / scale);
  }
  add_check(checks, "resonant_mode_vs_oracle", worst_res, 1e-3);
  add_check(checks, "full_mode_vs_oracle", worst_full, 1e-3);
  // The printed counter-rotating pair disagrees with the oracle; recorded,
  // not asserted.
  add_check(checks, "literal_mode_disagreement", worst_lit, 0.0);
  // Windowed demodulation cross-check.
  {
    double t_a = 15.0 * T;
    double cycle = 2.0 * kPi / s.probe.omega;
    double t_b = t_a + 40.0 * cycle;
    PolarizationSample ps = polarization_component(series, s.probe, t_a, t_b);
    cd asum(0.0, 0.0);
    int nn = 4000;
    for (int j = 0; j <= nn; ++j) {
      double t = t_a + (t_b - t_a) * j / nn;
      double w = (j == 0 || j == nn) ? 0.5 : 1.0;
      asum += w * drive * res.integrand(t);
    }
    asum /= nn;
    add_check(checks, "windowed_component_vs_analytic",
              std::abs(ps.value - asum) / std::abs(asum), 1e-3);
  }
  return finish_report("polarization", checks, report_path);
}

}  // namespace

bool run_validate(const std::string& suite, const std::string& report_path) {
  if (suite == "atom") return validate_atom(report_path);
  if (suite == "response") return validate_response(report_path);
  if (suite == "polarization") return validate_polarization(report_path);
  throw ConfigError("validate: unknown suite " + suite +
                    " (expected atom, response, or polarization)");
}

}  // namespace qs
