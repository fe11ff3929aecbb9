// qscomb command-line front end; talks to the library exclusively through
// the C API in qscomb/qscomb.h.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qscomb/qscomb.h"

namespace {

int fail(qsc_status st) {
  std::fprintf(stderr, "error: %s\n", qsc_last_error());
  return static_cast<int>(st);
}

struct ConfigHandle {
  qsc_config* h = nullptr;
  ~ConfigHandle() { qsc_config_free(h); }
};

int load(const std::string& path, ConfigHandle& cfg) {
  qsc_status st = qsc_config_load(path.c_str(), &cfg.h);
  return st == QSC_OK ? 0 : fail(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qscomb: probe pulse-train formation in a dressed two-level gas"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qsc_version()));

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run one configuration");
  std::string sim_config, sim_out;
  bool sim_svg = false;
  sim->add_option("--config", sim_config, "JSON config file")->required();
  sim->add_option("--out", sim_out, "Output directory")->required();
  sim->add_flag("--svg", sim_svg, "Also write plot.svg");

  // sweep
  auto* swp = app.add_subcommand("sweep", "Sweep one parameter");
  std::string swp_config, swp_out, swp_param;
  std::vector<double> swp_values;
  swp->add_option("--config", swp_config, "JSON config file")->required();
  swp->add_option("--out", swp_out, "Output directory")->required();
  swp->add_option("--param", swp_param, "Dotted parameter path, e.g. medium.rho")
      ->required();
  swp->add_option("--values", swp_values, "Values to sweep")
      ->required()
      ->delimiter(',');

  // validate
  auto* val = app.add_subcommand("validate", "Run an oracle validation suite");
  std::string val_suite, val_report;
  val->add_option("--suite", val_suite, "atom | response | polarization")
      ->required();
  val->add_option("--report", val_report, "JSON report path");

  // specfun eval
  auto* spf = app.add_subcommand("specfun", "Special-function utilities");
  auto* spf_eval = spf->add_subcommand("eval", "Evaluate 2F1(a,b;c;u), u <= 0");
  double a_re = 0, a_im = 0, b_re = 0, b_im = 0, c_re = 0, c_im = 0, u = 0;
  spf_eval->add_option("--a-re", a_re)->required();
  spf_eval->add_option("--a-im", a_im);
  spf_eval->add_option("--b-re", b_re)->required();
  spf_eval->add_option("--b-im", b_im);
  spf_eval->add_option("--c-re", c_re)->required();
  spf_eval->add_option("--c-im", c_im);
  spf_eval->add_option("--u", u)->required();

  // atom trace
  auto* atom = app.add_subcommand("atom", "Dressed-atom utilities");
  auto* atom_trace = atom->add_subcommand("trace", "Amplitude trace CSV");
  std::string at_config, at_out;
  double at_tmin = 0, at_tmax = 0;
  int at_n = 0;
  atom_trace->add_option("--config", at_config)->required();
  atom_trace->add_option("--t-min", at_tmin)->required();
  atom_trace->add_option("--t-max", at_tmax)->required();
  atom_trace->add_option("--n", at_n)->required();
  atom_trace->add_option("--out", at_out, "CSV path")->required();

  // response trace
  auto* resp = app.add_subcommand("response", "Probe-response utilities");
  auto* resp_trace = resp->add_subcommand("trace", "Response-integral trace CSV");
  std::string rt_config, rt_out;
  double rt_tmin = 0, rt_tmax = 0;
  int rt_n = 0;
  resp_trace->add_option("--config", rt_config)->required();
  resp_trace->add_option("--t-min", rt_tmin)->required();
  resp_trace->add_option("--t-max", rt_tmax)->required();
  resp_trace->add_option("--n", rt_n)->required();
  resp_trace->add_option("--out", rt_out, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
    app.exit(e);
    return 2;
  }

  if (sim->parsed()) {
    ConfigHandle cfg;
    if (int rc = load(sim_config, cfg)) return rc;
    qsc_status st = qsc_simulate(cfg.h, sim_out.c_str(), sim_svg ? 1 : 0);
    return st == QSC_OK ? 0 : fail(st);
  }
  if (swp->parsed()) {
    ConfigHandle cfg;
    if (int rc = load(swp_config, cfg)) return rc;
    qsc_status st = qsc_sweep(cfg.h, swp_param.c_str(), swp_values.data(),
                              swp_values.size(), swp_out.c_str());
    return st == QSC_OK ? 0 : fail(st);
  }
  if (val->parsed()) {
    qsc_status st = qsc_validate(val_suite.c_str(),
                                 val_report.empty() ? nullptr : val_report.c_str());
    return st == QSC_OK ? 0 : fail(st);
  }
  if (spf->parsed() && spf_eval->parsed()) {
    double re = 0, im = 0;
    char branch[16];
    qsc_status st = qsc_specfun_eval(a_re, a_im, b_re, b_im, c_re, c_im, u, &re,
                                     &im, branch, sizeof branch);
    if (st != QSC_OK) return fail(st);
    std::printf("{\"re\": %.17g, \"im\": %.17g, \"branch\": \"%s\"}\n", re, im,
                branch);
    return 0;
  }
  if (atom->parsed() && atom_trace->parsed()) {
    ConfigHandle cfg;
    if (int rc = load(at_config, cfg)) return rc;
    qsc_status st = qsc_atom_trace(cfg.h, at_tmin, at_tmax, at_n, at_out.c_str());
    return st == QSC_OK ? 0 : fail(st);
  }
  if (resp->parsed() && resp_trace->parsed()) {
    ConfigHandle cfg;
    if (int rc = load(rt_config, cfg)) return rc;
    qsc_status st =
        qsc_response_trace(cfg.h, rt_tmin, rt_tmax, rt_n, rt_out.c_str());
    return st == QSC_OK ? 0 : fail(st);
  }
  std::fprintf(stderr, "error: missing subcommand\n");
  return 2;
}
