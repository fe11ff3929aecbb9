#include "qscomb/qscomb.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "qs/cli_io.hpp"
#include "qs/specfun.hpp"

namespace {

thread_local std::string g_last_error;

template <typename Fn>
qsc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const qs::ConfigError& e) {
    g_last_error = e.what();
    return QSC_ERR_CONFIG;
  } catch (const qs::ValidationError& e) {
    g_last_error = e.what();
    return QSC_ERR_VALIDATION;
  } catch (const qs::NumericError& e) {
    g_last_error = e.what();
    return QSC_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QSC_ERR_NUMERIC;
  }
}

qsc_status require(bool cond, const char* msg) {
  if (!cond) {
    g_last_error = msg;
    return QSC_ERR_CONFIG;
  }
  return QSC_OK;
}

}  // namespace

struct qsc_config {
  qs::SimulationConfig cfg;
};

extern "C" {

const char* qsc_version(void) { return qs::tool_version(); }

const char* qsc_last_error(void) { return g_last_error.c_str(); }

void qsc_string_free(char* s) { std::free(s); }

qsc_status qsc_config_load(const char* path, qsc_config** out) {
  if (qsc_status st = require(path && out, "null argument")) return st;
  *out = nullptr;
  return guarded([&] {
    auto* h = new qsc_config{qs::load_config(path)};
    *out = h;
    return QSC_OK;
  });
}

qsc_status qsc_config_parse(const char* json_text, qsc_config** out) {
  if (qsc_status st = require(json_text && out, "null argument")) return st;
  *out = nullptr;
  return guarded([&] {
    auto* h = new qsc_config{qs::parse_config(json_text)};
    *out = h;
    return QSC_OK;
  });
}

qsc_status qsc_config_canonical_json(const qsc_config* cfg, char** out_json) {
  if (qsc_status st = require(cfg && out_json, "null argument")) return st;
  *out_json = nullptr;
  return guarded([&] {
    std::string s = qs::canonical_json(cfg->cfg);
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buf) throw qs::NumericError("out of memory");
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out_json = buf;
    return QSC_OK;
  });
}

void qsc_config_free(qsc_config* cfg) { delete cfg; }

qsc_status qsc_simulate(const qsc_config* cfg, const char* out_dir, int write_svg) {
  if (qsc_status st = require(cfg && out_dir, "null argument")) return st;
  return guarded([&] {
    qs::run_simulate(cfg->cfg, out_dir, write_svg != 0);
    return QSC_OK;
  });
}

qsc_status qsc_sweep(const qsc_config* cfg, const char* param_path,
                     const double* values, size_t n, const char* out_dir) {
  if (qsc_status st = require(cfg && param_path && values && n > 0 && out_dir,
                              "null or empty argument")) {
    return st;
  }
  return guarded([&] {
    qs::run_sweep(cfg->cfg, param_path, std::vector<double>(values, values + n),
                  out_dir);
    return QSC_OK;
  });
}

qsc_status qsc_validate(const char* suite, const char* report_path) {
  if (qsc_status st = require(suite != nullptr, "null suite")) return st;
  return guarded([&] {
    bool ok = qs::run_validate(suite, report_path ? report_path : "");
    if (!ok) {
      g_last_error = std::string("validation suite failed: ") + suite;
      return QSC_ERR_VALIDATION;
    }
    return QSC_OK;
  });
}

qsc_status qsc_specfun_eval(double re_a, double im_a, double re_b, double im_b,
                            double re_c, double im_c, double u, double* re_out,
                            double* im_out, char* branch_buf, size_t branch_len) {
  if (qsc_status st = require(re_out && im_out, "null output pointer")) return st;
  return guarded([&] {
    qs::specfun::Hyp2F1Params p{{re_a, im_a}, {re_b, im_b}, {re_c, im_c}};
    qs::cd v = qs::specfun::hyp2f1(p, u);
    *re_out = v.real();
    *im_out = v.imag();
    if (branch_buf && branch_len > 0) {
      const char* name = qs::specfun::branch_name(qs::specfun::hyp2f1_branch(u));
      std::snprintf(branch_buf, branch_len, "%s", name);
    }
    return QSC_OK;
  });
}

qsc_status qsc_atom_trace(const qsc_config* cfg, double t_min, double t_max, int n,
                          const char* csv_path) {
  if (qsc_status st = require(cfg && csv_path, "null argument")) return st;
  return guarded([&] {
    qs::write_atom_trace_csv(cfg->cfg, t_min, t_max, n, csv_path);
    return QSC_OK;
  });
}

qsc_status qsc_response_trace(const qsc_config* cfg, double t_min, double t_max,
                              int n, const char* csv_path) {
  if (qsc_status st = require(cfg && csv_path, "null argument")) return st;
  return guarded([&] {
    qs::write_response_trace_csv(cfg->cfg, t_min, t_max, n, csv_path);
    return QSC_OK;
  });
}

}  // extern "C"
