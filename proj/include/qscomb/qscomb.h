/* C interface to the qscomb probe-envelope simulation library.
 *
 * All functions return qsc_status; on failure qsc_last_error() holds a
 * thread-local message. Handles are opaque and must be released with the
 * matching _free function. Strings returned through char** are heap
 * allocated and must be released with qsc_string_free().
 */
#ifndef QSCOMB_H
#define QSCOMB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsc_status {
  QSC_OK = 0,
  QSC_ERR_CONFIG = 2,
  QSC_ERR_NUMERIC = 3,
  QSC_ERR_VALIDATION = 4
} qsc_status;

typedef struct qsc_config qsc_config;

const char* qsc_version(void);
const char* qsc_last_error(void);
void qsc_string_free(char* s);

qsc_status qsc_config_load(const char* path, qsc_config** out);
qsc_status qsc_config_parse(const char* json_text, qsc_config** out);
qsc_status qsc_config_canonical_json(const qsc_config* cfg, char** out_json);
void qsc_config_free(qsc_config* cfg);

/* Writes envelope.csv, metrics.json, manifest.json (and plot.svg when
 * write_svg is nonzero) into out_dir. */
qsc_status qsc_simulate(const qsc_config* cfg, const char* out_dir, int write_svg);

/* Sweeps a dotted parameter path (e.g. "medium.rho") over values[0..n-1];
 * writes sweep.csv and manifest.json into out_dir. */
qsc_status qsc_sweep(const qsc_config* cfg, const char* param_path,
                     const double* values, size_t n, const char* out_dir);

/* suite: "atom", "response", or "polarization". The JSON report is written
 * to report_path (pass NULL to skip). Returns QSC_ERR_VALIDATION when any
 * tolerance is breached. */
qsc_status qsc_validate(const char* suite, const char* report_path);

/* 2F1(a,b;c;u) for real u <= 0; branch_buf (optional) receives the name of
 * the transformation regime used. */
qsc_status qsc_specfun_eval(double re_a, double im_a, double re_b, double im_b,
                            double re_c, double im_c, double u, double* re_out,
                            double* im_out, char* branch_buf, size_t branch_len);

/* Dressed-amplitude trace for the pump in cfg, n points over [t_min, t_max],
 * written as CSV. */
qsc_status qsc_atom_trace(const qsc_config* cfg, double t_min, double t_max,
                          int n, const char* csv_path);

/* Cumulative response-integral trace for cfg, written as CSV. */
qsc_status qsc_response_trace(const qsc_config* cfg, double t_min, double t_max,
                              int n, const char* csv_path);

#ifdef __cplusplus
}
#endif

#endif /* QSCOMB_H */
