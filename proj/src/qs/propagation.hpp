#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "common.hpp"
#include "linear_response.hpp"

namespace qs {

struct GridSpec {
  double tau_min = 0.0, tau_max = 0.0;  // retarded-time bounds, s
  int n_tau = 0;
  double z = 0.0;  // propagation depth, cm
  int n_z_quadrature = 0;
  // Response-integral start time; NaN selects the default -20*T.
  double t0 = std::numeric_limits<double>::quiet_NaN();

  void validate() const;
  double resolve_t0(double T) const;
};

struct EnvelopeField {
  GridSpec grid;
  std::vector<double> tau;
  std::vector<cd> values;    // envelope at depth grid.z
  std::vector<cd> incident;
  std::vector<char> saturated;  // per-sample exponent-cap flags

  bool any_saturated() const;
};

struct TrainMetrics {
  double repetition_period = 0.0;  // s, mean inter-peak spacing
  double peak_fwhm = 0.0;          // s, highest peak at half max above trough
  double contrast = 0.0;           // peak/trough intensity ratio
  double mean_gain = 0.0;          // mean |eps|^2 / mean |inc|^2
  int n_peaks = 0;
  double period_jitter = 0.0;      // spacing stddev / mean
};

// kappa = 2 pi rho w0^2 |d12|^2 / (hbar c w), CGS.
double coupling_constant(const MediumParams& medium, const ProbeParams& probe);

constexpr double kDefaultExponentCap = 50.0;

struct ExponentSample {
  cd value;
  bool saturated = false;
};

// Shared per-run evaluator: one response accumulation over the full retarded
// window, queried at the depth-quadrature nodes of every tau sample.
class Propagator {
 public:
  Propagator(const PumpParams& pump, const ProbeParams& probe,
             const MediumParams& medium, TermMode mode,
             double t0, double t_end,
             double exponent_cap = kDefaultExponentCap);

  // Susceptibility-like integrand X(t) of the depth integral.
  cd integrand(double t) const;

  // Complex exponent of the envelope at (z, tau): -kappa * int_0^z X(tau+z'/c) dz'
  // (literal mode keeps the + sign), capped at exponent_cap on the real part.
  ExponentSample exponent(double z, double tau, int n_z_quadrature) const;

  cd incident(double tau) const;
  cd envelope(double z, double tau, int n_z_quadrature, bool* saturated) const;

  const ResponseAccumulator& accumulator() const { return *acc_; }
  double exponent_cap() const { return cap_; }

 private:
  std::unique_ptr<ResponseAccumulator> acc_;  // absent when rho == 0
  PumpParams pump_;
  ProbeParams probe_;
  double kappa_, cap_, sign_;
};

cd envelope(double z, double tau, const PumpParams& pump, const ProbeParams& probe,
            const MediumParams& medium, TermMode mode,
            int n_z_quadrature, double t0 = std::numeric_limits<double>::quiet_NaN());

EnvelopeField intensity_profile(const GridSpec& grid, const PumpParams& pump,
                                const ProbeParams& probe, const MediumParams& medium,
                                TermMode mode,
                                double exponent_cap = kDefaultExponentCap);

// Metrics over the field's own grid; throws ValidationError below 3 peaks.
TrainMetrics train_metrics(const EnvelopeField& field);

}  // namespace qs
