#pragma once

#include "common.hpp"
#include "specfun.hpp"

namespace qs {

// Sigmoid-switched dressing field parameters.
struct PumpParams {
  double V0 = 0.0;          // half-Rabi coupling, rad/s
  double delta = 0.0;       // pump detuning omega_pump - omega0, rad/s
  double T = 0.0;           // switching characteristic duration, s
  double omega_pump = 0.0;  // carrier frequency, rad/s
  double eps0 = 1.0;        // field amplitude (informational)

  void validate() const;
  double generalized_rabi() const;  // Omega = sqrt(delta^2 + 4 V0^2)
};

struct DressedAmplitudes {
  cd f;  // ground amplitude
  cd g;  // excited amplitude, rotating frame
  double norm_defect() const;
};

struct ConnectionCoefficients {
  cd h1, h2, h3, h4;
};

struct HypParamSet {
  cd sigma;
  specfun::Hyp2F1Params p;
};

double pump_envelope(double t_ret, const PumpParams& pump);
double argument_u(double t_ret, const PumpParams& pump);
HypParamSet hyp_params(const PumpParams& pump);

// Closed-form solver for the dressed amplitudes; the hypergeometric parameter
// set and connection coefficients are computed once at construction and are
// safe for concurrent reads afterwards. A nonzero damping rate enters as a
// complex detuning shift delta -> delta + i*gamma.
class DressedSolver {
 public:
  explicit DressedSolver(const PumpParams& pump, double gamma = 0.0);

  DressedAmplitudes exact(double t_ret) const;
  DressedAmplitudes asymptotic(double t_ret) const;
  const ConnectionCoefficients& connection() const { return h_; }

  // Bare-frame excited amplitude exp(-i*delta_eff*t)*g.
  cd bare_excited(double t_ret, const DressedAmplitudes& amps) const;

  cd delta_eff() const { return delta_eff_; }
  double T() const { return T_; }

 private:
  double T_, V0_;
  cd delta_eff_, omega_c_;  // complex generalized Rabi frequency
  cd sigma_, a_, b_, c_;
  ConnectionCoefficients h_;
};

DressedAmplitudes amplitudes_exact(double t_ret, const PumpParams& pump);
DressedAmplitudes amplitudes_asymptotic(double t_ret, const PumpParams& pump);
ConnectionCoefficients connection_coefficients(const PumpParams& pump);

}  // namespace qs
