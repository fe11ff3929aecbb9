#pragma once

#include <vector>

#include "common.hpp"
#include "dressed_atom.hpp"
#include "linear_response.hpp"

namespace qs {

struct OdeSpec {
  double step = 0.0;     // s, fixed
  double t_start = 0.0;  // s
  double t_end = 0.0;    // s
  int order = 4;         // method order marker; only 4 is implemented

  void validate() const;
};

struct AmplitudePoint {
  double t;
  DressedAmplitudes amps;
};

// Fixed-step RK4 on  i f' = V g,  i g' = V f - delta g  from (1, 0), with
// V(t) = V0 / (1 + e^{-t/T}). Throws NumericError when the norm drifts
// beyond 1e-9. Samples every step.
std::vector<AmplitudePoint> tdse_oracle(const OdeSpec& spec, const PumpParams& pump);

struct LinearizedPoint {
  double t;
  DressedAmplitudes amps;  // zeroth-order (f, g)
  cd C1, C2;               // first order, probe drive eps
  cd C1q, C2q;             // first order, quadrature drive i*eps
  ResponseIntegrals integrals;  // co-integrated kernel integrals (gamma = 0)
  cd A;  // demodulated eps-linear polarization amplitude, units d12
};

// First-order-in-probe system driven by the zeroth-order trajectory; both
// probe quadratures are integrated in one pass so the eps-linear polarization
// component can be demodulated exactly. Undamped only (medium.gamma == 0).
std::vector<LinearizedPoint> linearized_oracle(const OdeSpec& spec,
                                               const PumpParams& pump,
                                               const ProbeParams& probe,
                                               const MediumParams& medium,
                                               int max_samples = 4000);

struct PolarizationSample {
  cd value;  // eps-linear amplitude of the e^{-i w t} polarization, units d12
  double window_start, window_end;
};

// Projects <d>_probe onto the probe carrier by two-phase demodulation,
// averaged (trapezoid) over [window_start, window_end]; the window must span
// an integer number of optical cycles within 1e-3.
PolarizationSample polarization_component(const std::vector<LinearizedPoint>& series,
                                          const ProbeParams& probe,
                                          double window_start, double window_end);

}  // namespace qs
