#pragma once

#include <vector>

#include "common.hpp"
#include "propagation.hpp"

namespace qs {

struct DopplerSpec {
  int n_nodes = 1;
  double v_sigma = 0.0;  // 1-D velocity standard deviation, cm/s
  bool average_field = false;  // default averages the complex exponent

  void validate() const;
};

double velocity_sigma(double temperature_K, double mass_g);

struct GaussHermiteRule {
  std::vector<double> nodes;    // abscissae of exp(-x^2) weight
  std::vector<double> weights;  // sum of weights = sqrt(pi)
};

GaussHermiteRule gauss_hermite(int n);

struct ShiftedParams {
  PumpParams pump;
  ProbeParams probe;
  MediumParams medium;
};

// First-order atom-frame shift: omega0 -> omega0 (1 + v/c); pump and probe
// detunings both acquire -omega0 v/c.
ShiftedParams doppler_shifted_params(double v, const PumpParams& pump,
                                     const ProbeParams& probe,
                                     const MediumParams& medium);

EnvelopeField doppler_average_envelope(const GridSpec& grid, const PumpParams& pump,
                                       const ProbeParams& probe,
                                       const MediumParams& medium,
                                       const DopplerSpec& spec, TermMode mode,
                                       double exponent_cap = kDefaultExponentCap);

}  // namespace qs
