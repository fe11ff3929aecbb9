#include "doppler.hpp"

#include <algorithm>
#include <cmath>

#include "threads.hpp"

namespace qs {

void DopplerSpec::validate() const {
  if (n_nodes < 1) throw ConfigError("doppler.n_nodes must be >= 1");
  if (v_sigma < 0.0) throw ConfigError("doppler.v_sigma must be non-negative");
}

double velocity_sigma(double temperature_K, double mass_g) {
  if (temperature_K < 0.0) throw ConfigError("temperature must be non-negative");
  if (temperature_K == 0.0) return 0.0;
  if (!(mass_g > 0.0)) throw ConfigError("atomic mass must be positive");
  return std::sqrt(kBoltzmann * temperature_K / mass_g);
}

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw ConfigError("gauss_hermite: n must be >= 1");
  GaussHermiteRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.weights[0] = std::sqrt(kPi);
    return rule;
  }
  // Newton on the orthonormal Hermite recurrence, largest root first.
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  int half = (n + 1) / 2;
  std::vector<double> x(n, 0.0), w(n, 0.0);
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    bool done = false;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
             std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) {
        done = true;
        break;
      }
    }
    if (!done) throw NumericError("gauss_hermite: Newton iteration stalled");
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  if (n % 2 == 1) x[half - 1] = 0.0;
  // Ascending node order for a deterministic reduction.
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return x[a] < x[b]; });
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = x[idx[i]];
    rule.weights[i] = w[idx[i]];
  }
  return rule;
}

ShiftedParams doppler_shifted_params(double v, const PumpParams& pump,
                                     const ProbeParams& probe,
                                     const MediumParams& medium) {
  if (std::abs(v) >= 0.01 * kLightSpeed) {
    throw ConfigError("doppler shift is first order only; |v| must be << c");
  }
  ShiftedParams out{pump, probe, medium};
  double shift = medium.omega0 * v / kLightSpeed;
  out.medium.omega0 = medium.omega0 + shift;
  out.pump.delta = pump.delta - shift;
  return out;
}

EnvelopeField doppler_average_envelope(const GridSpec& grid, const PumpParams& pump,
                                       const ProbeParams& probe,
                                       const MediumParams& medium,
                                       const DopplerSpec& spec, TermMode mode,
                                       double exponent_cap) {
  spec.validate();
  if (spec.n_nodes == 1) {
    return intensity_profile(grid, pump, probe, medium, mode, exponent_cap);
  }
  grid.validate();
  pump.validate();
  GaussHermiteRule rule = gauss_hermite(spec.n_nodes);
  double t0 = grid.resolve_t0(pump.T);
  double t_end = grid.tau_max + grid.z / kLightSpeed;
  auto n = static_cast<std::size_t>(grid.n_tau);
  double dtau = (grid.tau_max - grid.tau_min) / static_cast<double>(grid.n_tau - 1);

  EnvelopeField field;
  field.grid = grid;
  field.tau.resize(n);
  field.values.assign(n, cd(0.0, 0.0));
  field.incident.resize(n);
  field.saturated.assign(n, 0);

  std::vector<cd> accum(n, cd(0.0, 0.0));  // exponent or field, per mode
  for (int k = 0; k < spec.n_nodes; ++k) {
    double v = std::sqrt(2.0) * spec.v_sigma * rule.nodes[k];
    double wt = rule.weights[k] / std::sqrt(kPi);
    ShiftedParams sp = doppler_shifted_params(v, pump, probe, medium);
    Propagator prop(sp.pump, sp.probe, sp.medium, mode, t0, t_end, exponent_cap);
    parallel_for(n, [&](std::size_t i) {
      double tau = grid.tau_min + static_cast<double>(i) * dtau;
      if (k == 0) {
        field.tau[i] = tau;
        field.incident[i] = prop.incident(tau);
      }
      if (spec.average_field) {
        bool sat = false;
        accum[i] += wt * prop.envelope(grid.z, tau, grid.n_z_quadrature, &sat);
        if (sat) field.saturated[i] = 1;
      } else {
        ExponentSample ex = prop.exponent(grid.z, tau, grid.n_z_quadrature);
        accum[i] += wt * ex.value;
        if (ex.saturated) field.saturated[i] = 1;
      }
    });
  }
  parallel_for(n, [&](std::size_t i) {
    if (spec.average_field) {
      field.values[i] = accum[i];
      return;
    }
    cd ex = accum[i];
    if (ex.real() > exponent_cap) {
      ex = cd(exponent_cap, ex.imag());
      field.saturated[i] = 1;
    }
    field.values[i] = ex == cd(0.0, 0.0) ? field.incident[i]
                                         : field.incident[i] * std::exp(ex);
  });
  return field;
}

}  // namespace qs
