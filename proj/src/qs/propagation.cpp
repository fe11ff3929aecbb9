#include "propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "threads.hpp"

namespace qs {
namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr double kGlX[5] = {
    -0.9061798459386640, -0.5384693101056831, 0.0,
    0.5384693101056831, 0.9061798459386640,
};
constexpr double kGlW[5] = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
    0.4786286704993665, 0.2369268850561891,
};

}  // namespace

void GridSpec::validate() const {
  if (!(tau_min < tau_max)) throw ConfigError("grid: tau_min must be < tau_max");
  if (n_tau < 2) throw ConfigError("grid.n_tau must be >= 2");
  if (n_z_quadrature < 2) throw ConfigError("grid.n_z_quadrature must be >= 2");
  if (z < 0.0) throw ConfigError("grid.z must be non-negative");
  if (!std::isnan(t0) && !(t0 < tau_min)) {
    throw ConfigError("grid.t0 must precede tau_min");
  }
}

double GridSpec::resolve_t0(double T) const {
  return std::isnan(t0) ? -20.0 * T : t0;
}

bool EnvelopeField::any_saturated() const {
  return std::find(saturated.begin(), saturated.end(), char(1)) != saturated.end();
}

double coupling_constant(const MediumParams& medium, const ProbeParams& probe) {
  medium.validate();
  probe.validate();
  return 2.0 * kPi * medium.rho * medium.omega0 * medium.omega0 * medium.d12_sq /
         (kHbar * kLightSpeed * probe.omega);
}

Propagator::Propagator(const PumpParams& pump, const ProbeParams& probe,
                       const MediumParams& medium, TermMode mode,
                       double t0, double t_end, double exponent_cap)
    : pump_(pump),
      probe_(probe),
      kappa_(coupling_constant(medium, probe)),
      cap_(exponent_cap),
      sign_(mode == TermMode::literal ? 1.0 : -1.0) {
  pump.validate();
  if (!(exponent_cap > 0.0)) throw ConfigError("exponent_cap must be positive");
  if (kappa_ > 0.0) {
    acc_ = std::make_unique<ResponseAccumulator>(pump, probe, medium, mode, t0, t_end);
  }
}

cd Propagator::integrand(double t) const {
  const DressedSolver& sol = acc_->solver();
  DressedAmplitudes amps = sol.exact(t);
  cd psi2 = sol.bare_excited(t, amps);
  ResponseIntegrals ri = acc_->at(t);
  const cd i(0.0, 1.0);
  cd slow_phase = std::exp(i * (acc_->omega() - acc_->omega0_eff()) * t);
  switch (acc_->mode()) {
    case TermMode::resonant:
      return (std::conj(amps.f) * ri.theta2 - psi2 * std::conj(ri.sigma2)) * slow_phase;
    case TermMode::literal:
      // Counter-rotating pair under the slowly varying phase, as printed.
      return (std::conj(amps.f) * ri.theta1 - psi2 * ri.sigma1) * slow_phase;
    default: {
      cd fast_phase = std::exp(i * (acc_->omega() + acc_->omega0_eff()) * t);
      return (std::conj(amps.f) * ri.theta2 - psi2 * std::conj(ri.sigma2)) * slow_phase +
             (std::conj(psi2) * ri.sigma1 - amps.f * std::conj(ri.theta1)) * fast_phase;
    }
  }
}

ExponentSample Propagator::exponent(double z, double tau, int n_z_quadrature) const {
  ExponentSample out;
  out.value = cd(0.0, 0.0);
  if (kappa_ == 0.0 || z == 0.0) return out;
  if (n_z_quadrature < 2) throw ConfigError("n_z_quadrature must be >= 2");
  int n_seg = std::max(1, n_z_quadrature / 5);
  double hseg = z / static_cast<double>(n_seg);
  cd integral(0.0, 0.0);
  for (int s = 0; s < n_seg; ++s) {
    double zc = (static_cast<double>(s) + 0.5) * hseg;
    for (int j = 0; j < 5; ++j) {
      double zq = zc + 0.5 * hseg * kGlX[j];
      integral += kGlW[j] * integrand(tau + zq / kLightSpeed);
    }
  }
  integral *= 0.5 * hseg;
  out.value = sign_ * kappa_ * integral;
  if (out.value.real() > cap_) {
    out.value = cd(cap_, out.value.imag());
    out.saturated = true;
  }
  return out;
}

cd Propagator::incident(double tau) const {
  double x = -tau / pump_.T;
  double s = x > 700.0 ? 0.0 : 1.0 / (1.0 + std::exp(x));
  return cd(probe_.eps_probe * s, 0.0);
}

cd Propagator::envelope(double z, double tau, int n_z_quadrature,
                        bool* saturated) const {
  cd inc = incident(tau);
  ExponentSample ex = exponent(z, tau, n_z_quadrature);
  if (saturated) *saturated = ex.saturated;
  if (ex.value == cd(0.0, 0.0)) return inc;  // identity limits stay bit-exact
  return inc * std::exp(ex.value);
}

cd envelope(double z, double tau, const PumpParams& pump, const ProbeParams& probe,
            const MediumParams& medium, TermMode mode, int n_z_quadrature,
            double t0) {
  if (std::isnan(t0)) t0 = -20.0 * pump.T;
  if (medium.rho == 0.0 || z == 0.0) {
    MediumParams empty = medium;
    empty.rho = 0.0;
    Propagator prop(pump, probe, empty, mode, t0, tau);
    return prop.envelope(z, tau, n_z_quadrature, nullptr);
  }
  Propagator prop(pump, probe, medium, mode, t0, tau + z / kLightSpeed);
  return prop.envelope(z, tau, n_z_quadrature, nullptr);
}

EnvelopeField intensity_profile(const GridSpec& grid, const PumpParams& pump,
                                const ProbeParams& probe, const MediumParams& medium,
                                TermMode mode, double exponent_cap) {
  grid.validate();
  pump.validate();
  double t0 = grid.resolve_t0(pump.T);
  if (!(t0 < grid.tau_min)) throw ConfigError("grid.t0 must precede tau_min");
  double t_end = grid.tau_max + grid.z / kLightSpeed;
  Propagator prop(pump, probe, medium, mode, t0, t_end, exponent_cap);

  EnvelopeField field;
  field.grid = grid;
  auto n = static_cast<std::size_t>(grid.n_tau);
  field.tau.resize(n);
  field.values.resize(n);
  field.incident.resize(n);
  field.saturated.assign(n, 0);
  double dtau = (grid.tau_max - grid.tau_min) / static_cast<double>(grid.n_tau - 1);
  parallel_for(n, [&](std::size_t i) {
    double tau = grid.tau_min + static_cast<double>(i) * dtau;
    field.tau[i] = tau;
    field.incident[i] = prop.incident(tau);
    bool sat = false;
    field.values[i] = prop.envelope(grid.z, tau, grid.n_z_quadrature, &sat);
    field.saturated[i] = sat ? 1 : 0;
  });
  return field;
}

TrainMetrics train_metrics(const EnvelopeField& field) {
  std::size_t n = field.values.size();
  if (n < 3 || field.tau.size() != n || field.incident.size() != n) {
    throw ValidationError("train_metrics: field is empty or inconsistent");
  }
  std::vector<double> inten(n), inc2(n);
  for (std::size_t i = 0; i < n; ++i) {
    inten[i] = std::norm(field.values[i]);
    inc2[i] = std::norm(field.incident[i]);
  }
  double dtau = field.tau[1] - field.tau[0];

  // Strict local maxima with parabolic refinement.
  std::vector<double> peaks;
  std::size_t top = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (inten[i] > inten[i - 1] && inten[i] >= inten[i + 1]) {
      double y0 = inten[i - 1], y1 = inten[i], y2 = inten[i + 1];
      double den = y0 - 2.0 * y1 + y2;
      double d = den != 0.0 ? 0.5 * (y0 - y2) / den : 0.0;
      peaks.push_back(field.tau[i] + d * dtau);
      if (inten[i] > inten[top]) top = i;
    }
  }
  if (peaks.size() < 3) {
    throw ValidationError("train_metrics: fewer than 3 intensity peaks detected");
  }

  TrainMetrics m;
  m.n_peaks = static_cast<int>(peaks.size());
  double mean_sp = 0.0;
  for (std::size_t i = 1; i < peaks.size(); ++i) mean_sp += peaks[i] - peaks[i - 1];
  mean_sp /= static_cast<double>(peaks.size() - 1);
  m.repetition_period = mean_sp;
  double var = 0.0;
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    double d = peaks[i] - peaks[i - 1] - mean_sp;
    var += d * d;
  }
  var /= static_cast<double>(peaks.size() - 1);
  m.period_jitter = std::sqrt(var) / mean_sp;

  double trough = *std::min_element(inten.begin(), inten.end());
  double crest = *std::max_element(inten.begin(), inten.end());
  m.contrast = crest / std::max(trough, 1e-300);
  m.mean_gain = std::accumulate(inten.begin(), inten.end(), 0.0) /
                std::max(std::accumulate(inc2.begin(), inc2.end(), 0.0), 1e-300);

  // FWHM of the highest peak: half maximum measured above the trough baseline.
  double half = trough + 0.5 * (inten[top] - trough);
  double left = field.tau.front(), right = field.tau.back();
  for (std::size_t i = top; i > 0; --i) {
    if (inten[i - 1] <= half) {
      double frac = (inten[i] - half) / (inten[i] - inten[i - 1]);
      left = field.tau[i] - frac * dtau;
      break;
    }
  }
  for (std::size_t i = top; i + 1 < n; ++i) {
    if (inten[i + 1] <= half) {
      double frac = (inten[i] - half) / (inten[i] - inten[i + 1]);
      right = field.tau[i] + frac * dtau;
      break;
    }
  }
  m.peak_fwhm = right - left;
  return m;
}

}  // namespace qs
