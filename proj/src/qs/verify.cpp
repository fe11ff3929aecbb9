#include "verify.hpp"

#include <array>
#include <cmath>

namespace qs {
namespace {

template <std::size_t N, typename Deriv>
void rk4_step(double t, double h, std::array<cd, N>& y, const Deriv& deriv) {
  std::array<cd, N> k1 = deriv(t, y), tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  std::array<cd, N> k2 = deriv(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  std::array<cd, N> k3 = deriv(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
  std::array<cd, N> k4 = deriv(t + h, tmp);
  for (std::size_t i = 0; i < N; ++i) {
    y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

double coupling(double t, const PumpParams& pump) {
  double x = -t / pump.T;
  return x > 700.0 ? 0.0 : pump.V0 / (1.0 + std::exp(x));
}

}  // namespace

void OdeSpec::validate() const {
  if (!(step > 0.0)) throw ConfigError("ode.step must be positive");
  if (!(t_start < t_end)) throw ConfigError("ode: t_start must be < t_end");
  if (order != 4) throw ConfigError("ode.order: only the 4th-order method exists");
}

std::vector<AmplitudePoint> tdse_oracle(const OdeSpec& spec, const PumpParams& pump) {
  spec.validate();
  pump.validate();
  if (spec.step > pump.T / 200.0) {
    throw ConfigError("ode.step must be <= T/200 for the amplitude oracle");
  }
  const cd i(0.0, 1.0);
  double D = pump.delta;
  auto deriv = [&](double t, const std::array<cd, 2>& y) {
    double V = coupling(t, pump);
    return std::array<cd, 2>{-i * V * y[1], -i * (V * y[0] - D * y[1])};
  };
  auto n = static_cast<std::size_t>(std::ceil((spec.t_end - spec.t_start) / spec.step));
  std::array<cd, 2> y{cd(1.0, 0.0), cd(0.0, 0.0)};
  std::vector<AmplitudePoint> out;
  out.reserve(n + 1);
  double t = spec.t_start;
  for (std::size_t s = 0; s <= n; ++s) {
    double drift = std::abs(std::norm(y[0]) + std::norm(y[1]) - 1.0);
    if (drift > 1e-9) {
      throw NumericError("tdse_oracle: norm drift exceeded 1e-9; reduce the step");
    }
    out.push_back({t, DressedAmplitudes{y[0], y[1]}});
    rk4_step(t, spec.step, y, deriv);
    t = spec.t_start + static_cast<double>(s + 1) * spec.step;
  }
  return out;
}

std::vector<LinearizedPoint> linearized_oracle(const OdeSpec& spec,
                                               const PumpParams& pump,
                                               const ProbeParams& probe,
                                               const MediumParams& medium,
                                               int max_samples) {
  spec.validate();
  pump.validate();
  probe.validate();
  medium.validate();
  if (medium.gamma != 0.0) {
    throw ConfigError("linearized_oracle models the undamped system (gamma = 0)");
  }
  double w = probe.omega, w0 = medium.omega0, D = pump.delta;
  if (spec.step > pump.T / 200.0 ||
      spec.step > 2.0 * kPi / (50.0 * (w + w0))) {
    throw ConfigError("ode.step too coarse to resolve the optical phase");
  }
  if (max_samples < 2) throw ConfigError("max_samples must be >= 2");

  // Probe Rabi drive; both quadratures integrated in one pass.
  cd eps = std::sqrt(medium.d12_sq) * probe.eps_probe / kHbar;
  cd epsq = cd(0.0, 1.0) * eps;
  const cd i(0.0, 1.0);

  // y = [f, g, C1, C2, C1q, C2q, theta2, sigma2, sigma1, theta1]
  auto deriv = [&](double t, const std::array<cd, 10>& y) {
    double V = coupling(t, pump);
    cd f = y[0], g = y[1];
    cd psi2 = std::exp(-i * D * t) * g;
    cd ed = std::exp(i * D * t);
    cd em = std::exp(-i * w0 * t), ep = std::exp(i * w0 * t);
    cd cw = std::exp(-i * w * t);
    cd Ea = eps * cw + std::conj(eps) / cw;
    cd Eb = epsq * cw + std::conj(epsq) / cw;
    cd dm = std::exp(-i * (w - w0) * t);
    cd dp = std::exp(-i * (w + w0) * t);
    std::array<cd, 10> dr;
    dr[0] = -i * V * g;
    dr[1] = -i * (V * f - D * g);
    dr[2] = -i * (V * ed * y[3] + Ea * em * psi2);
    dr[3] = -i * (V / ed * y[2] + Ea * ep * f);
    dr[4] = -i * (V * ed * y[5] + Eb * em * psi2);
    dr[5] = -i * (V / ed * y[4] + Eb * ep * f);
    dr[6] = f * dm;        // theta2
    dr[7] = psi2 / dm;     // sigma2
    dr[8] = psi2 * dp;     // sigma1
    dr[9] = f / dp;        // theta1
    return dr;
  };

  auto n = static_cast<std::size_t>(std::ceil((spec.t_end - spec.t_start) / spec.step));
  std::size_t stride = std::max<std::size_t>(1, n / static_cast<std::size_t>(max_samples));
  std::array<cd, 10> y{};
  y[0] = cd(1.0, 0.0);
  std::vector<LinearizedPoint> out;
  out.reserve(n / stride + 2);
  double t = spec.t_start;
  for (std::size_t s = 0; s <= n; ++s) {
    if (s % stride == 0 || s == n) {
      double drift = std::abs(std::norm(y[0]) + std::norm(y[1]) - 1.0);
      if (drift > 1e-9) {
        throw NumericError("linearized_oracle: norm drift exceeded 1e-9");
      }
      LinearizedPoint p;
      p.t = t;
      p.amps = DressedAmplitudes{y[0], y[1]};
      p.C1 = y[2];
      p.C2 = y[3];
      p.C1q = y[4];
      p.C2q = y[5];
      p.integrals = ResponseIntegrals{y[8], y[7], y[9], y[6]};
      // <d>_probe in units of d12: dd = (f* C2 + C1* psi2) e^{-i w0 t} + c.c.;
      // the two quadrature runs isolate the eps-linear e^{-i w t} coefficient.
      cd psi2 = std::exp(-i * D * t) * y[1];
      cd em = std::exp(-i * w0 * t);
      cd d1 = (std::conj(y[0]) * y[3] + std::conj(y[2]) * psi2) * em;
      cd d2 = (std::conj(y[0]) * y[5] + std::conj(y[4]) * psi2) * em;
      p.A = 0.5 * ((d1 + std::conj(d1)) - i * (d2 + std::conj(d2))) *
            std::exp(i * w * t);
      out.push_back(p);
    }
    rk4_step(t, spec.step, y, deriv);
    t = spec.t_start + static_cast<double>(s + 1) * spec.step;
  }
  return out;
}

PolarizationSample polarization_component(const std::vector<LinearizedPoint>& series,
                                          const ProbeParams& probe,
                                          double window_start, double window_end) {
  if (series.size() < 2) throw ValidationError("polarization: series too short");
  if (!(window_end > window_start)) {
    throw ValidationError("polarization: empty demodulation window");
  }
  double cycles = (window_end - window_start) * probe.omega / (2.0 * kPi);
  if (std::abs(cycles - std::round(cycles)) > 1e-3 || cycles < 0.5) {
    throw ValidationError(
        "polarization: demodulation window is not an integer cycle count");
  }
  // Trapezoid average of the stored demodulated amplitude over the window.
  cd sum(0.0, 0.0);
  double wsum = 0.0;
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    double a = series[k].t, b = series[k + 1].t;
    double lo = std::max(a, window_start), hi = std::min(b, window_end);
    if (!(hi > lo)) continue;
    // Linear interpolation of A at the clipped segment ends.
    auto lerp = [&](double t) {
      double u = (t - a) / (b - a);
      return series[k].A + u * (series[k + 1].A - series[k].A);
    };
    sum += 0.5 * (hi - lo) * (lerp(lo) + lerp(hi));
    wsum += hi - lo;
  }
  if (wsum <= 0.0) throw ValidationError("polarization: window outside the series");
  PolarizationSample out;
  out.window_start = window_start;
  out.window_end = window_end;
  out.value = sum / wsum;
  return out;
}

}  // namespace qs
