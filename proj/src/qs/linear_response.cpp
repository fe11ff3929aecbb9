#include "linear_response.hpp"

#include <algorithm>
#include <cmath>

namespace qs {
namespace {

// 15-point Kronrod nodes (non-negative half) with Kronrod and embedded
// 7-point Gauss weights; the Gauss rule supplies the error estimate.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
};

constexpr double kMaxPanelPhase = kPi / 6.0;
constexpr std::size_t kMaxPanels = 8u * 1000u * 1000u;

}  // namespace

void ProbeParams::validate() const {
  if (!(omega > 0.0)) throw ConfigError("probe.omega must be positive");
  if (!(eps_probe >= 0.0)) throw ConfigError("probe.eps_probe must be non-negative");
}

void MediumParams::validate() const {
  if (!(omega0 > 0.0)) throw ConfigError("medium.omega0 must be positive");
  if (!(d12_sq > 0.0)) throw ConfigError("medium.d12_sq must be positive");
  if (rho < 0.0) throw ConfigError("medium.rho must be non-negative");
  if (gamma < 0.0) throw ConfigError("medium.gamma must be non-negative");
  if (temperature < 0.0) throw ConfigError("medium.temperature must be non-negative");
  if (temperature > 0.0 && !(mass > 0.0)) {
    throw ConfigError("medium.mass must be positive when temperature > 0");
  }
}

TermMode parse_term_mode(const std::string& s) {
  if (s == "resonant") return TermMode::resonant;
  if (s == "literal") return TermMode::literal;
  if (s == "full") return TermMode::full;
  throw ConfigError("term_mode must be one of resonant, literal, full");
}

const char* term_mode_name(TermMode m) {
  switch (m) {
    case TermMode::resonant: return "resonant";
    case TermMode::literal: return "literal";
    default: return "full";
  }
}

ResponseAccumulator::ResponseAccumulator(const PumpParams& pump,
                                         const ProbeParams& probe,
                                         const MediumParams& medium,
                                         TermMode mode, double t0, double t_end)
    : solver_(pump, medium.gamma),
      mode_(mode),
      t0_(t0),
      t_end_(t_end),
      omega_(probe.omega),
      omega0_eff_(medium.omega0, -medium.gamma) {
  probe.validate();
  medium.validate();
  if (!(t_end > t0)) throw ConfigError("response window requires t_end > t0");
  slow_active_ = mode != TermMode::literal;
  fast_active_ = mode != TermMode::resonant;

  double om = pump.generalized_rabi();
  double base = std::abs(pump.delta) + om + 2.0 / pump.T;
  double f_slow = std::abs(omega_ - medium.omega0) + base;
  double f_fast = omega_ + medium.omega0 + base;
  double span = t_end - t0;

  auto build = [&](double freq, double* h, std::vector<Pair2>* cum, bool fast) {
    auto n = static_cast<std::size_t>(std::ceil(span * freq / kMaxPanelPhase));
    n = std::max<std::size_t>(n, 4);
    if (n > kMaxPanels) {
      throw NumericError("response quadrature: panel budget exhausted");
    }
    *h = span / static_cast<double>(n);
    cum->resize(n + 1);
    (*cum)[0] = Pair2{cd(0.0, 0.0), cd(0.0, 0.0)};
    for (std::size_t k = 0; k < n; ++k) {
      double a = t0 + static_cast<double>(k) * *h;
      Pair2 p = fast ? gk_fast(a, a + *h) : gk_slow(a, a + *h);
      (*cum)[k + 1].first = (*cum)[k].first + p.first;
      (*cum)[k + 1].second = (*cum)[k].second + p.second;
    }
  };
  if (slow_active_) build(f_slow, &h_slow_, &cum_slow_, false);
  if (fast_active_) build(f_fast, &h_fast_, &cum_fast_, true);
}

void ResponseAccumulator::integrand(double t, bool fast, Pair2* slow_out,
                                    Pair2* fast_out) const {
  DressedAmplitudes amps = solver_.exact(t);
  cd psi2 = solver_.bare_excited(t, amps);
  const cd i(0.0, 1.0);
  if (!fast) {
    cd e_minus = std::exp(-i * (omega_ - omega0_eff_) * t);
    slow_out->first = psi2 / e_minus;  // sigma2: e^{+i(w-w0_eff)t}
    slow_out->second = amps.f * e_minus;
  } else {
    cd e_plus = std::exp(i * (omega_ + omega0_eff_) * t);
    fast_out->first = psi2 / e_plus;  // sigma1: e^{-i(w+w0_eff)t}
    fast_out->second = amps.f * e_plus;
  }
}

ResponseAccumulator::Pair2 ResponseAccumulator::gk_slow(double a, double b) const {
  double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  Pair2 acc{cd(0.0, 0.0), cd(0.0, 0.0)};
  for (int j = 0; j < 8; ++j) {
    Pair2 lo, hi;
    integrand(c - hw * kXgk[j], false, &lo, nullptr);
    if (j < 7) {
      integrand(c + hw * kXgk[j], false, &hi, nullptr);
      acc.first += kWgk[j] * (lo.first + hi.first);
      acc.second += kWgk[j] * (lo.second + hi.second);
    } else {
      acc.first += kWgk[j] * lo.first;
      acc.second += kWgk[j] * lo.second;
    }
  }
  acc.first *= hw;
  acc.second *= hw;
  return acc;
}

ResponseAccumulator::Pair2 ResponseAccumulator::gk_fast(double a, double b) const {
  double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  Pair2 acc{cd(0.0, 0.0), cd(0.0, 0.0)};
  for (int j = 0; j < 8; ++j) {
    Pair2 lo, hi;
    integrand(c - hw * kXgk[j], true, nullptr, &lo);
    if (j < 7) {
      integrand(c + hw * kXgk[j], true, nullptr, &hi);
      acc.first += kWgk[j] * (lo.first + hi.first);
      acc.second += kWgk[j] * (lo.second + hi.second);
    } else {
      acc.first += kWgk[j] * lo.first;
      acc.second += kWgk[j] * lo.second;
    }
  }
  acc.first *= hw;
  acc.second *= hw;
  return acc;
}

ResponseIntegrals ResponseAccumulator::at(double t) const {
  double span = t_end_ - t0_;
  double slack = 1e-9 * span;
  if (t < t0_ - slack || t > t_end_ + slack) {
    throw NumericError("response query outside the accumulated window");
  }
  t = std::clamp(t, t0_, t_end_);
  ResponseIntegrals out{cd(0, 0), cd(0, 0), cd(0, 0), cd(0, 0)};
  if (slow_active_) {
    auto k = static_cast<std::size_t>((t - t0_) / h_slow_);
    k = std::min(k, cum_slow_.size() - 2);
    double edge = t0_ + static_cast<double>(k) * h_slow_;
    Pair2 part = t > edge ? gk_slow(edge, t) : Pair2{cd(0, 0), cd(0, 0)};
    out.sigma2 = cum_slow_[k].first + part.first;
    out.theta2 = cum_slow_[k].second + part.second;
  }
  if (fast_active_) {
    auto k = static_cast<std::size_t>((t - t0_) / h_fast_);
    k = std::min(k, cum_fast_.size() - 2);
    double edge = t0_ + static_cast<double>(k) * h_fast_;
    Pair2 part = t > edge ? gk_fast(edge, t) : Pair2{cd(0, 0), cd(0, 0)};
    out.sigma1 = cum_fast_[k].first + part.first;
    out.theta1 = cum_fast_[k].second + part.second;
  }
  return out;
}

ResponseIntegrals response_integrals(double t, double t0, const PumpParams& pump,
                                     const ProbeParams& probe,
                                     const MediumParams& medium, TermMode mode) {
  return ResponseAccumulator(pump, probe, medium, mode, t0, t).at(t);
}

std::vector<ResponseIntegrals> response_trace(const std::vector<double>& ts,
                                              double t0, const PumpParams& pump,
                                              const ProbeParams& probe,
                                              const MediumParams& medium,
                                              TermMode mode) {
  if (ts.empty()) return {};
  double t_end = *std::max_element(ts.begin(), ts.end());
  ResponseAccumulator acc(pump, probe, medium, mode, t0, t_end);
  std::vector<ResponseIntegrals> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(acc.at(t));
  return out;
}

PerturbationAmplitudes perturbation_amplitudes(double z,
                                               const ResponseIntegrals& integrals,
                                               const ProbeParams& probe,
                                               const MediumParams& medium) {
  probe.validate();
  medium.validate();
  double k = probe.omega / kLightSpeed;
  if (!probe.co_propagating) k = -k;
  const cd i(0.0, 1.0);
  cd phase = std::exp(i * k * z);
  double d12 = std::sqrt(medium.d12_sq);
  cd eps(probe.eps_probe, 0.0);
  cd pref = -i * d12 / kHbar;
  PerturbationAmplitudes out;
  out.C1 = pref * (phase * integrals.sigma1 * eps +
                   integrals.sigma2 * std::conj(eps) / phase);
  out.C2 = pref * (phase * integrals.theta2 * eps +
                   integrals.theta1 * std::conj(eps) / phase);
  return out;
}

}  // namespace qs
