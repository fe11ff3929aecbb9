#include "dressed_atom.hpp"

#include <cmath>

namespace qs {
namespace {

bool near_pole(cd z, double tol = 1e-12) {
  if (std::abs(z.imag()) > tol) return false;
  double r = std::round(z.real());
  return r <= 0.5 && std::abs(z.real() - r) <= tol;
}

bool near_integer(cd z, double tol = 1e-12) {
  return std::abs(z.imag()) <= tol &&
         std::abs(z.real() - std::round(z.real())) <= tol;
}

// Gamma(n1)Gamma(n2) / (Gamma(d1)Gamma(d2)) via ln_gamma differences.
// A pole in a denominator argument sends the ratio to zero.
cd h_ratio(cd n1, cd n2, cd d1, cd d2) {
  if (near_pole(d1) || near_pole(d2)) return cd(0.0, 0.0);
  return std::exp(specfun::ln_gamma(n1) + specfun::ln_gamma(n2) -
                  specfun::ln_gamma(d1) - specfun::ln_gamma(d2));
}

}  // namespace

void PumpParams::validate() const {
  if (!(T > 0.0)) throw ConfigError("pump.T must be positive");
  if (V0 < 0.0) throw ConfigError("pump.V0 must be non-negative");
  if (!(generalized_rabi() > 0.0)) {
    throw ConfigError("pump: delta and V0 must not both vanish");
  }
}

double PumpParams::generalized_rabi() const {
  return std::sqrt(delta * delta + 4.0 * V0 * V0);
}

double DressedAmplitudes::norm_defect() const {
  return std::abs(std::norm(f) + std::norm(g) - 1.0);
}

double pump_envelope(double t_ret, const PumpParams& pump) {
  double x = -t_ret / pump.T;
  if (x > 700.0) return 0.0;
  return pump.eps0 / (1.0 + std::exp(x));
}

double argument_u(double t_ret, const PumpParams& pump) {
  double x = t_ret / pump.T;
  if (x > 700.0) throw NumericError("argument_u: exponent overflow");
  return -std::exp(x);
}

HypParamSet hyp_params(const PumpParams& pump) {
  pump.validate();
  double om = pump.generalized_rabi();
  const cd i(0.0, 1.0);
  HypParamSet s;
  s.sigma = -i * pump.V0 * pump.T;
  s.p.a = i * pump.T / 2.0 * (-pump.delta - 2.0 * pump.V0 + om);
  s.p.b = i * pump.T / 2.0 * (-pump.delta - 2.0 * pump.V0 - om);
  s.p.c = -i * pump.delta * pump.T;
  return s;
}

DressedSolver::DressedSolver(const PumpParams& pump, double gamma) {
  pump.validate();
  T_ = pump.T;
  V0_ = pump.V0;
  delta_eff_ = cd(pump.delta, gamma);
  omega_c_ = std::sqrt(delta_eff_ * delta_eff_ + 4.0 * V0_ * V0_);
  const cd i(0.0, 1.0);
  sigma_ = -i * V0_ * T_;
  a_ = i * T_ / 2.0 * (-delta_eff_ - 2.0 * V0_ + omega_c_);
  b_ = i * T_ / 2.0 * (-delta_eff_ - 2.0 * V0_ - omega_c_);
  c_ = -i * delta_eff_ * T_;

  cd a = a_, b = b_, c = c_;
  if (near_integer(a - b)) {
    log_notice("connection coefficients: degenerate parameters perturbed");
    a += cd(1e-9, 1e-9);
  }
  h_.h1 = h_ratio(c, b - a, b, c - a);
  h_.h2 = h_ratio(c, a - b, a, c - b);
  h_.h3 = h_ratio(c + 1.0, b - a, b + 1.0, c - a);
  h_.h4 = h_ratio(c + 1.0, a - b, a + 1.0, c - b);
}

DressedAmplitudes DressedSolver::exact(double t_ret) const {
  double x = t_ret / T_;
  // The neglected large-u corrections scale as e^{-t/T}; beyond 40T they are
  // below double precision, so the asymptotic branches are the exact value.
  if (x > 40.0) return asymptotic(t_ret);
  double u = x < -700.0 ? -0.0 : -std::exp(x);
  cd F = specfun::hyp2f1({a_, b_, c_}, u);
  cd F1 = specfun::hyp2f1({a_ + 1.0, b_ + 1.0, c_ + 1.0}, u);
  double omu = 1.0 - u;  // > 1
  cd ps = std::exp(sigma_ * std::log(omu));
  DressedAmplitudes out;
  out.f = ps * F;
  out.g = ps * (F - omu * F1);
  return out;
}

DressedAmplitudes DressedSolver::asymptotic(double t_ret) const {
  double x = t_ret / T_;
  cd ea = std::exp(x * (sigma_ - a_));
  cd eb = std::exp(x * (sigma_ - b_));
  DressedAmplitudes out;
  out.f = h_.h1 * ea + h_.h2 * eb;
  out.g = (h_.h1 - h_.h3) * ea + (h_.h2 - h_.h4) * eb;
  return out;
}

cd DressedSolver::bare_excited(double t_ret, const DressedAmplitudes& amps) const {
  const cd i(0.0, 1.0);
  return std::exp(-i * delta_eff_ * t_ret) * amps.g;
}

DressedAmplitudes amplitudes_exact(double t_ret, const PumpParams& pump) {
  return DressedSolver(pump).exact(t_ret);
}

DressedAmplitudes amplitudes_asymptotic(double t_ret, const PumpParams& pump) {
  return DressedSolver(pump).asymptotic(t_ret);
}

ConnectionCoefficients connection_coefficients(const PumpParams& pump) {
  return DressedSolver(pump).connection();
}

}  // namespace qs
