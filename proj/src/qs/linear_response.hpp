#pragma once

#include <memory>
#include <vector>

#include "common.hpp"
#include "dressed_atom.hpp"

namespace qs {

struct ProbeParams {
  double omega = 0.0;      // probe carrier frequency, rad/s
  double eps_probe = 1.0;  // incident amplitude
  bool co_propagating = true;

  void validate() const;
};

struct MediumParams {
  double omega0 = 0.0;   // transition frequency, rad/s
  double d12_sq = 0.0;   // |d12|^2, CGS
  double rho = 0.0;      // number density, cm^-3
  double gamma = 0.0;    // homogeneous half-linewidth, rad/s
  double mass = 0.0;     // atomic mass, g
  double temperature = 0.0;  // K

  void validate() const;
};

// Accumulated probe-response time integrals from t0:
//   sigma1 = int psi2 e^{-i(w+w0)t'} dt'     theta1 = int f e^{+i(w+w0)t'} dt'
//   sigma2 = int psi2 e^{+i(w-w0)t'} dt'     theta2 = int f e^{-i(w-w0)t'} dt'
// with psi2 the bare excited amplitude and w0 -> w0 - i*gamma.
struct ResponseIntegrals {
  cd sigma1, sigma2, theta1, theta2;
};

struct PerturbationAmplitudes {
  cd C1, C2;
};

enum class TermMode { resonant, literal, full };

TermMode parse_term_mode(const std::string& s);
const char* term_mode_name(TermMode m);

// Cumulative quadrature over [t0, t_end] with oscillation-aware panel sizing
// (Gauss-Kronrod 15 per panel). Point queries reuse the cached panel prefix
// sums plus one partial panel; safe for concurrent reads once built.
class ResponseAccumulator {
 public:
  ResponseAccumulator(const PumpParams& pump, const ProbeParams& probe,
                      const MediumParams& medium, TermMode mode,
                      double t0, double t_end);

  ResponseIntegrals at(double t) const;

  const DressedSolver& solver() const { return solver_; }
  double t0() const { return t0_; }
  double t_end() const { return t_end_; }
  double omega() const { return omega_; }
  cd omega0_eff() const { return omega0_eff_; }
  TermMode mode() const { return mode_; }
  bool slow_active() const { return slow_active_; }
  bool fast_active() const { return fast_active_; }

 private:
  struct Pair2 {
    cd first, second;
  };
  void integrand(double t, bool fast, Pair2* slow_out, Pair2* fast_out) const;
  Pair2 gk_slow(double a, double b) const;
  Pair2 gk_fast(double a, double b) const;

  DressedSolver solver_;
  TermMode mode_;
  double t0_, t_end_, omega_;
  cd omega0_eff_;
  bool slow_active_, fast_active_;
  double h_slow_ = 0.0, h_fast_ = 0.0;
  std::vector<Pair2> cum_slow_;  // {sigma2, theta2} prefix sums at panel edges
  std::vector<Pair2> cum_fast_;  // {sigma1, theta1}
};

ResponseIntegrals response_integrals(double t, double t0, const PumpParams& pump,
                                     const ProbeParams& probe,
                                     const MediumParams& medium, TermMode mode);

std::vector<ResponseIntegrals> response_trace(const std::vector<double>& ts,
                                              double t0, const PumpParams& pump,
                                              const ProbeParams& probe,
                                              const MediumParams& medium,
                                              TermMode mode);

PerturbationAmplitudes perturbation_amplitudes(double z,
                                               const ResponseIntegrals& integrals,
                                               const ProbeParams& probe,
                                               const MediumParams& medium);

}  // namespace qs
