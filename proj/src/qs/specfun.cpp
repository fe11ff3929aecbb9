#include "specfun.hpp"

#include <cmath>
#include <cstdio>

namespace qs {

void log_notice(const std::string& msg) {
  std::fprintf(stderr, "[qscomb] %s\n", msg.c_str());
}

}  // namespace qs

namespace qs::specfun {
namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

bool is_nonpositive_integer(cd z, double tol = 1e-12) {
  if (std::abs(z.imag()) > tol) return false;
  double r = std::round(z.real());
  return r <= 0.5 && std::abs(z.real() - r) <= tol;
}

cd ln_gamma_right(cd z) {
  // Requires Re z >= 0.5.
  cd sum = kLanczosC[0];
  for (int k = 1; k < 15; ++k) sum += kLanczosC[k] / (z - 1.0 + static_cast<double>(k));
  cd t = z + (kLanczosG - 0.5);
  return kHalfLog2Pi + (z - 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace

cd log_sin_pi(cd z) {
  cd w = kPi * z;
  if (std::abs(w.imag()) < 20.0) return std::log(std::sin(w));
  const cd i(0.0, 1.0);
  if (w.imag() > 0.0) {
    // sin w = (i/2) e^{-iw} (1 - e^{2iw}); |e^{2iw}| tiny.
    return std::log(cd(0.0, 0.5)) - i * w + std::log(1.0 - std::exp(2.0 * i * w));
  }
  return std::log(cd(0.0, -0.5)) + i * w + std::log(1.0 - std::exp(-2.0 * i * w));
}

cd ln_gamma(cd z) {
  if (is_nonpositive_integer(z)) {
    throw NumericError("ln_gamma: pole at non-positive integer");
  }
  if (z.real() >= 0.5) return ln_gamma_right(z);
  // Reflection: lnGamma(z) = ln(pi) - log sin(pi z) - lnGamma(1-z), up to 2*pi*i*k.
  return std::log(kPi) - log_sin_pi(z) - ln_gamma_right(1.0 - z);
}

Hyp2F1Branch hyp2f1_branch(double u) {
  double au = std::abs(u);
  if (au <= 0.5) return Hyp2F1Branch::series;
  if (au <= 2.0) return Hyp2F1Branch::pfaff;
  return Hyp2F1Branch::large_u;
}

const char* branch_name(Hyp2F1Branch b) {
  switch (b) {
    case Hyp2F1Branch::series: return "series";
    case Hyp2F1Branch::pfaff: return "pfaff";
    default: return "large-u";
  }
}

namespace {

constexpr int kSeriesCap = 10000;
constexpr double kSeriesTol = 1e-15;

cd gauss_series(cd a, cd b, cd c, cd u) {
  cd term(1.0, 0.0);
  cd sum(1.0, 0.0);
  for (int n = 0; n < kSeriesCap; ++n) {
    double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * u;
    sum += term;
    if (std::abs(term) <= kSeriesTol * std::abs(sum)) return sum;
  }
  throw NumericError("hyp2f1: series did not converge within the iteration cap");
}

cd gamma_ratio(cd n1, cd n2, cd d1, cd d2) {
  // A pole in a denominator Gamma drives the whole coefficient to zero.
  if (is_nonpositive_integer(d1) || is_nonpositive_integer(d2)) {
    return cd(0.0, 0.0);
  }
  return std::exp(ln_gamma(n1) + ln_gamma(n2) - ln_gamma(d1) - ln_gamma(d2));
}

bool near_integer(cd z, double tol = 1e-12) {
  return std::abs(z.imag()) <= tol &&
         std::abs(z.real() - std::round(z.real())) <= tol;
}

cd eval_large_u(cd a, cd b, cd c, double u) {
  // Connection formula at u -> -infinity. Denominator Gamma poles are handled
  // inside gamma_ratio (the affected term vanishes); an integer a - b makes
  // both terms individually singular and needs explicit regularization.
  if (near_integer(a - b)) {
    log_notice("hyp2f1: degenerate parameters perturbed by 1e-9*(1+i)");
    a += cd(1e-9, 1e-9);
  }
  double mu = -u;  // > 2
  cd inv_u = cd(1.0 / u, 0.0);
  cd t1 = gamma_ratio(c, b - a, b, c - a) * std::pow(cd(mu, 0.0), -a) *
          gauss_series(a, a - c + 1.0, a - b + 1.0, inv_u);
  cd t2 = gamma_ratio(c, a - b, a, c - b) * std::pow(cd(mu, 0.0), -b) *
          gauss_series(b, b - c + 1.0, b - a + 1.0, inv_u);
  return t1 + t2;
}

}  // namespace

cd hyp2f1(const Hyp2F1Params& p, double u) {
  if (u > 0.0) throw NumericError("hyp2f1: argument must satisfy u <= 0");
  if (is_nonpositive_integer(p.c)) {
    throw NumericError("hyp2f1: c is zero or a negative integer");
  }
  if (u == 0.0) return cd(1.0, 0.0);
  // A vanishing numerator parameter terminates the series regardless of |u|.
  if (p.a == cd(0.0, 0.0) || p.b == cd(0.0, 0.0)) return cd(1.0, 0.0);
  switch (hyp2f1_branch(u)) {
    case Hyp2F1Branch::series:
      return gauss_series(p.a, p.b, p.c, cd(u, 0.0));
    case Hyp2F1Branch::pfaff: {
      cd w = cd(u / (u - 1.0), 0.0);
      return std::pow(cd(1.0 - u, 0.0), -p.a) * gauss_series(p.a, p.c - p.b, p.c, w);
    }
    default:
      return eval_large_u(p.a, p.b, p.c, u);
  }
}

cd hyp2f1_derivative(const Hyp2F1Params& p, double u) {
  if (p.a == cd(0.0, 0.0) || p.b == cd(0.0, 0.0)) return cd(0.0, 0.0);
  Hyp2F1Params q{p.a + 1.0, p.b + 1.0, p.c + 1.0};
  return p.a * p.b / p.c * hyp2f1(q, u);
}

}  // namespace qs::specfun
