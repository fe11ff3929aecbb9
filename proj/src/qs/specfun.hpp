#pragma once

#include "common.hpp"

namespace qs::specfun {

// Principal-branch log Gamma for complex z (Lanczos; reflection for Re z < 0.5).
// Throws NumericError at non-positive-integer poles.
cd ln_gamma(cd z);

// Overflow-safe log(sin(pi z)); branch may differ from the principal one by 2*pi*i*k.
cd log_sin_pi(cd z);

struct Hyp2F1Params {
  cd a, b, c;
};

enum class Hyp2F1Branch { series, pfaff, large_u };

// Which transformation hyp2f1 selects for a given argument.
Hyp2F1Branch hyp2f1_branch(double u);
const char* branch_name(Hyp2F1Branch b);

// Gauss hypergeometric 2F1(a,b;c;u) for real u <= 0.
cd hyp2f1(const Hyp2F1Params& p, double u);

// d/du 2F1(a,b;c;u) = (ab/c) 2F1(a+1,b+1;c+1;u).
cd hyp2f1_derivative(const Hyp2F1Params& p, double u);

}  // namespace qs::specfun
