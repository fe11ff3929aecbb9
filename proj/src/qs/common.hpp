#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qs {

using cd = std::complex<double>;

inline constexpr double kHbar = 1.0545718e-27;      // erg s
inline constexpr double kLightSpeed = 2.99792458e10; // cm/s
inline constexpr double kBoltzmann = 1.380649e-16;   // erg/K
inline constexpr double kAmuGrams = 1.66053906660e-24;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Error hierarchy mirrored by the C API status codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void log_notice(const std::string& msg);

}  // namespace qs
