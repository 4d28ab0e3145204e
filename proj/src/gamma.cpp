#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "cweig/numeric.hpp"

namespace cweig {

namespace {

// B_{2k} / (2k (2k-1)) for k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};

constexpr double kShiftTarget = 15.0;

}  // namespace

double log_abs_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw DomainError("log_abs_gamma: pole at nonpositive integer");

  // Gamma(z) = Gamma(z + n) / prod_{k<n} (z + k)
  double shift_log = 0.0;
  while (z.real() < kShiftTarget) {
    shift_log += std::log(std::abs(z));
    z += 1.0;
  }

  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> series = 0.0;
  std::complex<double> power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  const std::complex<double> lg =
      (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
  return lg.real() - shift_log;
}

}  // namespace cweig
