#include <cmath>
#include <numbers>
#include <string>

#include "cweig/errors.hpp"
#include "cweig/specfun.hpp"

namespace cweig {

namespace {

// Orders nu-1 and nu of J and K.
struct Ladder {
  double j_prev, j, k_prev, k;
};

int half_integer_index(double nu) {
  const double n = nu - 0.5;
  if (!(nu > 0.0) || n != std::floor(n) || n > 1e4)
    throw DomainError("bessel_halfint: order must be 1/2, 3/2, ..., got " + std::to_string(nu));
  return static_cast<int>(n);
}

Ladder ladder(int n, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_halfint: x must be > 0, got " + std::to_string(x));

  const double scale = std::sqrt(2.0 / (std::numbers::pi * x));
  const double j_minus = scale * std::cos(x);  // J_{-1/2}
  const double j_half = scale * std::sin(x);   // J_{1/2}
  const double k_half = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);

  Ladder out{};

  // K: upward recurrence K_{v+1} = K_{v-1} + (2v/x) K_v is stable.
  double k_prev = k_half, k_cur = k_half;  // K_{-1/2} = K_{1/2}
  for (int m = 0; m < n; ++m) {
    const double v = m + 0.5;
    const double k_next = k_prev + (2.0 * v / x) * k_cur;
    k_prev = k_cur;
    k_cur = k_next;
  }
  out.k_prev = k_prev;
  out.k = k_cur;

  if (x >= n + 0.5) {
    double j_prev = j_minus, j_cur = j_half;
    for (int m = 0; m < n; ++m) {
      const double v = m + 0.5;
      const double j_next = (2.0 * v / x) * j_cur - j_prev;
      j_prev = j_cur;
      j_cur = j_next;
    }
    out.j_prev = j_prev;
    out.j = j_cur;
    return out;
  }

  // Order exceeds the argument: Miller's downward recurrence, normalised
  // against whichever of J_{1/2}, J_{-1/2} is larger.
  const int top = n + 20 + static_cast<int>(x);
  double up = 0.0, cur = 1e-300;
  double at_n = 0.0, at_n_minus = 0.0, at_half = 0.0, at_minus = 0.0;
  for (int m = top; m >= 0; --m) {
    // cur holds index m (order m+1/2), up holds index m+1
    if (m == n) at_n = cur;
    if (m == n - 1) at_n_minus = cur;
    if (m == 0) at_half = cur;
    const double v = m + 0.5;
    const double down = (2.0 * v / x) * cur - up;  // order m-1/2
    up = cur;
    cur = down;
    if (std::abs(cur) > 1e250) {
      up *= 1e-250;
      cur *= 1e-250;
      at_n *= 1e-250;
      at_n_minus *= 1e-250;
      at_half *= 1e-250;
    }
  }
  at_minus = cur;
  if (n == 0) at_n_minus = at_minus;
  const double norm =
      std::abs(j_half) >= std::abs(j_minus) ? j_half / at_half : j_minus / at_minus;
  out.j = at_n * norm;
  out.j_prev = at_n_minus * norm;
  return out;
}

}  // namespace

BesselPair bessel_halfint(double nu, double x) {
  const Ladder l = ladder(half_integer_index(nu), x);
  return {l.j, l.k};
}

BesselPair bessel_halfint_derivative(double nu, double x) {
  const Ladder l = ladder(half_integer_index(nu), x);
  return {l.j_prev - nu / x * l.j, -l.k_prev - nu / x * l.k};
}

}  // namespace cweig
