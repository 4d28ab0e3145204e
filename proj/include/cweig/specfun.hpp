#pragma once

#include <cmath>
#include <utility>

#include "cweig/types.hpp"

namespace cweig {

/// Guaranteed-accuracy region of the Coulomb series: |eta| <= 5,
/// 0 < rho <= 50 and -3/2 < L <= 10. Outside it values are still returned,
/// with whatever abs_err the cancellation estimate produces.
struct WorkingRange {
  static constexpr double max_abs_eta = 5.0;
  static constexpr double max_rho = 50.0;
  static constexpr double min_L = -1.5;
  static constexpr double max_L = 10.0;

  static bool contains(double L, double eta) {
    return L > min_L && L <= max_L && std::abs(eta) <= max_abs_eta;
  }
};

/// Coulomb normalisation C_L(eta) = 2^L e^{-pi eta/2} |Gamma(L+1+i eta)| / |Gamma(2L+2)|.
/// Defined for L > -3/2 with 2L+2 not a nonpositive integer; the modulus of
/// Gamma(2L+2) keeps C_L positive on (-3/2, -1).
double coulomb_norm(double L, double eta);

/// F_L(eta, rho) with its first and second rho-derivatives.
struct CoulombSeries {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double abs_err = 0.0;      // error estimate of `value`
  double amplitude = 0.0;    // hypot(value, d1), the local oscillation scale
  int terms = 0;
};

/// Power series C_L rho^{L+1} sum_k A_k rho^k, A_0 = 1, A_1 = eta/(L+1),
/// k(k+2L+1) A_k = 2 eta A_{k-1} - A_{k-2}, summed in binary128 with
/// compensation. Throws AccuracyError when the cancellation estimate exceeds
/// 1e-6 of the local amplitude.
CoulombSeries coulomb_series(double L, double eta, double rho);

/// Regular Coulomb wave function F_L(eta, rho) and dF/drho.
FnValue coulomb_F(double L, double eta, double rho);

/// Tricomi confluent hypergeometric function psi(a, c, x) = U(a, c, x) and
/// d/dx psi = -a psi(a+1, c+1, x). Requires a > 0 and x > 0.
FnValue tricomi_psi(double a, double c, double x);

/// psi(a, c, x) alone.
FnValue tricomi_psi_value(double a, double c, double x);

/// Q_L(eta, r) = r^{L+1} e^{-r} psi(L+eta+1, 2L+2, 2r) with dQ/dr.
FnValue tricomi_Q(double L, double eta, double r);

/// Q_L'/Q_L = (L+1)/r - 1 + 2 psi'(a,c,2r)/psi(a,c,2r), evaluated without
/// forming Q itself.
double tricomi_Q_logderiv(double L, double eta, double r);

/// J_nu(x) and K_nu(x) for half-integer nu = 1/2, 3/2, ...
struct BesselPair {
  double J = 0.0;
  double K = 0.0;
};
BesselPair bessel_halfint(double nu, double x);

/// d/dx of J_nu and K_nu at half-integer order, from the order recurrences.
BesselPair bessel_halfint_derivative(double nu, double x);

}  // namespace cweig
