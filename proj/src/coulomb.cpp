#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "cweig/errors.hpp"
#include "cweig/numeric.hpp"
#include "cweig/specfun.hpp"

namespace cweig {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kStopRatio = 0x1p-53;
constexpr double kAccuracyBudget = 1e-6;
constexpr double kDoubleEps = std::numeric_limits<double>::epsilon();

template <class Scalar>
constexpr double unit_roundoff();
template <>
constexpr double unit_roundoff<double>() { return 0x1p-53; }
template <>
constexpr double unit_roundoff<__float128>() { return 0x1p-113; }

template <class Scalar>
Scalar magnitude(Scalar x) { return x < Scalar(0) ? -x : x; }

struct SeriesSums {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  // Round-off estimate of s0 in units of the series (before the prefactor).
  double cancellation = 0.0;
  double tail = 0.0;
  int terms = 0;
};

// Sums T_k = A_k rho^k with weights 1, (k+L+1) and (k+L+1)(k+L) so that
// F = C rho^{L+1} s0, F' = C rho^L s1 and F'' = C rho^{L-1} s2.
template <class Scalar>
SeriesSums sum_series(double L, double eta, double rho) {
  const Scalar two_eta_rho = Scalar(2.0 * eta) * Scalar(rho);
  const Scalar rho2 = Scalar(rho) * Scalar(rho);
  const Scalar l1 = Scalar(L) + Scalar(1);
  const Scalar l2 = Scalar(2) * Scalar(L) + Scalar(1);

  CompensatedSum<Scalar> s0, s1, s2;
  double mass = 0.0;

  Scalar prev = 0;  // T_{k-2}
  Scalar cur = 1;   // T_{k-1}
  auto add = [&](int k, Scalar t) {
    const Scalar w1 = Scalar(k) + l1;
    const Scalar w2 = w1 * (w1 - Scalar(1));
    s0.add(t);
    s1.add(w1 * t);
    s2.add(w2 * t);
    mass += static_cast<double>(magnitude(t)) * (k + 1);
  };
  add(0, cur);

  int small_run = 0;
  int k = 1;
  double last = 0.0;
  for (; k <= kMaxTerms; ++k) {
    const Scalar next = (two_eta_rho * cur - rho2 * prev) / (Scalar(k) * (Scalar(k) + l2));
    add(k, next);
    prev = cur;
    cur = next;

    const double w = k + std::abs(L) + 1.0;
    const double term = static_cast<double>(magnitude(next)) * w * w;
    const double partial = std::abs(static_cast<double>(s0.value())) +
                           std::abs(static_cast<double>(s1.value())) +
                           std::abs(static_cast<double>(s2.value()));
    if (term < kStopRatio * partial) {
      if (++small_run == 3) {
        last = static_cast<double>(magnitude(next));
        break;
      }
    } else {
      small_run = 0;
    }
  }
  if (k > kMaxTerms)
    throw ConvergenceError("coulomb_series: no convergence in " + std::to_string(kMaxTerms) +
                           " terms at rho=" + std::to_string(rho));

  SeriesSums out;
  out.s0 = static_cast<double>(s0.value());
  out.s1 = static_cast<double>(s1.value());
  out.s2 = static_cast<double>(s2.value());
  out.cancellation = unit_roundoff<Scalar>() * mass;
  out.tail = 3.0 * last;
  out.terms = k + 1;
  return out;
}

void check_order(double L) {
  if (!(L > -1.5)) throw DomainError("Coulomb functions need L > -3/2, got L=" + std::to_string(L));
  if (L == -1.0) throw DomainError("Coulomb functions undefined at L = -1 (2L+2 = 0)");
}

}  // namespace

double coulomb_norm(double L, double eta) {
  check_order(L);
  const double log_c = L * std::numbers::ln2 - 0.5 * std::numbers::pi * eta +
                       log_abs_gamma({L + 1.0, eta}) - log_abs_gamma({2.0 * L + 2.0, 0.0});
  return std::exp(log_c);
}

CoulombSeries coulomb_series(double L, double eta, double rho) {
  check_order(L);
  if (!(rho > 0.0)) throw DomainError("coulomb_F: rho must be > 0, got " + std::to_string(rho));

  const SeriesSums sums = sum_series<__float128>(L, eta, rho);

  const double log_c = std::log(coulomb_norm(L, eta));
  const double log_rho = std::log(rho);
  const double log_pref = log_c + (L + 1.0) * log_rho;
  const double pref = std::exp(log_pref);

  CoulombSeries out;
  out.value = pref * sums.s0;
  out.d1 = std::exp(log_pref - log_rho) * sums.s1;
  out.d2 = std::exp(log_pref - 2.0 * log_rho) * sums.s2;
  out.terms = sums.terms;
  out.amplitude = std::hypot(out.value, out.d1);

  const double rounding = pref * sums.cancellation;
  const double prefactor_rel = 1e-14 + 4.0 * kDoubleEps * (1.0 + std::abs(log_pref));
  out.abs_err = rounding + pref * sums.tail + prefactor_rel * std::abs(out.value);

  if (rounding > kAccuracyBudget * out.amplitude) {
    throw AccuracyError("coulomb_F: cancellation estimate " + std::to_string(rounding) +
                        " exceeds 1e-6 of amplitude " + std::to_string(out.amplitude) +
                        " at L=" + std::to_string(L) + " eta=" + std::to_string(eta) +
                        " rho=" + std::to_string(rho));
  }
  return out;
}

FnValue coulomb_F(double L, double eta, double rho) {
  const CoulombSeries s = coulomb_series(L, eta, rho);
  return {s.value, s.d1, s.abs_err};
}

}  // namespace cweig
