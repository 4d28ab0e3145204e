#include <cmath>
#include <complex>
#include <string>

#include "cweig/errors.hpp"
#include "cweig/numeric.hpp"
#include "cweig/specfun.hpp"

namespace cweig {

namespace {

constexpr double kAsymptoticThreshold = 30.0;
constexpr int kAsymptoticTerms = 10;
constexpr double kQuadRelTol = 1e-13;

// x^a psi(a, c, x) ~ sum_k (a)_k (a-c+1)_k / k! (-x)^{-k}. Returns false when
// ten terms do not settle to double precision.
bool psi_asymptotic(double a, double c, double x, double& value, double& err) {
  double term = 1.0;
  CompensatedSum<> sum;
  sum.add(term);
  for (int k = 0; k < kAsymptoticTerms; ++k) {
    const double next = term * (a + k) * (a - c + 1.0 + k) / ((k + 1.0) * -x);
    if (next == 0.0) {  // a-c+1 is a nonpositive integer: the series terminates
      err = 0.0;
      value = sum.value() * std::pow(x, -a);
      return true;
    }
    if (std::abs(next) > std::abs(term)) return false;  // diverging before settling
    sum.add(next);
    term = next;
    if (std::abs(term) < 1e-17 * std::abs(sum.value())) {
      const double scale = std::pow(x, -a);
      value = sum.value() * scale;
      err = std::abs(term) * scale;
      return true;
    }
  }
  return false;
}

// Gamma(a) psi(a, c, x) = int_0^inf e^{-xt} t^{a-1} (1+t)^{c-a-1} dt, split at
// t = 1. On [0, 1] t = w^{1/a} absorbs the t^{a-1} endpoint factor; on
// [1, inf) t = 1/u maps to (0, 1] without the 1-s cancellation of t = s/(1-s).
FnValue psi_quadrature(double a, double c, double x) {
  const double b = c - a - 1.0;
  QuadOptions opt;
  opt.rel_tol = kQuadRelTol;

  auto inner = [&](double w) {
    const double t = std::exp(std::log(w) / a);
    return std::exp(-x * t + b * std::log1p(t)) / a;
  };
  auto outer = [&](double u) {
    return std::exp(-x / u - c * std::log(u) + b * std::log1p(u));
  };

  const QuadResult<1> lo = integrate_scalar(inner, 0.0, 1.0, opt);
  const QuadResult<1> hi = integrate_scalar(outer, 0.0, 1.0, opt);
  const double inv_gamma = std::exp(-log_abs_gamma({a, 0.0}));

  FnValue out;
  out.value = (lo.value[0] + hi.value[0]) * inv_gamma;
  out.abs_err = (lo.abs_err[0] + hi.abs_err[0]) * inv_gamma + 1e-14 * std::abs(out.value);
  return out;
}

}  // namespace

FnValue tricomi_psi_value(double a, double c, double x) {
  if (!(a > 0.0)) throw DomainError("tricomi_psi: a must be > 0, got " + std::to_string(a));
  if (!(x > 0.0)) throw DomainError("tricomi_psi: x must be > 0, got " + std::to_string(x));

  if (x > kAsymptoticThreshold) {
    double value = 0.0, err = 0.0;
    if (psi_asymptotic(a, c, x, value, err)) return {value, 0.0, err};
  }
  return psi_quadrature(a, c, x);
}

FnValue tricomi_psi(double a, double c, double x) {
  FnValue out = tricomi_psi_value(a, c, x);
  out.derivative = -a * tricomi_psi_value(a + 1.0, c + 1.0, x).value;
  return out;
}

double tricomi_Q_logderiv(double L, double eta, double r) {
  if (!(r > 0.0)) throw DomainError("tricomi_Q: r must be > 0, got " + std::to_string(r));
  const double a = L + eta + 1.0;
  if (!(a > 0.0))
    throw DomainError("tricomi_Q: needs L+eta+1 > 0, got " + std::to_string(a));
  const FnValue psi = tricomi_psi(a, 2.0 * L + 2.0, 2.0 * r);
  return (L + 1.0) / r - 1.0 + 2.0 * psi.derivative / psi.value;
}

FnValue tricomi_Q(double L, double eta, double r) {
  if (!(r > 0.0)) throw DomainError("tricomi_Q: r must be > 0, got " + std::to_string(r));
  const double a = L + eta + 1.0;
  if (!(a > 0.0))
    throw DomainError("tricomi_Q: needs L+eta+1 > 0, got " + std::to_string(a));
  const FnValue psi = tricomi_psi(a, 2.0 * L + 2.0, 2.0 * r);
  const double pref = std::exp((L + 1.0) * std::log(r) - r);
  const double logderiv = (L + 1.0) / r - 1.0 + 2.0 * psi.derivative / psi.value;

  FnValue out;
  out.value = pref * psi.value;
  out.derivative = out.value * logderiv;
  out.abs_err = pref * psi.abs_err;
  return out;
}

}  // namespace cweig
