#include "cweig/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cweig/errors.hpp"
#include "cweig/numeric.hpp"
#include "cweig/specfun.hpp"

namespace cweig {

namespace {

constexpr double kScanStep = 0.05 * std::numbers::pi;
constexpr double kSeriesLimit = 40.0;
constexpr double kBisectWidth = 1e-13;
// RK4 steps per half-turn of the phase scale with the fourth root of the
// perturbation 2 eta/rho + L(L+1)/rho^2 of the free flow d rho/d theta = 1.
constexpr double kPhaseStepScale = 160.0;
constexpr int kMinPhaseSteps = 8;
constexpr int kMaxPhaseSteps = 256;

double F_value(double L, double eta, double rho) { return coulomb_F(L, eta, rho).value; }

// Refines a sign change of F on [lo, hi] and checks the simple-zero
// certificate |F(z)| < |F'(z)| r with a sign flip across [z - r, z + r].
double refine_zero(double L, double eta, double lo, double hi, double tol) {
  double f_lo = F_value(L, eta, lo);
  double f_hi = F_value(L, eta, hi);
  while (hi - lo > kBisectWidth * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = F_value(L, eta, mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      f_lo = f_hi = 0.0;
      break;
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  double z = 0.5 * (lo + hi);
  if (f_hi != f_lo) {
    const double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    if (secant >= lo && secant <= hi) z = secant;
  }

  const double radius = tol * std::max(1.0, z);
  const FnValue at = coulomb_F(L, eta, z);
  const double left = F_value(L, eta, z - radius);
  const double right = F_value(L, eta, z + radius);
  if (!(std::abs(at.value) < std::abs(at.derivative) * radius) || !((left < 0.0) != (right < 0.0)))
    throw AccuracyError("coulomb_zeros: cannot certify simple zero near " + std::to_string(z) +
                        " for L=" + std::to_string(L) + " eta=" + std::to_string(eta));
  return z;
}

// d rho / d theta for the Pruefer phase F = R sin(theta), F' = R cos(theta).
struct PhaseFlow {
  double two_eta, ll1;
  double operator()(double theta, double rho) const {
    const double s = std::sin(theta);
    return 1.0 / (1.0 - (two_eta / rho + ll1 / (rho * rho)) * s * s);
  }
};

double rk4_phase(const PhaseFlow& flow, double theta, double rho, double target, int steps) {
  const double h = (target - theta) / steps;
  for (int i = 0; i < steps; ++i) {
    const double k1 = flow(theta, rho);
    const double k2 = flow(theta + 0.5 * h, rho + 0.5 * h * k1);
    const double k3 = flow(theta + 0.5 * h, rho + 0.5 * h * k2);
    const double k4 = flow(theta + h, rho + h * k3);
    rho += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    theta += h;
  }
  return rho;
}

std::vector<double> positive_zeros(double L, double eta, std::size_t count, double tol) {
  std::vector<double> zeros;
  zeros.reserve(count);
  if (count == 0) return zeros;

  // Phase continuation needs a positive effective wave number, i.e. the
  // series scan must run past the classical turning point.
  const double turning = eta + std::sqrt(eta * eta + std::max(0.0, L * (L + 1.0)));
  const double series_limit = std::max(kSeriesLimit, 2.0 * turning);

  double prev_rho = tol;
  double prev_f = F_value(L, eta, prev_rho);
  for (int i = 1; zeros.size() < count; ++i) {
    const double rho = i * kScanStep;
    if (rho > series_limit) break;
    const double f = F_value(L, eta, rho);
    if (f == 0.0 || (f < 0.0) != (prev_f < 0.0)) {
      zeros.push_back(refine_zero(L, eta, prev_rho, f == 0.0 ? rho + 0.5 * kScanStep : rho, tol));
      if (f == 0.0) {  // step over the exact zero
        ++i;
        prev_rho = i * kScanStep;
        prev_f = F_value(L, eta, prev_rho);
        continue;
      }
    }
    prev_rho = rho;
    prev_f = f;
  }
  if (zeros.size() >= count) return zeros;

  // Continue from the last scanned point: theta = k pi + phi with k zeros
  // below rho and phi in (0, pi).
  const FnValue at = coulomb_F(L, eta, prev_rho);
  const double parity = zeros.size() % 2 == 0 ? 1.0 : -1.0;
  const double phi = std::atan2(parity * at.value, parity * at.derivative);
  double theta = static_cast<double>(zeros.size()) * std::numbers::pi + phi;
  double rho_coarse = prev_rho, rho_fine = prev_rho;
  const PhaseFlow flow{2.0 * eta, L * (L + 1.0)};

  while (zeros.size() < count) {
    const double target = static_cast<double>(zeros.size() + 1) * std::numbers::pi;
    const double perturbation =
        std::abs(2.0 * eta / rho_fine) + std::abs(L * (L + 1.0)) / (rho_fine * rho_fine);
    const int per_turn = std::clamp(
        static_cast<int>(std::ceil(kPhaseStepScale * std::pow(perturbation, 0.25))),
        kMinPhaseSteps, kMaxPhaseSteps);
    const int steps =
        std::max(2, static_cast<int>(std::ceil((target - theta) / std::numbers::pi * per_turn)));
    rho_coarse = rk4_phase(flow, theta, rho_coarse, target, steps);
    rho_fine = rk4_phase(flow, theta, rho_fine, target, 2 * steps);
    theta = target;
    const double err = std::abs(rho_fine - rho_coarse) / 15.0;
    if (!(err <= tol * std::max(1.0, rho_fine)))
      throw AccuracyError("coulomb_zeros: phase continuation error " + std::to_string(err) +
                          " exceeds certificate radius at zero " +
                          std::to_string(zeros.size() + 1));
    zeros.push_back(rho_fine);
  }
  return zeros;
}

}  // namespace

double ZeroSeq::radius(double z) const { return tol * std::max(1.0, std::abs(z)); }

ZeroSeq coulomb_zeros(double L, double eta, std::size_t count, ZeroSign sign, double tol) {
  if (!WorkingRange::contains(L, eta) || L == -1.0)
    throw DomainError("coulomb_zeros: (L, eta) = (" + std::to_string(L) + ", " +
                      std::to_string(eta) + ") outside working range");
  if (count > kMaxZeroCount)
    throw DomainError("coulomb_zeros: count limited to " + std::to_string(kMaxZeroCount));
  if (!(tol > 0.0)) throw DomainError("coulomb_zeros: tol must be > 0");

  ZeroSeq seq;
  seq.L = L;
  seq.eta = eta;
  seq.sign = sign;
  seq.tol = tol;
  if (sign == ZeroSign::positive) {
    seq.zeros = positive_zeros(L, eta, count, tol);
  } else {
    seq.zeros = positive_zeros(L, -eta, count, tol);
    for (double& z : seq.zeros) z = -z;
  }
  return seq;
}

double logderiv_F_mittag_leffler(const ZeroSeq& positive, const ZeroSeq& negative, double r,
                                 std::size_t terms) {
  if (!(r > 0.0)) throw DomainError("logderiv_F: r must be > 0");
  if (positive.size() < terms || negative.size() < terms)
    throw DomainError("logderiv_F: zero sequences shorter than the requested term count");
  const double L = positive.L;
  const double eta = positive.eta;

  CompensatedSum<> tail;
  for (std::size_t n = 0; n < terms; ++n) {
    const double x = positive[n];
    const double y = negative[n];
    if (std::abs(r - x) <= positive.radius(x))
      throw PoleError("logderiv_F: r=" + std::to_string(r) + " sits on zero " + std::to_string(x));
    tail.add(r / (x * (x - r)));
    tail.add(r / (y * (y - r)));
  }
  return (L + 1.0) / r + eta / (L + 1.0) - tail.value();
}

double logderiv_F(double L, double eta, double r, LogDerivMode mode, std::size_t terms) {
  if (mode == LogDerivMode::mittag_leffler) {
    if (terms > 10000) throw DomainError("logderiv_F: at most 10^4 expansion terms");
    const ZeroSeq pos = coulomb_zeros(L, eta, terms, ZeroSign::positive);
    const ZeroSeq neg = coulomb_zeros(L, eta, terms, ZeroSign::negative);
    return logderiv_F_mittag_leffler(pos, neg, r, terms);
  }
  const FnValue f = coulomb_F(L, eta, r);
  if (std::abs(f.value) <= std::abs(f.derivative) * kDefaultZeroTol * std::max(1.0, r))
    throw PoleError("logderiv_F: r=" + std::to_string(r) + " is a zero of F_L");
  return f.derivative / f.value;
}

}  // namespace cweig
