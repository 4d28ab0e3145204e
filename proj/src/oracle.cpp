#include "cweig/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cweig/errors.hpp"
#include "cweig/numeric.hpp"

namespace cweig {

namespace {

using State = std::array<double, 2>;  // (y, y')

// y'' = potential(r) y on one side of the jump.
struct RadialEquation {
  double ll1;       // L(L+1)
  double coulomb;   // 2 eta lambda h
  double wave2;     // lambda^2 g

  State operator()(double r, const State& s) const {
    return {s[1], (ll1 / (r * r) + coulomb / r - wave2) * s[0]};
  }
};

RadialEquation side_equation(const Params& p, double lambda, bool exterior) {
  const MediumProfile media{p.alpha};
  const double probe = exterior ? 2.0 : 0.5;
  return {p.L * (p.L + 1.0), 2.0 * p.eta * lambda * media.h(probe),
          lambda * lambda * media.g(probe)};
}

State axpy(const State& s, double h, std::initializer_list<std::pair<double, const State*>> ks) {
  State out = s;
  for (const auto& [c, k] : ks) {
    out[0] += h * c * (*k)[0];
    out[1] += h * c * (*k)[1];
  }
  return out;
}

constexpr int kMaxSteps = 200000;

// Dormand-Prince 5(4) from r = a to r = b (either direction). The error
// norm weighs y' by 1/w so that oscillatory and decaying sides share one
// relative tolerance.
State integrate_adaptive(const RadialEquation& eq, double a, double b, State s, double rel_tol,
                         double h0, double w, std::vector<ProfilePoint>* profile) {
  const double dir = b > a ? 1.0 : -1.0;
  double r = a;
  double h = dir * std::min(std::abs(h0), std::abs(b - a));
  if (profile) profile->push_back({r, s[0], s[1]});

  for (int step = 0; step < kMaxSteps; ++step) {
    if (dir * (r + h - b) > 0.0) h = b - r;
    const State k1 = eq(r, s);
    const State k2 = eq(r + h / 5.0, axpy(s, h, {{1.0 / 5.0, &k1}}));
    const State k3 = eq(r + 3.0 * h / 10.0, axpy(s, h, {{3.0 / 40.0, &k1}, {9.0 / 40.0, &k2}}));
    const State k4 = eq(r + 4.0 * h / 5.0,
                        axpy(s, h, {{44.0 / 45.0, &k1}, {-56.0 / 15.0, &k2}, {32.0 / 9.0, &k3}}));
    const State k5 = eq(r + 8.0 * h / 9.0,
                        axpy(s, h, {{19372.0 / 6561.0, &k1}, {-25360.0 / 2187.0, &k2},
                                    {64448.0 / 6561.0, &k3}, {-212.0 / 729.0, &k4}}));
    const State k6 = eq(r + h, axpy(s, h, {{9017.0 / 3168.0, &k1}, {-355.0 / 33.0, &k2},
                                           {46732.0 / 5247.0, &k3}, {49.0 / 176.0, &k4},
                                           {-5103.0 / 18656.0, &k5}}));
    const State next = axpy(s, h, {{35.0 / 384.0, &k1}, {500.0 / 1113.0, &k3},
                                   {125.0 / 192.0, &k4}, {-2187.0 / 6784.0, &k5},
                                   {11.0 / 84.0, &k6}});
    const State k7 = eq(r + h, next);
    const State err = axpy(State{0.0, 0.0}, h,
                           {{71.0 / 57600.0, &k1}, {-71.0 / 16695.0, &k3}, {71.0 / 1920.0, &k4},
                            {-17253.0 / 339200.0, &k5}, {22.0 / 525.0, &k6}, {-1.0 / 40.0, &k7}});

    const double amp = std::max(std::hypot(s[0], s[1] / w), std::hypot(next[0], next[1] / w));
    const double ratio = std::hypot(err[0], err[1] / w) / (rel_tol * amp);
    if (!std::isfinite(ratio))
      throw ConvergenceError("shooting: non-finite step at r=" + std::to_string(r));

    if (ratio <= 1.0) {
      r += h;
      s = next;
      if (profile) profile->push_back({r, s[0], s[1]});
      if (r == b) return s;
    }
    const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    h *= factor;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(r)))
      throw ConvergenceError("shooting: step size underflow at r=" + std::to_string(r));
  }
  throw ConvergenceError("shooting: step budget exhausted");
}

State integrate_fixed(const RadialEquation& eq, double a, double b, State s, int steps,
                      std::vector<ProfilePoint>* profile) {
  const double h = (b - a) / steps;
  if (profile) profile->push_back({a, s[0], s[1]});
  for (int i = 0; i < steps; ++i) {
    const double r = a + i * h;
    const State k1 = eq(r, s);
    const State k2 = eq(r + h / 2.0, axpy(s, h, {{0.5, &k1}}));
    const State k3 = eq(r + h / 2.0, axpy(s, h, {{0.5, &k2}}));
    const State k4 = eq(r + h, axpy(s, h, {{1.0, &k3}}));
    s = axpy(s, h, {{1.0 / 6.0, &k1}, {2.0 / 6.0, &k2}, {2.0 / 6.0, &k3}, {1.0 / 6.0, &k4}});
    if (profile) profile->push_back({i + 1 == steps ? b : r + h, s[0], s[1]});
  }
  return s;
}

void check_params(const Params& p, double lambda) {
  if (!(p.alpha > 0.0)) throw DomainError("shooting: alpha must be > 0");
  if (!(lambda > 0.0)) throw DomainError("shooting: lambda must be > 0");
  if (!(p.L > -1.5) || p.L == -1.0) throw DomainError("shooting: L outside (-3/2, inf) \\ {-1}");
}

}  // namespace

ShootingResult shooting_determinant(const Params& params, double lambda,
                                    const ShootingOptions& options) {
  check_params(params, lambda);
  const double L = params.L, eta = params.eta;
  const double decay = params.alpha * lambda;

  // Frobenius coefficients of the regular solution, b_k = A_k lambda^k.
  const double c1 = eta * lambda / (L + 1.0);
  const double c2 = (2.0 * eta * lambda * c1 - lambda * lambda) / (2.0 * (2.0 * L + 3.0));
  const double r0 = options.r0;
  const double lead = std::pow(r0, L + 1.0);
  State inner{lead * (1.0 + c1 * r0 + c2 * r0 * r0),
              lead / r0 * ((L + 1.0) + (L + 2.0) * c1 * r0 + (L + 3.0) * c2 * r0 * r0)};

  const double R = 1.0 + options.exterior_span / decay;
  const double y_R = std::exp(-decay * R);
  State outer{y_R, -decay * y_R};

  ShootingResult out;
  out.lambda = lambda;
  auto* in_profile = options.keep_profiles ? &out.interior_profile : nullptr;
  auto* out_profile = options.keep_profiles ? &out.exterior_profile : nullptr;

  const RadialEquation eq_in = side_equation(params, lambda, false);
  const RadialEquation eq_out = side_equation(params, lambda, true);
  const double w = std::max(1.0, lambda);
  if (options.fixed_steps > 0) {
    inner = integrate_fixed(eq_in, r0, 1.0, inner, options.fixed_steps, in_profile);
    outer = integrate_fixed(eq_out, R, 1.0, outer, options.fixed_steps, out_profile);
  } else {
    inner = integrate_adaptive(eq_in, r0, 1.0, inner, options.rel_tol, 0.1 * r0, w, in_profile);
    outer = integrate_adaptive(eq_out, R, 1.0, outer, options.rel_tol, 0.01 * (R - 1.0),
                               std::max(w, decay), out_profile);
  }

  out.interior_end = {1.0, inner[0], inner[1]};
  out.exterior_end = {1.0, outer[0], outer[1]};
  out.mismatch = inner[1] * outer[0] - inner[0] * outer[1];
  out.scale = std::abs(inner[1] * outer[0]) + std::abs(inner[0] * outer[1]);
  return out;
}

std::vector<Eigenpair> eigenvalues_shooting(const Params& params, int count,
                                            const ShootingOptions& options,
                                            const ShootingScan& scan) {
  if (count < 1 || count > kMaxEigenCount)
    throw DomainError("eigenvalues_shooting: count must be in 1.." +
                      std::to_string(kMaxEigenCount));
  auto mismatch = [&](double lambda) {
    return shooting_determinant(params, lambda, options).mismatch;
  };

  std::vector<Eigenpair> out;
  double lo = scan.lambda_min;
  double f_lo = mismatch(lo);
  for (int i = 1; static_cast<int>(out.size()) < count; ++i) {
    const double hi = scan.lambda_min + i * scan.step;
    if (hi > scan.lambda_max)
      throw BracketError("eigenvalues_shooting: only " + std::to_string(out.size()) +
                             " roots below lambda_max",
                         scan.lambda_min, scan.lambda_max);
    const double f_hi = mismatch(hi);
    if ((f_lo < 0.0) != (f_hi < 0.0) || f_lo == 0.0) {
      const auto [a, b] = bisect(mismatch, lo, hi, scan.width, f_lo);
      Eigenpair pair;
      pair.n = static_cast<int>(out.size()) + 1;
      pair.lambda = 0.5 * (a + b);
      pair.bracket = {lo, hi};
      const ShootingResult at = shooting_determinant(params, pair.lambda, options);
      pair.residual = std::abs(at.mismatch);
      pair.scale = std::max(std::abs(f_lo), std::abs(f_hi));
      out.push_back(pair);
    }
    lo = hi;
    f_lo = f_hi;
  }
  return out;
}

HellmanFeynmanReport hellman_feynman_report(const Params& params, const Eigenpair& eigen,
                                            const ReportOptions& options) {
  if (!params.theorem_c_domain() && !options.solve.force)
    throw HypothesisError("Hellmann-Feynman report needs eta >= 0 and L >= 0");

  const double L = params.L, eta = params.eta, lambda = eigen.lambda;
  const MediumProfile media{params.alpha};
  const Eigenfunction theta(params, lambda);
  const double R = 1.0 + options.exterior_span / (params.alpha * lambda);

  // Components: |g| Theta^2, 2 eta h Theta^2 / r, Theta^2 / r^2, Theta'^2.
  auto integrand = [&](bool exterior) {
    return [&, exterior](double r) {
      const EigenfunctionSample s = exterior ? theta.exterior(r) : theta.interior(r);
      const double t2 = s.value * s.value;
      return std::array<double, 4>{std::abs(media.g(exterior ? 2.0 : 0.5)) * t2,
                                   2.0 * eta * media.h(exterior ? 2.0 : 0.5) * t2 / r,
                                   t2 / (r * r), s.derivative * s.derivative};
    };
  };
  QuadOptions quad;
  quad.rel_tol = options.rel_tol;
  // The rule is open, so r = 0 is never sampled.
  const QuadResult<4> in = integrate<4>(integrand(false), 0.0, 1.0, quad);
  const QuadResult<4> out = integrate<4>(integrand(true), 1.0, R, quad);

  HellmanFeynmanReport rep;
  rep.lambda = lambda;
  rep.int_g = in.value[0] - out.value[0];
  rep.int_h = in.value[1] + out.value[1];
  rep.int_inv_r2 = in.value[2] + out.value[2];
  rep.int_grad2 = in.value[3] + out.value[3];
  const double ll1 = L * (L + 1.0);
  rep.identity_lhs = lambda * lambda * rep.int_g - lambda * rep.int_h;
  rep.identity_rhs = ll1 * rep.int_inv_r2 + rep.int_grad2;
  rep.identity_residual = rep.identity_lhs - rep.identity_rhs;
  rep.scale = lambda * lambda * (in.value[0] + out.value[0]) + lambda * std::abs(rep.int_h) +
              std::abs(ll1) * rep.int_inv_r2 + rep.int_grad2;
  rep.inequality_slack = rep.identity_lhs;
  for (std::size_t i = 0; i < 4; ++i) rep.quadrature_error += in.abs_err[i] + out.abs_err[i];
  rep.dlambda_dL_formula =
      (2.0 * L + 1.0) * rep.int_inv_r2 / (2.0 * lambda * rep.int_g - rep.int_h);

  auto solve_at = [&](double l) {
    return eigenvalue({l, eta, params.alpha}, eigen.n, options.solve).lambda;
  };
  const double dL = options.dL;
  if (L - dL >= 0.0)
    rep.dlambda_dL_fd = (solve_at(L + dL) - solve_at(L - dL)) / (2.0 * dL);
  else
    rep.dlambda_dL_fd = (solve_at(L + dL) - lambda) / dL;
  return rep;
}

}  // namespace cweig
