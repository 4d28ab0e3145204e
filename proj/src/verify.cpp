#include "cweig/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "cweig/eigen.hpp"
#include "cweig/errors.hpp"
#include "cweig/numeric.hpp"
#include "cweig/oracle.hpp"
#include "cweig/specfun.hpp"
#include "cweig/zeros.hpp"

namespace cweig {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

bool SuiteReport::passed() const { return failures() == 0; }

int SuiteReport::failures() const {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

namespace {

constexpr double kPi = std::numbers::pi;

// Tracks the worst value of a check statistic and where it occurred.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& at) {
    if (!(v <= value)) {  // NaN sticks
      value = v;
      where = at;
    }
  }
};

std::string at(std::initializer_list<std::pair<const char*, double>> fields) {
  std::string s;
  for (const auto& [k, v] : fields) {
    if (!s.empty()) s += ' ';
    s += k;
    s += '=';
    s += format_number(v);
  }
  return s;
}

CheckResult bounded(const std::string& name, const Worst& worst, double limit) {
  const bool ok = worst.value <= limit;
  return {name, ok,
          "max=" + format_number(worst.value) + " limit=" + format_number(limit) +
              (worst.where.empty() ? "" : " at " + worst.where)};
}

CheckResult counted(const std::string& name, int violations, int total, const std::string& first) {
  return {name, violations == 0,
          "violations=" + std::to_string(violations) + "/" + std::to_string(total) +
              (first.empty() ? "" : " first " + first)};
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return out;
}

// Q''/Q residual of v^2 Q'' - (v^2 + 2 eta v + L(L+1)) Q, relative.
double kummer_residual(double L, double eta, double v) {
  const double a = L + eta + 1.0, c = 2.0 * L + 2.0;
  const double psi0 = tricomi_psi_value(a, c, 2.0 * v).value;
  const double p1 = -a * tricomi_psi_value(a + 1.0, c + 1.0, 2.0 * v).value / psi0;
  const double p2 = a * (a + 1.0) * tricomi_psi_value(a + 2.0, c + 2.0, 2.0 * v).value / psi0;
  const double ell = (L + 1.0) / v - 1.0 + 2.0 * p1;
  const double ell_prime = -(L + 1.0) / (v * v) + 4.0 * (p2 - p1 * p1);
  const double q2 = ell_prime + ell * ell;
  return std::abs(v * v * q2 - (v * v + 2.0 * eta * v + L * (L + 1.0))) /
         std::max(1.0, std::abs(v * v * q2));
}

const std::vector<std::pair<double, double>>& ode_grid() {
  static const std::vector<std::pair<double, double>> grid = [] {
    std::vector<std::pair<double, double>> g;
    for (double L : {0.0, 0.5, 1.0, 2.0})
      for (double eta : {0.0, -0.5, 0.5, 1.0}) g.emplace_back(L, eta);
    return g;
  }();
  return grid;
}

SuiteReport specfun_suite() {
  SuiteReport rep{"specfun", {}};
  auto& c = rep.checks;

  c.push_back(guarded("coulomb_norm_anchors", [] {
    Worst w;
    w.update(std::abs(coulomb_norm(0, 0) - 1.0), "L=0 eta=0");
    w.update(std::abs(coulomb_norm(1, 0) - 1.0 / 3.0), "L=1 eta=0");
    w.update(std::abs(coulomb_norm(0, 1) - std::exp(-kPi / 2) * std::sqrt(kPi / std::sinh(kPi))),
             "L=0 eta=1");
    return bounded("coulomb_norm_anchors", w, 1e-13);
  }));

  c.push_back(guarded("coulomb_ode_residual", [] {
    Worst w;
    for (const auto& [L, eta] : ode_grid()) {
      const double x3 = coulomb_zeros(L, eta, 3)[2];
      for (int i = 1; i < 40; ++i) {
        const double u = x3 * i / 40.0;
        const CoulombSeries s = coulomb_series(L, eta, u);
        const double lhs = u * u * s.d2 + (u * u - 2.0 * eta * u - L * (L + 1.0)) * s.value;
        w.update(std::abs(lhs) / std::max(1.0, std::abs(u * u * s.d2)),
                 at({{"L", L}, {"eta", eta}, {"rho", u}}));
      }
    }
    return bounded("coulomb_ode_residual", w, 1e-8);
  }));

  c.push_back(guarded("kummer_ode_residual", [] {
    Worst w;
    for (const auto& [L, eta] : ode_grid()) {
      const double x3 = coulomb_zeros(L, eta, 3)[2];
      for (int i = 1; i < 40; i += 3) {
        const double v = x3 * i / 40.0;
        w.update(kummer_residual(L, eta, v), at({{"L", L}, {"eta", eta}, {"v", v}}));
      }
    }
    return bounded("kummer_ode_residual", w, 1e-8);
  }));

  c.push_back(guarded("psi_positive_decreasing", [] {
    int bad = 0, total = 0;
    std::string first;
    for (double a : {0.5, 1.5, 2.0, 3.5})
      for (double cc : {0.5, 2.0, 3.0, 5.0})
        for (double x : log_grid(0.01, 50.0, 20)) {
          const FnValue p = tricomi_psi(a, cc, x);
          ++total;
          if (!(p.value > 0.0 && p.derivative < 0.0)) {
            if (bad++ == 0) first = at({{"a", a}, {"c", cc}, {"x", x}});
          }
        }
    return counted("psi_positive_decreasing", bad, total, first);
  }));

  c.push_back(guarded("psi_logderiv_increasing", [] {
    int bad = 0, total = 0;
    std::string first;
    for (double a : {1.5, 2.0, 3.5})
      for (double cc : {2.0, 3.0, 5.0}) {
        double prev = -INFINITY;
        for (double x : log_grid(0.01, 50.0, 100)) {
          const FnValue p = tricomi_psi(a, cc, x);
          const double ld = p.derivative / p.value;
          ++total;
          if (!(ld > prev && ld < 0.0)) {
            if (bad++ == 0) first = at({{"a", a}, {"c", cc}, {"x", x}});
          }
          prev = ld;
        }
      }
    return counted("psi_logderiv_increasing", bad, total, first);
  }));

  c.push_back(guarded("bessel_reduction_F", [] {
    Worst w;
    for (double L : {0.0, 1.0, 2.0})
      for (int k = 1; k <= 80; ++k) {
        const double rho = 0.25 * k;
        const double f = coulomb_F(L, 0.0, rho).value;
        const double j = bessel_halfint(L + 0.5, rho).J;
        w.update(std::abs(f - std::sqrt(kPi * rho / 2.0) * j) / std::abs(f),
                 at({{"L", L}, {"rho", rho}}));
      }
    return bounded("bessel_reduction_F", w, 1e-10);
  }));

  c.push_back(guarded("bessel_reduction_Q", [] {
    Worst w;
    for (double L : {0.0, 1.0, 2.0})
      for (int k = 1; k <= 32; ++k) {
        const double r = 0.25 * k;
        const double nu = L + 0.5;
        const double ref = 0.5 / r + bessel_halfint_derivative(nu, r).K / bessel_halfint(nu, r).K;
        w.update(std::abs(tricomi_Q_logderiv(L, 0.0, r) - ref) / std::max(1.0, std::abs(ref)),
                 at({{"L", L}, {"r", r}}));
      }
    return bounded("bessel_reduction_Q", w, 1e-9);
  }));

  c.push_back(guarded("psi_asymptotic_large_x", [] {
    int bad = 0, total = 0;
    std::string first;
    const double x = 1e3;
    for (double a : {1.5, 2.0, 3.5})
      for (double cc : {2.0, 3.0, 5.0}) {
        ++total;
        if (!(std::abs(tricomi_psi_value(a, cc, x).value * std::pow(x, a) - 1.0) <=
              10.0 * a * cc / x))
          if (bad++ == 0) first = at({{"a", a}, {"c", cc}});
      }
    return counted("psi_asymptotic_large_x", bad, total, first);
  }));

  c.push_back(guarded("psi_asymptotic_small_x", [] {
    Worst w;
    const double x = 1e-6;
    for (double a : {1.5, 2.0, 3.5})
      for (double cc : {2.0, 3.0, 5.0}) {
        const double ratio = tricomi_psi_value(a, cc, x).value * std::pow(x, cc - 1.0) *
                             std::tgamma(a) / std::tgamma(cc - 1.0);
        w.update(std::abs(ratio - 1.0), at({{"a", a}, {"c", cc}}));
      }
    return bounded("psi_asymptotic_small_x", w, 1e-4);
  }));
  return rep;
}

SuiteReport zeros_suite() {
  SuiteReport rep{"zeros", {}};
  auto& c = rep.checks;

  c.push_back(guarded("simple_zero_certificates", [] {
    int bad = 0, total = 0;
    std::string first;
    for (double L : {0.0, 0.5, 1.0, 2.0})
      for (double eta : {-0.5, 0.0, 0.5, 1.0})
        for (ZeroSign sign : {ZeroSign::positive, ZeroSign::negative}) {
          const ZeroSeq seq = coulomb_zeros(L, eta, 8, sign);
          // Negative zeros are positive zeros of the reflected (-eta) function.
          const double e = sign == ZeroSign::positive ? eta : -eta;
          double prev = 0.0;
          for (double z0 : seq.zeros) {
            const double z = std::abs(z0);
            const double r = seq.radius(z);
            const FnValue f = coulomb_F(L, e, z);
            const bool ok = std::abs(f.value) < std::abs(f.derivative) * r &&
                            (coulomb_F(L, e, z - r).value < 0.0) !=
                                (coulomb_F(L, e, z + r).value < 0.0) &&
                            z > prev;
            prev = z;
            ++total;
            if (!ok && bad++ == 0) first = at({{"L", L}, {"eta", eta}, {"z", z0}});
          }
        }
    return counted("simple_zero_certificates", bad, total, first);
  }));

  c.push_back(guarded("reflection_eta0", [] {
    int bad = 0, total = 0;
    std::string first;
    for (double L : {0.0, 0.5, 1.0, 2.0}) {
      const ZeroSeq pos = coulomb_zeros(L, 0.0, 10, ZeroSign::positive);
      const ZeroSeq neg = coulomb_zeros(L, 0.0, 10, ZeroSign::negative);
      for (std::size_t i = 0; i < pos.size(); ++i) {
        ++total;
        if (neg[i] != -pos[i] && bad++ == 0) first = at({{"L", L}, {"n", double(i + 1)}});
      }
    }
    return counted("reflection_eta0", bad, total, first);
  }));

  c.push_back(guarded("zero_gaps", [] {
    int bad = 0, total = 0;
    std::string first;
    for (double L : {0.0, 1.0, 2.0})
      for (double eta : {-1.0, 0.0, 1.0}) {
        const ZeroSeq seq = coulomb_zeros(L, eta, 20);
        for (std::size_t n = 2; n < seq.size(); ++n) {
          const double gap = seq[n] - seq[n - 1];
          ++total;
          if (!(gap > 1.0 && gap < 2.0 * kPi) && bad++ == 0)
            first = at({{"L", L}, {"eta", eta}, {"n", double(n + 1)}});
        }
      }
    return counted("zero_gaps", bad, total, first);
  }));

  c.push_back(guarded("logderiv_decreasing", [] {
    int bad = 0, total = 0;
    std::string first;
    for (double L : {0.0, 0.5, 2.0})
      for (double eta : {-0.5, 0.0, 1.0}) {
        const ZeroSeq seq = coulomb_zeros(L, eta, 4);
        for (std::size_t k = 0; k < seq.size(); ++k) {
          const double lo = k == 0 ? 0.0 : seq[k - 1];
          const double hi = seq[k];
          double prev = INFINITY;
          for (int i = 1; i < 50; ++i) {
            const double r = lo + (hi - lo) * i / 50.0;
            const double v = logderiv_F(L, eta, r) - (L + 1.0) / r;
            ++total;
            if (!(v < prev) && bad++ == 0) first = at({{"L", L}, {"eta", eta}, {"r", r}});
            prev = v;
          }
        }
      }
    return counted("logderiv_decreasing", bad, total, first);
  }));

  c.push_back(guarded("logderiv_origin_limit", [] {
    Worst w;
    const double r = 1e-6;
    for (double L : {0.0, 0.5, 1.0, 2.0})
      for (double eta : {-0.5, 0.0, 0.5, 1.0})
        w.update(std::abs(logderiv_F(L, eta, r) - (L + 1.0) / r - eta / (L + 1.0)),
                 at({{"L", L}, {"eta", eta}}));
    return bounded("logderiv_origin_limit", w, 1e-4);
  }));

  c.push_back(guarded("mittag_leffler_cotangent", [] {
    Worst w;
    w.update(std::abs(logderiv_F(0.0, 0.0, 1.0, LogDerivMode::mittag_leffler, 10000) -
                      1.0 / std::tan(1.0)),
             "L=0 eta=0 r=1 N=10000");
    return bounded("mittag_leffler_cotangent", w, 5e-4);
  }));
  return rep;
}

SuiteReport eigen_suite() {
  SuiteReport rep{"eigen", {}};
  auto& c = rep.checks;

  c.push_back(guarded("closed_form_eta0_L0", [] {
    Worst w;
    for (const Eigenpair& e : eigenvalues({0.0, 0.0, 1.0}, 5))
      w.update(std::abs(e.lambda - (4 * e.n - 1) * kPi / 4.0), at({{"alpha", 1}, {"n", e.n}}));
    w.update(std::abs(eigenvalue({0.0, 0.0, 2.0}, 1).lambda - (kPi - std::atan(0.5))),
             "alpha=2 n=1");
    return bounded("closed_form_eta0_L0", w, 1e-10);
  }));

  c.push_back(guarded("interlacing_and_residual", [] {
    int bad = 0, total = 0;
    std::string first;
    for (double L : {0.0, 1.0})
      for (double eta : {0.0, 1.0})
        for (double alpha : {0.5, 2.0}) {
          const ZeroSeq x = coulomb_zeros(L, eta, 3);
          for (const Eigenpair& e : eigenvalues({L, eta, alpha}, 3)) {
            const double margin = 10.0 * kDefaultTol;
            const bool ok = e.lambda < x[e.n - 1] - margin &&
                            (e.n == 1 || e.lambda > x[e.n - 2] + margin) &&
                            e.residual <= 1e-9 * e.scale;
            ++total;
            if (!ok && bad++ == 0)
              first = at({{"L", L}, {"eta", eta}, {"alpha", alpha}, {"n", e.n}});
          }
        }
    return counted("interlacing_and_residual", bad, total, first);
  }));

  c.push_back(guarded("single_sign_change_per_bracket", [] {
    int bad = 0, total = 0;
    std::string first;
    const Params p{1.0, 0.5, 1.0};
    const ZeroSeq x = coulomb_zeros(p.L, p.eta, 2);
    for (int n = 1; n <= 2; ++n) {
      const double lo = n == 1 ? 1e-4 * x[0] : x[n - 2] + 1e-6;
      const double hi = x[n - 1] - 1e-6;
      int flips = 0;
      double prev = cross_product(p.L, p.eta, p.alpha, lo);
      for (int i = 1; i <= 1000; ++i) {
        const double v = cross_product(p.L, p.eta, p.alpha, lo + (hi - lo) * i / 1000.0);
        if ((v < 0.0) != (prev < 0.0)) ++flips;
        prev = v;
      }
      ++total;
      if (flips != 1 && bad++ == 0) first = at({{"n", n}, {"flips", flips}});
    }
    return counted("single_sign_change_per_bracket", bad, total, first);
  }));

  c.push_back(guarded("monotone_in_L", [] {
    int bad = 0, total = 0;
    std::string first;
    for (double eta : {0.0, 1.0})
      for (double alpha : {1.0, 2.0}) {
        const SweepTable t = sweep_monotonicity({0.0, 0.5, 1.0, 2.0}, eta, alpha, 1);
        total += static_cast<int>(t.rows.size()) - 1;
        for (const auto& row : t.rows)
          if (!row.error.empty() && bad++ == 0) first = row.error;
        bad += static_cast<int>(t.violations.size());
        if (!t.violations.empty() && first.empty())
          first = at({{"eta", eta}, {"alpha", alpha}, {"L", t.violations[0].L_lo}});
      }
    return counted("monotone_in_L", bad, total, first);
  }));

  c.push_back(guarded("bessel_cross_product_eta0", [] {
    Worst w;
    for (double L : {0.0, 1.0, 2.0})
      for (double alpha : {0.5, 1.0, 2.0}) {
        const double nu = L + 0.5;
        auto bessel_cross = [&](double r) {
          const BesselPair in0 = bessel_halfint(nu, r), in1 = bessel_halfint(nu + 1.0, r);
          const BesselPair out0 = bessel_halfint(nu, alpha * r),
                           out1 = bessel_halfint(nu + 1.0, alpha * r);
          return in1.J * out0.K - alpha * out1.K * in0.J;
        };
        for (const Eigenpair& e : eigenvalues({L, 0.0, alpha}, 3)) {
          const auto [lo, hi] = bisect(bessel_cross, e.bracket.first, e.bracket.second, 1e-13);
          w.update(std::abs(0.5 * (lo + hi) - e.lambda),
                   at({{"L", L}, {"alpha", alpha}, {"n", e.n}}));
        }
      }
    return bounded("bessel_cross_product_eta0", w, 1e-9);
  }));

  c.push_back(guarded("eigenfunction_matching", [] {
    Worst w;
    for (double L : {0.0, 1.0})
      for (double eta : {0.0, 1.0}) {
        const Params p{L, eta, 2.0};
        const Eigenpair e = eigenvalue(p, 2);
        const Eigenfunction theta(p, e.lambda);
        const auto in = theta.interior(1.0), out = theta.exterior(1.0);
        const double scale = std::max(std::abs(in.derivative), std::abs(out.derivative));
        w.update(std::abs(in.value - out.value) / std::max(std::abs(in.value), 1e-300),
                 at({{"L", L}, {"eta", eta}, {"side", 0}}));
        w.update(std::abs(in.derivative - out.derivative) / scale,
                 at({{"L", L}, {"eta", eta}, {"side", 1}}));
      }
    return bounded("eigenfunction_matching", w, 1e-8);
  }));
  return rep;
}

SuiteReport oracle_suite() {
  SuiteReport rep{"oracle", {}};
  auto& c = rep.checks;
  const std::vector<Params> cases = {{0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, {0.5, 0.5, 2.0},
                                     {1.0, 1.0, 2.0}, {2.0, 1.0, 0.5}};

  c.push_back(guarded("shooting_agrees_with_solver", [&] {
    Worst w;
    for (const Params& p : cases) {
      const auto a = eigenvalues(p, 3);
      const auto b = eigenvalues_shooting(p, 3);
      for (int i = 0; i < 3; ++i)
        w.update(std::abs(a[i].lambda - b[i].lambda),
                 at({{"L", p.L}, {"eta", p.eta}, {"alpha", p.alpha}, {"n", i + 1}}));
    }
    return bounded("shooting_agrees_with_solver", w, 1e-6);
  }));

  c.push_back(guarded("hellman_feynman_identity", [&] {
    Worst w;
    int bad = 0;
    std::string first;
    for (const Params& p : cases) {
      const Eigenpair e = eigenvalue(p, 2);
      const HellmanFeynmanReport r = hellman_feynman_report(p, e);
      w.update(std::abs(r.identity_residual) / r.scale,
               at({{"L", p.L}, {"eta", p.eta}, {"alpha", p.alpha}}));
      if (!(r.inequality_slack >= 0.0 && r.dlambda_dL_fd > 0.0) && bad++ == 0)
        first = at({{"L", p.L}, {"eta", p.eta}, {"alpha", p.alpha}});
    }
    CheckResult res = bounded("hellman_feynman_identity", w, 1e-5);
    if (bad > 0) {
      res.passed = false;
      res.detail += " sign violations=" + std::to_string(bad) + " first " + first;
    }
    return res;
  }));

  c.push_back(guarded("rk4_convergence_order", [] {
    const Params p{0.0, 0.0, 1.0};
    const double lambda = 3.0 * kPi / 4.0;
    ShootingOptions coarse, fine;
    coarse.fixed_steps = 20;
    fine.fixed_steps = 40;
    const auto a = shooting_determinant(p, lambda, coarse);
    const auto b = shooting_determinant(p, lambda, fine);
    const double ratio = std::abs(a.mismatch / a.scale) / std::abs(b.mismatch / b.scale);
    return CheckResult{"rk4_convergence_order", ratio >= 8.0,
                       "error_ratio=" + format_number(ratio) + " limit=8"};
  }));

  c.push_back(guarded("interior_sine_normalisation", [] {
    Worst w;
    for (double lambda : {1.0, 2.0, 3.0 * kPi / 4.0, 5.0}) {
      const auto s = shooting_determinant({0.0, 0.0, 1.0}, lambda);
      w.update(std::abs(lambda * s.interior_end.y - std::sin(lambda)),
               at({{"lambda", lambda}}));
    }
    return bounded("interior_sine_normalisation", w, 1e-8);
  }));

  c.push_back(guarded("exterior_radius_doubling", [&] {
    Worst w;
    ShootingOptions wide;
    wide.exterior_span = 60.0;
    for (const Params& p : cases) {
      const auto a = eigenvalues_shooting(p, 1);
      const auto b = eigenvalues_shooting(p, 1, wide);
      w.update(std::abs(a[0].lambda - b[0].lambda),
               at({{"L", p.L}, {"eta", p.eta}, {"alpha", p.alpha}}));
    }
    return bounded("exterior_radius_doubling", w, 1e-9);
  }));
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"specfun", "zeros", "eigen", "oracle"};
  return names;
}

SuiteReport run_suite(const std::string& name) {
  if (name == "specfun") return specfun_suite();
  if (name == "zeros") return zeros_suite();
  if (name == "eigen") return eigen_suite();
  if (name == "oracle") return oracle_suite();
  throw DomainError("unknown verification suite '" + name + "'");
}

}  // namespace cweig
