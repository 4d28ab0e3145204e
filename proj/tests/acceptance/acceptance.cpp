// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cweig/cli.hpp"
#include "cweig/eigen.hpp"
#include "cweig/errors.hpp"
#include "cweig/numeric.hpp"
#include "cweig/oracle.hpp"
#include "cweig/specfun.hpp"
#include "cweig/verify.hpp"
#include "cweig/zeros.hpp"

using namespace cweig;
using std::numbers::pi;

namespace {

constexpr double kTol = 1e-12;
constexpr int kRanks = 5;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Case {
  Params p;
  std::vector<Eigenpair> eig;
  ZeroSeq zeros;
};

// L x eta x alpha grid shared by criteria 2, 4, 7 and 9.
std::vector<Case>& grid() {
  static std::vector<Case> cases = [] {
    std::vector<Case> out;
    for (double L : {0.0, 0.5, 1.0, 2.0})
      for (double eta : {0.0, 0.5, 1.0})
        for (double alpha : {0.5, 1.0, 2.0}) {
          Case c;
          c.p = {L, eta, alpha};
          SolveOptions opt;
          opt.tol = kTol;
          c.eig = eigenvalues(c.p, kRanks, opt);
          c.zeros = coulomb_zeros(L, eta, kRanks);
          out.push_back(std::move(c));
        }
    return out;
  }();
  return cases;
}

std::string label(const Params& p) {
  return "L=" + format_number(p.L) + " eta=" + format_number(p.eta) +
         " alpha=" + format_number(p.alpha);
}

struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& at) {
    if (!(v <= value)) {
      value = v;
      where = at;
    }
  }
  std::string str() const {
    return "max=" + format_number(value) + (where.empty() ? "" : " at " + where);
  }
};

Outcome closed_form() {
  Worst w;
  for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
    for (const Eigenpair& e : eigenvalues({0, 0, alpha}, 5)) {
      const double cot = std::cos(e.lambda) / std::sin(e.lambda);
      w.update(std::abs(cot + alpha) / (1 + alpha), "cot alpha=" + format_number(alpha));
    }
  }
  const bool cot_ok = w.value <= 1e-10;
  Worst a1;
  const auto ev = eigenvalues({0, 0, 1}, 5);
  for (int n = 1; n <= 5; ++n)
    a1.update(std::abs(ev[n - 1].lambda - (4 * n - 1) * pi / 4), "n=" + std::to_string(n));
  const double a2 = std::abs(eigenvalues({0, 0, 2}, 1)[0].lambda - (pi - std::atan(0.5)));
  return {cot_ok && a1.value <= 1e-10 && a2 <= 1e-10,
          "cot residual " + w.str() + "; alpha=1 " + a1.str() + "; alpha=2 err=" +
              format_number(a2)};
}

Outcome interlacing() {
  const auto t0 = std::chrono::steady_clock::now();
  grid();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double min_margin = INFINITY;
  std::string where;
  int bad = 0;
  for (const Case& c : grid()) {
    for (int n = 1; n <= kRanks; ++n) {
      const double lam = c.eig[n - 1].lambda;
      double margin = c.zeros[n - 1] - lam;
      if (n >= 2) margin = std::min(margin, lam - c.zeros[n - 2]);
      if (margin < min_margin) {
        min_margin = margin;
        where = label(c.p) + " n=" + std::to_string(n);
      }
      if (!(margin >= 10 * kTol)) ++bad;
    }
  }
  return {bad == 0 && secs < 10.0,
          std::to_string(grid().size()) + " cases, min margin=" + format_number(min_margin) +
              " at " + where + ", violations=" + std::to_string(bad) +
              ", solve time=" + format_number(std::round(secs * 100) / 100) + "s"};
}

Outcome monotonicity() {
  std::vector<double> Ls;
  for (int i = 0; i <= 12; ++i) Ls.push_back(0.25 * i);
  double min_diff = INFINITY;
  std::string where;
  int bad = 0;
  for (double eta : {0.0, 1.0})
    for (double alpha : {1.0, 2.0})
      for (int n : {1, 2}) {
        const SweepTable t = sweep_monotonicity(Ls, eta, alpha, n);
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
          if (!t.rows[i].lambda) {
            ++bad;
            continue;
          }
          if (i == 0 || !t.rows[i - 1].lambda) continue;
          const double d = *t.rows[i].lambda - *t.rows[i - 1].lambda;
          if (d < min_diff) {
            min_diff = d;
            where = "eta=" + format_number(eta) + " alpha=" + format_number(alpha) +
                    " n=" + std::to_string(n) + " L=" + format_number(t.rows[i].L);
          }
          if (!(d > 0.0)) ++bad;
        }
      }
  return {bad == 0, "min adjacent difference=" + format_number(min_diff) + " at " + where +
                        ", violations=" + std::to_string(bad)};
}

Outcome oracle_equivalence() {
  Worst w;
  for (const Case& c : grid()) {
    const auto shot = eigenvalues_shooting(c.p, kRanks);
    for (int n = 1; n <= kRanks; ++n)
      w.update(std::abs(shot[n - 1].lambda - c.eig[n - 1].lambda),
               label(c.p) + " n=" + std::to_string(n));
  }
  return {w.value <= 1e-6, w.str()};
}

Outcome bessel_reduction() {
  Worst f;
  for (int L : {0, 1, 2})
    for (double rho = 0.5; rho <= 15.0; rho += 0.5) {
      const double F = coulomb_F(L, 0, rho).value;
      const double want = std::sqrt(pi * rho / 2) * std::cyl_bessel_j(L + 0.5, rho);
      f.update(std::abs(F - want) / std::abs(want),
               "L=" + std::to_string(L) + " rho=" + format_number(rho));
    }
  Worst e;
  for (double L : {0.0, 0.5, 1.0, 2.0})
    for (double alpha : {0.5, 1.0, 2.0}) {
      const double nu = L + 0.5;
      auto cross = [&](double r) {
        return std::cyl_bessel_j(nu + 1, r) * std::cyl_bessel_k(nu, alpha * r) -
               alpha * std::cyl_bessel_k(nu + 1, alpha * r) * std::cyl_bessel_j(nu, r);
      };
      // independent scan of the Bessel cross product
      std::vector<double> roots;
      double r = 0.01, fr = cross(r);
      while (static_cast<int>(roots.size()) < kRanks) {
        const double r2 = r + 0.01, f2 = cross(r2);
        if ((fr < 0) != (f2 < 0)) {
          const auto [lo, hi] = bisect(cross, r, r2, 1e-14, fr);
          roots.push_back(0.5 * (lo + hi));
        }
        r = r2;
        fr = f2;
      }
      const auto ev = eigenvalues({L, 0, alpha}, kRanks);
      for (int n = 0; n < kRanks; ++n)
        e.update(std::abs(ev[n].lambda - roots[n]),
                 "L=" + format_number(L) + " alpha=" + format_number(alpha) +
                     " n=" + std::to_string(n + 1));
    }
  return {f.value <= 1e-10 && e.value <= 1e-9,
          "F relative " + f.str() + "; eigenvalues " + e.str()};
}

Outcome ode_residuals() {
  Worst wc, wk;
  for (double L : {0.0, 0.5, 1.0, 2.0})
    for (double eta : {-0.5, 0.0, 0.5, 1.0}) {
      const double x3 = coulomb_zeros(L, eta, 3)[2];
      const double a = L + eta + 1, c = 2 * L + 2;
      for (int i = 1; i < 40; ++i) {
        const double u = x3 * i / 40.0;
        const std::string at =
            "L=" + format_number(L) + " eta=" + format_number(eta) + " x=" + format_number(u);
        const CoulombSeries s = coulomb_series(L, eta, u);
        const double lhs = u * u * s.d2 + (u * u - 2 * eta * u - L * (L + 1)) * s.value;
        wc.update(std::abs(lhs) / std::max(1.0, std::abs(u * u * s.d2)), at);

        // Q = v^{L+1} e^{-v} psi(a, c, 2v); derivatives of psi by index shifts.
        const double x = 2 * u;
        const double p0 = tricomi_psi_value(a, c, x).value;
        const double p1 = -a * tricomi_psi_value(a + 1, c + 1, x).value;
        const double p2 = a * (a + 1) * tricomi_psi_value(a + 2, c + 2, x).value;
        const double m = u * u * (p2 * 4 + p1 * 2 * 2 * ((L + 1) / u - 1) +
                                  p0 * (((L + 1) / u - 1) * ((L + 1) / u - 1) - (L + 1) / (u * u)));
        const double rhs = (u * u + 2 * eta * u + L * (L + 1)) * p0;
        // the common factor v^{L+1} e^{-v} is dropped
        const double scale = std::abs(m) + std::abs(rhs);
        wk.update(std::abs(m - rhs) / scale, at);
      }
    }
  return {wc.value <= 1e-8 && wk.value <= 1e-8,
          "Coulomb " + wc.str() + "; Kummer " + wk.str()};
}

Outcome mittag_leffler() {
  constexpr std::size_t kN = 10000;
  Worst err;
  double min_ratio = INFINITY, max_ratio = 0.0;
  std::string ratio_at;
  for (const Case& c : grid()) {
    const double L = c.p.L, eta = c.p.eta;
    if (c.p.alpha != 1.0) continue;  // alpha does not enter F
    const ZeroSeq pos = coulomb_zeros(L, eta, kN);
    const ZeroSeq neg = coulomb_zeros(L, eta, kN, ZeroSign::negative);
    const double r = 0.7 * pos[0];
    const double direct = logderiv_F(L, eta, r);
    double prev = 0.0;
    for (std::size_t n : {1250, 2500, 5000, 10000}) {
      const double e = std::abs(logderiv_F_mittag_leffler(pos, neg, r, n) - direct);
      if (prev > 0.0) {
        const double ratio = prev / e;
        if (ratio < min_ratio || ratio > max_ratio) ratio_at = label(c.p) + " N=" + std::to_string(n);
        min_ratio = std::min(min_ratio, ratio);
        max_ratio = std::max(max_ratio, ratio);
      }
      prev = e;
    }
    err.update(prev, "L=" + format_number(L) + " eta=" + format_number(eta));
  }
  const bool halves = min_ratio >= 1.8 && max_ratio <= 2.2;
  return {err.value <= 5e-4 && halves,
          "error at N=10^4 " + err.str() + "; doubling ratio in [" + format_number(min_ratio) +
              ", " + format_number(max_ratio) + "]"};
}

Outcome psi_logderiv() {
  int bad = 0, total = 0;
  std::string first;
  for (double a : {1.5, 2.0, 3.5})
    for (double c : {2.0, 3.0, 5.0}) {
      double prev = -INFINITY;
      for (int i = 0; i < 100; ++i) {
        const double x = 0.01 * std::pow(5000.0, i / 99.0);
        const FnValue p = tricomi_psi(a, c, x);
        const double ld = p.derivative / p.value;
        ++total;
        if (!(ld < 0.0 && ld > prev)) {
          ++bad;
          if (first.empty())
            first = " first a=" + format_number(a) + " c=" + format_number(c) +
                    " x=" + format_number(x);
        }
        prev = ld;
      }
    }
  return {bad == 0, "violations=" + std::to_string(bad) + "/" + std::to_string(total) + first};
}

Outcome hellman_feynman() {
  Worst resid;
  double min_slack = INFINITY, min_rel_slack = INFINITY, min_fd = INFINITY;
  int reports = 0;
  for (const Case& c : grid()) {
    if (c.p.eta < 0) continue;
    for (const Eigenpair& e : c.eig) {
      const HellmanFeynmanReport r = hellman_feynman_report(c.p, e);
      ++reports;
      resid.update(std::abs(r.identity_residual) / r.scale, label(c.p) + " n=" + std::to_string(e.n));
      min_slack = std::min(min_slack, r.inequality_slack);
      min_rel_slack = std::min(min_rel_slack, r.inequality_slack / r.scale);
      min_fd = std::min(min_fd, r.dlambda_dL_fd);
    }
  }
  return {resid.value <= 1e-5 && min_slack >= 0.0 && min_fd > 0.0,
          std::to_string(reports) + " reports, relative residual " + resid.str() +
              "; min slack/scale=" + format_number(min_rel_slack) + "; min dlambda/dL=" + format_number(min_fd)};
}

Outcome cli_determinism() {
  std::vector<std::vector<std::string>> invocations;
  for (const char* s : {"specfun", "zeros", "eigen", "oracle"})
    invocations.push_back({"cweig", "verify", "--suite", s});
  invocations.push_back({"cweig", "verify", "--suite", "all", "--format", "json"});
  for (const char* f : {"csv", "json"}) {
    invocations.push_back({"cweig", "eigen", "--L", "0", "--eta", "0", "--alpha", "1", "--count", "2", "--format", f});
    invocations.push_back({"cweig", "eigen", "--L", "1", "--eta", "1", "--alpha", "2", "--count", "5", "--format", f});
    invocations.push_back({"cweig", "eigen", "--L", "0.5", "--eta", "0.5", "--alpha", "0.5", "--count", "5",
                           "--oracle", "shooting", "--format", f});
    invocations.push_back({"cweig", "eigen", "--L", "0", "--eta", "-1", "--format", f});
  }
  int differ = 0;
  std::string first;
  for (const auto& argv : invocations) {
    std::ostringstream o1, e1, o2, e2;
    const int c1 = run(argv, o1, e1);
    const int c2 = run(argv, o2, e2);
    if (c1 != c2 || o1.str() != o2.str() || e1.str() != e2.str()) {
      ++differ;
      if (first.empty()) first = " first: " + argv[1] + " " + argv[2] + " " + argv[3];
    }
  }
  return {differ == 0, std::to_string(invocations.size()) + " invocations run twice, differing=" +
                           std::to_string(differ) + first};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form eigenvalues", closed_form},
      {"interlacing", interlacing},
      {"monotonicity in L", monotonicity},
      {"oracle equivalence", oracle_equivalence},
      {"Bessel reduction", bessel_reduction},
      {"ODE residuals", ode_residuals},
      {"Mittag-Leffler agreement", mittag_leffler},
      {"psi log-derivative", psi_logderiv},
      {"Hellmann-Feynman identity", hellman_feynman},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
