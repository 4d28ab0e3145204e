#pragma once

// Small numerical building blocks shared by the special-function,
// zero-finding and oracle code: compensated summation, an adaptive
// Gauss-Kronrod integrator and sign bisection.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "cweig/errors.hpp"

namespace cweig {

/// log|Gamma(z)| for complex z away from the poles. Stirling series after
/// shifting the argument to Re z >= 15.
double log_abs_gamma(std::complex<double> z);

/// Neumaier-compensated running sum.
template <class Scalar = double>
class CompensatedSum {
 public:
  void add(Scalar x) {
    Scalar t = sum_ + x;
    Scalar abs_sum = sum_ < Scalar(0) ? -sum_ : sum_;
    Scalar abs_x = x < Scalar(0) ? -x : x;
    if (abs_sum >= abs_x)
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_{0};
  Scalar comp_{0};
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at the odd Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
  double a, b;
  std::array<double, N> value;
  std::array<double, N> err;
  double weight;  // error normalised for queue ordering
  bool operator<(const Panel& o) const { return weight < o.weight; }
};

template <std::size_t N, class F>
void gauss_kronrod_15(F& f, double a, double b, std::array<double, N>& value,
                      std::array<double, N>& err) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, N> kron{}, gauss{};
  const std::array<double, N> fc = f(centre);
  for (std::size_t i = 0; i < N; ++i) {
    kron[i] = kKronrodWeights[7] * fc[i];
    gauss[i] = kGaussWeights[3] * fc[i];
  }
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const std::array<double, N> f1 = f(centre - dx);
    const std::array<double, N> f2 = f(centre + dx);
    for (std::size_t i = 0; i < N; ++i) {
      kron[i] += kKronrodWeights[j] * (f1[i] + f2[i]);
      if (j % 2 == 1) gauss[i] += kGaussWeights[j / 2] * (f1[i] + f2[i]);
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    value[i] = kron[i] * half;
    err[i] = std::abs((kron[i] - gauss[i]) * half);
  }
}

}  // namespace detail

struct QuadOptions {
  double rel_tol = 1e-13;
  double abs_tol = 0.0;
  std::size_t max_panels = 4000;
};

template <std::size_t N>
struct QuadResult {
  std::array<double, N> value{};
  std::array<double, N> abs_err{};
  std::size_t panels = 0;
};

/// Adaptive bisection of Gauss-Kronrod (7, 15) panels for a vector-valued
/// integrand returning std::array<double, N>. The panel with the largest
/// normalised error is split until every component meets
/// max(abs_tol, rel_tol * |I_i|). The rule is open, so the integrand is never
/// evaluated at a or b.
template <std::size_t N, class F>
QuadResult<N> integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
  using detail::Panel;
  std::priority_queue<Panel<N>> queue;
  std::array<double, N> total{}, total_err{};

  auto make_panel = [&](double lo, double hi) {
    Panel<N> p{lo, hi, {}, {}, 0.0};
    detail::gauss_kronrod_15<N>(f, lo, hi, p.value, p.err);
    return p;
  };
  auto weigh = [&](Panel<N>& p) {
    p.weight = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double scale = std::max(opt.abs_tol, opt.rel_tol * std::abs(total[i]));
      p.weight = std::max(p.weight, scale > 0.0 ? p.err[i] / scale : p.err[i]);
    }
  };
  auto converged = [&] {
    for (std::size_t i = 0; i < N; ++i)
      if (!(total_err[i] <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total[i]))))
        return false;
    return true;
  };

  Panel<N> first = make_panel(a, b);
  total = first.value;
  total_err = first.err;
  weigh(first);
  queue.push(first);
  std::size_t panels = 1;

  while (!converged()) {
    if (panels >= opt.max_panels) {
      throw ConvergenceError("adaptive quadrature exceeded " +
                             std::to_string(opt.max_panels) + " panels on [" +
                             std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    Panel<N> worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // panel at resolution limit
    Panel<N> left = make_panel(worst.a, mid);
    Panel<N> right = make_panel(mid, worst.b);
    for (std::size_t i = 0; i < N; ++i) {
      total[i] += left.value[i] + right.value[i] - worst.value[i];
      total_err[i] += left.err[i] + right.err[i] - worst.err[i];
    }
    weigh(left);
    weigh(right);
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  // Re-sum from the panels to drop the drift of the running updates.
  QuadResult<N> out;
  out.panels = panels;
  while (!queue.empty()) {
    const auto& p = queue.top();
    for (std::size_t i = 0; i < N; ++i) {
      out.value[i] += p.value[i];
      out.abs_err[i] += p.err[i];
    }
    queue.pop();
  }
  return out;
}

/// Scalar convenience wrapper around integrate<1>.
template <class F>
QuadResult<1> integrate_scalar(F&& f, double a, double b, const QuadOptions& opt = {}) {
  return integrate<1>([&](double x) { return std::array<double, 1>{f(x)}; }, a, b, opt);
}

/// Bisection on a sign change of `f` inside [lo, hi] until the bracket is
/// narrower than `width`. Returns the final (lo, hi).
template <class F>
std::pair<double, double> bisect(F&& f, double lo, double hi, double width,
                                 double f_lo = NAN) {
  if (std::isnan(f_lo)) f_lo = f(lo);
  for (int it = 0; it < 400 && hi - lo > width; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return {mid, mid};
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace cweig
