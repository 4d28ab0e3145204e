#pragma once

#include <cmath>
#include <string>

namespace cweig {

/// A function value together with its derivative with respect to the
/// documented argument and an absolute error estimate for `value`.
struct FnValue {
  double value = 0.0;
  double derivative = 0.0;
  double abs_err = 0.0;
};

/// The parameter triple (L, eta, alpha) of the radial problem.
struct Params {
  double L = 0.0;
  double eta = 0.0;
  double alpha = 1.0;

  /// For eta != 0: L + eta > 0, L > -3/2 and L != -1. For eta == 0 only
  /// L > -3/2. Under these the eigenvalues interlace with the positive zeros
  /// of F_L(eta, .).
  bool theorem_b_domain() const {
    if (!(alpha > 0.0) || !(L > -1.5)) return false;
    return eta == 0.0 || (L + eta > 0.0 && L != -1.0);
  }

  /// eta >= 0 and L >= 0: eigenvalues increase with L.
  bool theorem_c_domain() const { return eta >= 0.0 && L >= 0.0; }

  /// First violated hypothesis of the interlacing theorem, or empty.
  std::string theorem_b_failure() const {
    if (!(alpha > 0.0)) return "alpha must be > 0";
    if (!(L > -1.5)) return "L must be > -3/2 for certified brackets";
    if (eta != 0.0 && !(L + eta > 0.0)) return "L+eta must be > 0 for certified brackets";
    if (eta != 0.0 && L == -1.0) return "L must differ from -1 when eta != 0";
    return {};
  }
};

/// Step media of the radial problem; the jump sits at r = 1.
struct MediumProfile {
  double alpha = 1.0;

  double g(double r) const { return r <= 1.0 ? 1.0 : -alpha * alpha; }
  double h(double r) const { return r <= 1.0 ? 1.0 : alpha; }
};

}  // namespace cweig
