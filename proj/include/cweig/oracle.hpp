#pragma once

// Independent check of the eigenvalue solver: direct integration of
//   y'' = [L(L+1)/r^2 + 2 eta lambda h(r)/r - lambda^2 g(r)] y
// from both ends with matching at the media jump r = 1. Nothing here calls
// the Coulomb or Tricomi evaluators; the Hellmann-Feynman report is the
// exception, since it integrates the closed-form eigenfunction.

#include <vector>

#include "cweig/eigen.hpp"
#include "cweig/types.hpp"

namespace cweig {

struct ProfilePoint {
  double r = 0.0;
  double y = 0.0;
  double dy = 0.0;
};

struct ShootingOptions {
  double r0 = 1e-4;
  /// Exterior launch radius R = 1 + exterior_span / (alpha lambda).
  double exterior_span = 30.0;
  double rel_tol = 1e-10;
  /// > 0 switches to classical RK4 with this many uniform steps per side.
  int fixed_steps = 0;
  bool keep_profiles = false;
};

struct ShootingResult {
  double lambda = 0.0;
  /// y_in'(1) y_out(1) - y_in(1) y_out'(1)
  double mismatch = 0.0;
  /// |y_in'(1) y_out(1)| + |y_in(1) y_out'(1)|
  double scale = 0.0;
  ProfilePoint interior_end;
  ProfilePoint exterior_end;
  std::vector<ProfilePoint> interior_profile;
  std::vector<ProfilePoint> exterior_profile;
};

/// Interior launch at r0 with y = r^{L+1}(1 + c1 r + c2 r^2) from the
/// Frobenius recurrence; exterior launch at R with y = e^{-alpha lambda R},
/// y' = -alpha lambda y.
ShootingResult shooting_determinant(const Params& params, double lambda,
                                    const ShootingOptions& options = {});

struct ShootingScan {
  double lambda_min = 1e-2;
  double step = 0.05 * 3.14159265358979323846;
  double width = 1e-10;
  double lambda_max = 1e3;
};

/// First `count` sign changes of the matching determinant in lambda, each
/// bisected to `scan.width`.
std::vector<Eigenpair> eigenvalues_shooting(const Params& params, int count,
                                            const ShootingOptions& options = {},
                                            const ShootingScan& scan = {});

struct HellmanFeynmanReport {
  double lambda = 0.0;
  /// int g Theta^2, int 2 eta h Theta^2 / r, int Theta^2 / r^2, int Theta'^2
  double int_g = 0.0;
  double int_h = 0.0;
  double int_inv_r2 = 0.0;
  double int_grad2 = 0.0;
  double identity_lhs = 0.0;       // lambda^2 int_g - lambda int_h
  double identity_rhs = 0.0;       // L(L+1) int_inv_r2 + int_grad2
  double identity_residual = 0.0;  // lhs - rhs
  double scale = 0.0;              // sum of magnitudes of all terms
  double inequality_slack = 0.0;   // lambda^2 int_g - lambda int_h
  double quadrature_error = 0.0;
  /// (2L+1) int_inv_r2 / (2 lambda int_g - int_h)
  double dlambda_dL_formula = 0.0;
  /// Finite difference from re-solving at L +- dL (forward at the L = 0 edge).
  double dlambda_dL_fd = 0.0;
};

struct ReportOptions {
  double dL = 1e-3;
  double rel_tol = 1e-10;
  double exterior_span = 30.0;
  SolveOptions solve;
};

HellmanFeynmanReport hellman_feynman_report(const Params& params, const Eigenpair& eigen,
                                            const ReportOptions& options = {});

}  // namespace cweig
