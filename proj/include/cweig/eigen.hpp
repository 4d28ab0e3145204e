#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cweig/types.hpp"

namespace cweig {

/// Eigenvalue of rank n with the bracket it was isolated in and the
/// cross-product magnitude left at lambda.
struct Eigenpair {
  int n = 0;
  double lambda = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  double residual = 0.0;
  /// max |cross_product| over the bracket endpoints.
  double scale = 0.0;
};

struct EigenfunctionSample {
  double r = 0.0;
  double value = 0.0;
  double derivative = 0.0;
};

inline constexpr double kDefaultTol = 1e-12;
inline constexpr int kMaxEigenCount = 50;

/// F_L'(eta, r) Q_L(eta, alpha r) - alpha Q_L'(eta, alpha r) F_L(eta, r).
double cross_product(double L, double eta, double alpha, double r);

struct SolveOptions {
  double tol = kDefaultTol;  // bisection width on lambda
  bool force = false;        // solve outside the interlacing hypotheses
};

/// Eigenvalues of ranks 1..count. Rank n is isolated by sign bisection of
/// cross_product on (x_{n-1} + delta, x_n - delta), x_0 := 1e-4 x_1 and
/// delta = max(1e-6, 1e-9 x_n). Throws HypothesisError outside the
/// interlacing hypotheses unless `force` is set, and BracketError when a
/// bracket shows no sign change.
std::vector<Eigenpair> eigenvalues(const Params& params, int count,
                                   const SolveOptions& options = {});

/// Theta_L(eta, r): Q_L(eta, alpha lambda) F_L(eta, lambda r) for r <= 1 and
/// F_L(eta, lambda) Q_L(eta, alpha lambda r) beyond, with d/dr.
EigenfunctionSample eigenfunction_at(const Params& params, double lambda, double r);

/// Eigenvalue of rank n alone (the zeros x_1..x_n are still computed).
Eigenpair eigenvalue(const Params& params, int n, const SolveOptions& options = {});

/// Theta_L with the two matching constants Q_L(eta, alpha lambda) and
/// F_L(eta, lambda) evaluated once.
class Eigenfunction {
 public:
  Eigenfunction(const Params& params, double lambda);

  double lambda() const { return lambda_; }
  /// r <= 1 branch, usable on either side of r = 1.
  EigenfunctionSample interior(double r) const;
  /// r > 1 branch, usable on either side of r = 1.
  EigenfunctionSample exterior(double r) const;
  EigenfunctionSample operator()(double r) const { return r > 1.0 ? exterior(r) : interior(r); }

 private:
  Params params_;
  double lambda_;
  double q_match_;  // Q_L(eta, alpha lambda)
  double f_match_;  // F_L(eta, lambda)
};

std::vector<EigenfunctionSample> eigenfunction(const Params& params, double lambda,
                                               const std::vector<double>& r_grid);

struct SweepRow {
  double L = 0.0;
  std::optional<double> lambda;
  /// Centered difference of lambda over the neighbouring grid points
  /// (one-sided at the ends).
  std::optional<double> dlambda_dL;
  std::string error;
};

struct SweepViolation {
  double L_lo = 0.0;
  double L_hi = 0.0;
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
};

struct SweepTable {
  double eta = 0.0;
  double alpha = 1.0;
  int rank = 1;
  std::vector<SweepRow> rows;
  std::vector<SweepViolation> violations;
};

/// lambda_{L,eta,alpha,rank} over an increasing L grid. Solver failures are
/// recorded per row and the sweep continues; adjacent non-increases are
/// collected as violations.
SweepTable sweep_monotonicity(const std::vector<double>& L_grid, double eta, double alpha,
                              int rank, const SolveOptions& options = {});

}  // namespace cweig
