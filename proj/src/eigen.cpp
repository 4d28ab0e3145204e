#include "cweig/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cweig/errors.hpp"
#include "cweig/numeric.hpp"
#include "cweig/specfun.hpp"
#include "cweig/zeros.hpp"

namespace cweig {

namespace {

constexpr double kFirstBracketStart = 1e-4;

double pole_guard(double x) { return std::max(1e-6, 1e-9 * x); }

void check_alpha(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0, got " + std::to_string(alpha));
}

}  // namespace

double cross_product(double L, double eta, double alpha, double r) {
  check_alpha(alpha);
  const FnValue f = coulomb_F(L, eta, r);
  const FnValue q = tricomi_Q(L, eta, alpha * r);
  return f.derivative * q.value - alpha * q.derivative * f.value;
}

namespace {

void check_solvable(const Params& params, int count, const SolveOptions& options) {
  check_alpha(params.alpha);
  if (count < 1 || count > kMaxEigenCount)
    throw DomainError("eigenvalues: count must be in 1.." + std::to_string(kMaxEigenCount));
  if (!(options.tol > 0.0)) throw DomainError("eigenvalues: tol must be > 0");
  if (!params.theorem_b_domain() && !options.force)
    throw HypothesisError(params.theorem_b_failure() +
                          " (brackets are not certified; use --force to override)");
}

Eigenpair solve_bracket(const Params& params, const ZeroSeq& zeros, int n,
                        const SolveOptions& options) {
  auto cross = [&](double r) { return cross_product(params.L, params.eta, params.alpha, r); };
  const double x_hi = zeros[n - 1];
  const double lo = n == 1 ? kFirstBracketStart * x_hi : zeros[n - 2] + pole_guard(zeros[n - 2]);
  const double hi = x_hi - pole_guard(x_hi);

  const double f_lo = cross(lo);
  const double f_hi = cross(hi);
  if ((f_lo < 0.0) == (f_hi < 0.0) || f_lo == 0.0 || f_hi == 0.0) {
    const std::string what = n == 1 ? "no rank-1 root certified in ("
                                    : "no sign change for rank " + std::to_string(n) + " in (";
    throw BracketError(what + std::to_string(lo) + ", " + std::to_string(hi) + ")", lo, hi);
  }

  const auto [a, b] = bisect(cross, lo, hi, options.tol, f_lo);
  Eigenpair pair;
  pair.n = n;
  pair.lambda = 0.5 * (a + b);
  pair.bracket = {lo, hi};
  pair.residual = std::abs(cross(pair.lambda));
  pair.scale = std::max(std::abs(f_lo), std::abs(f_hi));
  return pair;
}

}  // namespace

std::vector<Eigenpair> eigenvalues(const Params& params, int count, const SolveOptions& options) {
  check_solvable(params, count, options);
  const ZeroSeq zeros = coulomb_zeros(params.L, params.eta, static_cast<std::size_t>(count));
  std::vector<Eigenpair> out;
  out.reserve(count);
  for (int n = 1; n <= count; ++n) out.push_back(solve_bracket(params, zeros, n, options));
  return out;
}

Eigenpair eigenvalue(const Params& params, int n, const SolveOptions& options) {
  check_solvable(params, n, options);
  const ZeroSeq zeros = coulomb_zeros(params.L, params.eta, static_cast<std::size_t>(n));
  return solve_bracket(params, zeros, n, options);
}

Eigenfunction::Eigenfunction(const Params& params, double lambda)
    : params_(params), lambda_(lambda) {
  check_alpha(params.alpha);
  if (!(lambda > 0.0)) throw DomainError("eigenfunction: lambda must be > 0");
  q_match_ = tricomi_Q(params.L, params.eta, params.alpha * lambda).value;
  f_match_ = coulomb_F(params.L, params.eta, lambda).value;
}

EigenfunctionSample Eigenfunction::interior(double r) const {
  if (!(r > 0.0)) throw DomainError("eigenfunction: r must be > 0");
  const FnValue f = coulomb_F(params_.L, params_.eta, lambda_ * r);
  return {r, q_match_ * f.value, q_match_ * lambda_ * f.derivative};
}

EigenfunctionSample Eigenfunction::exterior(double r) const {
  if (!(r > 0.0)) throw DomainError("eigenfunction: r must be > 0");
  const double scale = params_.alpha * lambda_;
  const FnValue q = tricomi_Q(params_.L, params_.eta, scale * r);
  return {r, f_match_ * q.value, f_match_ * scale * q.derivative};
}

EigenfunctionSample eigenfunction_at(const Params& params, double lambda, double r) {
  return Eigenfunction(params, lambda)(r);
}

std::vector<EigenfunctionSample> eigenfunction(const Params& params, double lambda,
                                               const std::vector<double>& r_grid) {
  const Eigenfunction theta(params, lambda);
  std::vector<EigenfunctionSample> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) out.push_back(theta(r));
  return out;
}

SweepTable sweep_monotonicity(const std::vector<double>& L_grid, double eta, double alpha,
                              int rank, const SolveOptions& options) {
  check_alpha(alpha);
  if (rank < 1 || rank > kMaxEigenCount)
    throw DomainError("sweep: rank must be in 1.." + std::to_string(kMaxEigenCount));
  for (std::size_t i = 0; i < L_grid.size(); ++i) {
    if (i > 0 && !(L_grid[i] > L_grid[i - 1]))
      throw DomainError("sweep: L grid must be strictly increasing");
    const Params p{L_grid[i], eta, alpha};
    if (!p.theorem_c_domain() && !options.force)
      throw HypothesisError("monotonicity in L needs eta >= 0 and L >= 0"
                            " (use --force to override)");
  }

  SweepTable table;
  table.eta = eta;
  table.alpha = alpha;
  table.rank = rank;
  table.rows.reserve(L_grid.size());
  for (double L : L_grid) {
    SweepRow row;
    row.L = L;
    try {
      row.lambda = eigenvalue({L, eta, alpha}, rank, options).lambda;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }

  auto& rows = table.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t lo = i > 0 && rows[i - 1].lambda ? i - 1 : i;
    const std::size_t hi = i + 1 < rows.size() && rows[i + 1].lambda ? i + 1 : i;
    if (lo != hi && rows[lo].lambda && rows[hi].lambda)
      rows[i].dlambda_dL = (*rows[hi].lambda - *rows[lo].lambda) / (rows[hi].L - rows[lo].L);
    if (i + 1 < rows.size() && rows[i].lambda && rows[i + 1].lambda &&
        !(*rows[i + 1].lambda > *rows[i].lambda))
      table.violations.push_back({rows[i].L, rows[i + 1].L, *rows[i].lambda, *rows[i + 1].lambda});
  }
  return table;
}

}  // namespace cweig
