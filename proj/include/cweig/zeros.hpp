#pragma once

#include <cstddef>
#include <vector>

namespace cweig {

enum class ZeroSign { positive, negative };

/// Leading zeros of rho -> F_L(eta, rho) of one sign. Positive zeros are
/// increasing; negative zeros y_1 > y_2 > ... are zeros of the entire factor
/// sum_k A_k rho^k and come from the reflection y_n(eta) = -x_n(-eta).
struct ZeroSeq {
  double L = 0.0;
  double eta = 0.0;
  ZeroSign sign = ZeroSign::positive;
  std::vector<double> zeros;
  /// Each zero z is certified within tol * max(1, |z|).
  double tol = 0.0;

  double radius(double z) const;
  std::size_t size() const { return zeros.size(); }
  double operator[](std::size_t i) const { return zeros[i]; }
};

inline constexpr double kDefaultZeroTol = 1e-12;
inline constexpr std::size_t kMaxZeroCount = 20000;

/// First `count` zeros of the requested sign. Zeros below rho = 40 come from
/// a sign scan of the series (step 0.05 pi), bisection to 1e-13 and one
/// secant step; later zeros by continuing the Pruefer phase of the Coulomb
/// equation from the last scanned point.
ZeroSeq coulomb_zeros(double L, double eta, std::size_t count,
                      ZeroSign sign = ZeroSign::positive, double tol = kDefaultZeroTol);

enum class LogDerivMode { direct, mittag_leffler };

/// F_L'(eta, r) / F_L(eta, r). In mittag_leffler mode the value is
/// (L+1)/r + eta/(L+1) - sum_{n<=terms} [r/(x_n(x_n-r)) + r/(y_n(y_n-r))].
double logderiv_F(double L, double eta, double r, LogDerivMode mode = LogDerivMode::direct,
                  std::size_t terms = 0);

/// Mittag-Leffler evaluation on precomputed zero sequences (first `terms`
/// entries of each).
double logderiv_F_mittag_leffler(const ZeroSeq& positive, const ZeroSeq& negative, double r,
                                 std::size_t terms);

}  // namespace cweig
