#pragma once

#include <cstddef>

#include "kprab/params.hpp"

namespace kprab {

/// Default truncation tolerance for every series evaluation.
inline constexpr double kDefaultTol = 1e-14;

/// Hard cap on the number of series terms.
inline constexpr std::size_t kMaxSeriesTerms = 10000;

/// A truncated series evaluation.
struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  /// Geometric estimate of the neglected tail; at most tol * max(1, |value|).
  double tail_bound = 0.0;
};

/// ln Γ_k(x) = (x/k - 1) ln k + ln Γ(x/k), for x > 0 and k > 0.
double log_k_gamma(double x, double k);

/// Γ_k(x). Throws OverflowError (carrying ln Γ_k(x)) if the result does not fit in a double.
double k_gamma(double x, double k);

/// Pochhammer k-symbol (g)_{n,k} = g (g + k) ... (g + (n-1)k).
///
/// Evaluated as the product, so g = 0 gives 0 for n >= 1 and 1 for n = 0.
/// Negative g is accepted; the derivative operator needs (-gamma)_{n,k}.
double k_pochhammer(double g, std::size_t n, double k);

/// k-Mittag-Leffler function E^gamma_{k,rho,beta}(z) = sum_n (gamma)_{n,k} z^n / (Γ_k(rho n + beta) n!).
///
/// Terms are summed in ascending order. The sum stops at term n once
/// |term_n| <= tol |S|, the last two term ratios are below one, and the
/// geometric tail |term_n| r / (1 - r) is at most tol * max(1, |S|).
/// p.omega is not used; the argument is z.
SeriesResult ml_k(const OperatorParams& p, double z, double tol = kDefaultTol);

/// Same series without the public parameter gate: gamma may be negative and
/// beta may be nonpositive. A Γ_k pole at a term whose Pochhammer factor is
/// nonzero raises DomainError naming the index.
SeriesResult ml_series(const OperatorParams& p, double z, double tol = kDefaultTol);

/// j-th derivative of x^{beta/k - 1} E^gamma_{k,rho,beta}(omega x^{rho/k}), via
/// x^{beta/k - (j+1)} / k^j * E^gamma_{k,rho,beta-jk}(omega x^{rho/k}).
double ml_weighted_derivative(const OperatorParams& p, double x, unsigned j,
                              double tol = kDefaultTol);

/// x^{beta/k - 1} E^gamma_{k,rho,beta}(omega x^{rho/k}); zero at x = 0 when beta/k > 1.
double weighted_ml(const OperatorParams& p, double x, double tol = kDefaultTol);

}  // namespace kprab
