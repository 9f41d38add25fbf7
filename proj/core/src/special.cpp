#include "kprab/special.hpp"

#include <math.h>  // lgamma_r

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kprab/error.hpp"
#include "ml_terms.hpp"

namespace kprab {

namespace detail {

bool signed_log_k_gamma(double x, double k, double& log_abs, int& sign) {
  const double y = x / k;
  if (y <= 0.0 && y == std::floor(y)) return false;
  int s = 1;
  // lgamma_r keeps the sign out of the global signgam.
  const double lg = ::lgamma_r(y, &s);
  log_abs = (y - 1.0) * std::log(k) + lg;
  sign = s;
  return true;
}

MlCoefficients::MlCoefficients(const OperatorParams& p)
    : k_(p.k), rho_(p.rho), beta_(p.beta), gamma_(p.gamma), log_k_(std::log(p.k)) {}

LogCoefficient MlCoefficients::next() {
  const std::size_t n = n_++;
  if (n > 0) {
    const double factor = gamma_ + static_cast<double>(n - 1) * k_;
    if (factor == 0.0 || poch_sign_ == 0) {
      poch_sign_ = 0;
      return {};
    }
    log_poch_ += std::log(std::abs(factor));
    if (factor < 0) poch_sign_ = -poch_sign_;
    log_fact_ += std::log(static_cast<double>(n));
  }
  double lg = 0.0;
  int gs = 1;
  const double arg = rho_ * static_cast<double>(n) + beta_;
  if (!signed_log_k_gamma(arg, k_, lg, gs)) {
    throw DomainError("Gamma_k pole at series index " + std::to_string(n) +
                      " (argument rho*n + beta = " + std::to_string(arg) + ")");
  }
  return {log_poch_ - log_fact_ - lg, poch_sign_ * gs};
}

bool TailMonitor::push(double magnitude, double scale) {
  const std::size_t i = count_++;
  bool stop = false;
  if (i >= 1) {
    double ratio;
    if (prev_mag_ > 0) {
      ratio = magnitude / prev_mag_;
    } else {
      ratio = magnitude == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    if (i >= 2 && ratio < 1.0 && prev_ratio_ < 1.0 && magnitude <= tol_ * std::abs(scale)) {
      const double r = std::max(ratio, prev_ratio_);
      const double tail = magnitude * r / (1.0 - r);
      if (tail <= tol_ * std::max(1.0, std::abs(scale))) {
        tail_ = tail;
        stop = true;
      }
    }
    prev_ratio_ = ratio;
  }
  prev_mag_ = magnitude;
  return stop;
}

}  // namespace detail

double log_k_gamma(double x, double k) {
  if (!(k > 0) || !std::isfinite(k)) throw DomainError("k_gamma requires k > 0");
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("k_gamma requires x > 0");
  double lg = 0.0;
  int sign = 1;
  detail::signed_log_k_gamma(x, k, lg, sign);
  return lg;
}

double k_gamma(double x, double k) {
  const double lg = log_k_gamma(x, k);
  const double v = std::exp(lg);
  if (!std::isfinite(v)) {
    throw OverflowError("k_gamma overflows; ln value = " + std::to_string(lg), lg);
  }
  return v;
}

double k_pochhammer(double g, std::size_t n, double k) {
  if (!(k > 0) || !std::isfinite(k)) throw DomainError("k_pochhammer requires k > 0");
  if (!std::isfinite(g)) throw DomainError("k_pochhammer requires finite g");
  double prod = 1.0;
  for (std::size_t i = 0; i < n; ++i) prod *= g + static_cast<double>(i) * k;
  if (!std::isfinite(prod)) {
    double lg = 0.0;
    for (std::size_t i = 0; i < n; ++i) lg += std::log(std::abs(g + static_cast<double>(i) * k));
    throw OverflowError("k_pochhammer overflows", lg);
  }
  return prod;
}

SeriesResult ml_series(const OperatorParams& p, double z, double tol) {
  if (!(tol > 0)) throw DomainError("series tolerance must be > 0");
  if (!(p.k > 0) || !(p.rho > 0)) throw DomainError("series requires k > 0 and rho > 0");
  if (!std::isfinite(z)) throw DomainError("series argument must be finite");

  detail::MlCoefficients coeffs(p);
  detail::TailMonitor monitor(tol);
  const double log_z = z == 0.0 ? 0.0 : std::log(std::abs(z));
  const bool negative_z = z < 0;
  double sum = 0.0;

  for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
    const auto c = coeffs.next();
    if (c.sign == 0) return {sum, n, 0.0};  // Pochhammer factor hit zero
    double term = 0.0;
    if (n == 0 || z != 0.0) {
      const double mag = std::exp(c.log_abs + static_cast<double>(n) * log_z);
      const bool flip = negative_z && (n % 2 == 1);
      term = (c.sign < 0) != flip ? -mag : mag;
    }
    sum += term;
    if (!std::isfinite(sum)) {
      throw OverflowError("k-Mittag-Leffler series overflows at term " + std::to_string(n),
                          std::numeric_limits<double>::infinity());
    }
    if (z == 0.0) return {sum, 1, 0.0};
    if (monitor.push(std::abs(term), sum)) return {sum, n + 1, monitor.tail_bound()};
  }
  throw ConvergenceError("k-Mittag-Leffler series did not converge within " +
                             std::to_string(kMaxSeriesTerms) + " terms",
                         sum, kMaxSeriesTerms);
}

SeriesResult ml_k(const OperatorParams& p, double z, double tol) {
  validate_operator(p);
  return ml_series(p, z, tol);
}

double ml_weighted_derivative(const OperatorParams& p, double x, unsigned j, double tol) {
  validate_operator(p);
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("weighted derivative requires x > 0");
  OperatorParams shifted = p;
  shifted.beta = p.beta - static_cast<double>(j) * p.k;
  const double z = p.omega * std::pow(x, p.rho / p.k);
  const double series = ml_series(shifted, z, tol).value;
  const double log_pre =
      (p.beta / p.k - static_cast<double>(j + 1)) * std::log(x) - j * std::log(p.k);
  return std::exp(log_pre) * series;
}

double weighted_ml(const OperatorParams& p, double x, double tol) {
  if (x == 0.0 && p.beta / p.k > 1.0) return 0.0;
  if (!(x > 0)) throw DomainError("weighted_ml requires x > 0");
  const double z = p.omega * std::pow(x, p.rho / p.k);
  return std::pow(x, p.beta / p.k - 1.0) * ml_series(p, z, tol).value;
}

}  // namespace kprab
