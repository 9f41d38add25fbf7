#pragma once

#include <cstddef>

#include "kprab/params.hpp"

namespace kprab::detail {

/// One series coefficient (gamma)_{n,k} / (Γ_k(rho n + beta) n!) in sign/log form.
struct LogCoefficient {
  double log_abs = 0.0;
  int sign = 0;  // 0: exact zero; every later coefficient is zero too
};

/// Generates the k-Mittag-Leffler coefficients in ascending order.
class MlCoefficients {
 public:
  explicit MlCoefficients(const OperatorParams& p);

  /// Coefficient for the current index, then advances.
  LogCoefficient next();
  std::size_t index() const noexcept { return n_; }

 private:
  double k_;
  double rho_;
  double beta_;
  double gamma_;
  double log_k_;
  std::size_t n_ = 0;
  double log_poch_ = 0.0;
  int poch_sign_ = 1;
  double log_fact_ = 0.0;
};

/// Sign and ln|Γ_k(x)| for any real x that is not a pole. Returns false at a pole.
bool signed_log_k_gamma(double x, double k, double& log_abs, int& sign);

/// Stopping rule shared by the series evaluators.
///
/// Feed term magnitudes (or per-term upper bounds) in order; `done` reports
/// when the last two ratios are below one and the latest magnitude is within
/// tol of `scale`.
class TailMonitor {
 public:
  explicit TailMonitor(double tol) : tol_(tol) {}

  /// Returns true when the series can stop after this term.
  bool push(double magnitude, double scale);
  double tail_bound() const noexcept { return tail_; }

 private:
  double tol_;
  std::size_t count_ = 0;
  double prev_mag_ = 0.0;
  double prev_ratio_ = 0.0;
  double tail_ = 0.0;
};

}  // namespace kprab::detail
