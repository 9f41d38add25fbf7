#pragma once

#include <string>

namespace kprab {

/// Parameter tuple (k, rho, beta, gamma, omega) shared by every operator.
///
/// The struct itself is unconstrained so that derived operators can carry a
/// negated gamma (the derivative's inner integral does). Public entry points
/// validate with `validate_operator` or `validate_bvp`.
struct OperatorParams {
  double k = 1.0;      ///< deformation parameter, > 0
  double rho = 1.0;    ///< inner exponent scale, > 0
  double beta = 1.0;   ///< order parameter, > 0
  double gamma = 0.0;  ///< Prabhakar exponent, >= 0 at the public surface
  double omega = 0.0;  ///< argument scale

  /// beta / k, snapped to the nearest integer when within 1e-12 of it.
  double order() const noexcept;

  /// (k, rho, beta, gamma, omega) = (1, 1, 2, 0, 0): the second-order classical problem.
  static OperatorParams classical() noexcept { return {1.0, 1.0, 2.0, 0.0, 0.0}; }

  std::string to_string() const;

  friend bool operator==(const OperatorParams&, const OperatorParams&) = default;
};

/// How strictly the boundary-value modules gate omega and gamma.
enum class DomainGate {
  strict,       ///< omega >= 0 and gamma >= 0 required
  exploratory,  ///< signs of omega and gamma unchecked; positivity is not guaranteed
};

/// Closed interval [a, b] with a < b.
class Interval {
 public:
  Interval(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return 0.5 * (a_ + b_); }
  bool contains(double x) const noexcept { return x >= a_ && x <= b_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

/// k, rho, beta > 0, gamma >= 0, all finite.
void validate_operator(const OperatorParams& p);

/// Boundary-value domain: operator invariants plus 1 < beta/k <= 2 and,
/// under the strict gate, omega >= 0.
void validate_bvp(const OperatorParams& p, DomainGate gate = DomainGate::strict);

/// m = floor(beta/k) + 1, the number of outer derivatives in the derivative operator.
int derivative_count(const OperatorParams& p);

}  // namespace kprab
