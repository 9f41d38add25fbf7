#include "kprab/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kprab/error.hpp"

namespace kprab {

namespace {

constexpr double kIntegerSnap = 1e-12;

[[noreturn]] void fail(const std::string& msg) { throw DomainError(msg); }

}  // namespace

double OperatorParams::order() const noexcept {
  const double r = beta / k;
  const double nearest = std::round(r);
  return std::abs(r - nearest) <= kIntegerSnap * std::max(1.0, std::abs(r)) ? nearest : r;
}

std::string OperatorParams::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "(k=" << k << ", rho=" << rho << ", beta=" << beta << ", gamma=" << gamma
     << ", omega=" << omega << ")";
  return os.str();
}

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) fail("interval endpoints must be finite");
  if (!(a < b)) fail("interval requires a < b");
}

void validate_operator(const OperatorParams& p) {
  if (!std::isfinite(p.k) || !std::isfinite(p.rho) || !std::isfinite(p.beta) ||
      !std::isfinite(p.gamma) || !std::isfinite(p.omega)) {
    fail("operator parameters must be finite: " + p.to_string());
  }
  if (!(p.k > 0)) fail("k must be > 0: " + p.to_string());
  if (!(p.rho > 0)) fail("rho must be > 0: " + p.to_string());
  if (!(p.beta > 0)) fail("beta must be > 0: " + p.to_string());
  if (!(p.gamma >= 0)) fail("gamma must be >= 0: " + p.to_string());
}

void validate_bvp(const OperatorParams& p, DomainGate gate) {
  if (gate == DomainGate::strict) {
    validate_operator(p);
    if (!(p.omega >= 0)) fail("boundary-value problem requires omega >= 0: " + p.to_string());
  } else {
    // gamma may be negative here, so only the shape parameters are checked.
    OperatorParams shape = p;
    shape.gamma = 0.0;
    validate_operator(shape);
  }
  const double order = p.order();
  if (!(order > 1.0 && order <= 2.0)) {
    fail("boundary-value problem requires 1 < beta/k <= 2: " + p.to_string());
  }
}

int derivative_count(const OperatorParams& p) {
  return static_cast<int>(std::floor(p.order())) + 1;
}

}  // namespace kprab
