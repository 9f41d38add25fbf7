#pragma once

#include <array>

namespace kprab::detail {

/// m_p = ∫_lo^hi τ^{mu-1} ((τ - lo) / (hi - lo))^p dτ for p = 0, 1, 2.
///
/// Requires 0 <= lo < hi and mu > 0. Cells touching or near the origin use
/// closed forms (expm1-based differences of powers); cells far from it use
/// 10-point Gauss-Legendre, where the integrand is smooth.
std::array<double, 3> power_moments(double lo, double hi, double mu);

}  // namespace kprab::detail
