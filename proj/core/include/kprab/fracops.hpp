#pragma once

#include <cstddef>
#include <vector>

#include "kprab/params.hpp"
#include "kprab/sampled.hpp"
#include "kprab/special.hpp"

namespace kprab {

/// Kernel t^{beta/k-1} / k * E^gamma_{k,rho,beta}(omega t^{rho/k}) for t > 0, zero for t <= 0.
double prabhakar_kernel(const OperatorParams& p, double t, double tol = kDefaultTol);

/// k-Prabhakar integral with lower terminal a = f.interval().a():
///   ∫_a^x kernel(x - t) f(t) dt.
///
/// f is replaced by its piecewise-linear interpolant and the kernel series is
/// integrated against it exactly, term by term, so the only discretisation
/// error is the interpolation of f.
double prabhakar_integral(const OperatorParams& p, const SampledFunction& f, double x,
                          double tol = kDefaultTol);

/// prabhakar_integral at every grid node of f.
std::vector<double> prabhakar_integral_grid(const OperatorParams& p, const SampledFunction& f,
                                            double tol = kDefaultTol);

/// k-Prabhakar derivative (d/dx)^m k^m P^{-gamma}_{rho, mk-beta, omega} f, m = floor(beta/k)+1.
///
/// The outer derivative is a central difference with steps h and 2h
/// (h = grid spacing of f), combined by Richardson extrapolation. The stencil
/// reaches 2 ceil(m/2) h on each side of x; closer to an endpoint is a DomainError.
double prabhakar_derivative(const OperatorParams& p, const SampledFunction& f, double x,
                            double tol = kDefaultTol);

/// The derivative at every grid node whose stencil fits inside the interval.
struct DerivativeGrid {
  std::size_t first = 0;       ///< first node with a value
  std::size_t last = 0;        ///< last node with a value (inclusive)
  std::vector<double> values;  ///< size n + 1; entries outside [first, last] are NaN
};

DerivativeGrid prabhakar_derivative_grid(const OperatorParams& p, const SampledFunction& f,
                                         double tol = kDefaultTol);

/// Stencil half-width of prabhakar_derivative, in grid cells.
std::size_t derivative_reach(const OperatorParams& p);

/// |omega k (k s)^{-rho/k}|; the closed-form transforms need it below 1.
double laplace_margin(const OperatorParams& p, double s);

/// (k s)^{-beta/k} (1 - omega k (k s)^{-rho/k})^{-gamma/k}: the Laplace transform of the kernel.
double laplace_closed_form_integral(const OperatorParams& p, double s);

struct LaplaceCheck {
  double s = 0.0;
  double numeric = 0.0;             ///< quadrature on [0, horizon] plus the tail estimate
  double closed_form = 0.0;
  double convergence_margin = 0.0;  ///< |omega k (k s)^{-rho/k}|
  double tail_estimate = 0.0;       ///< exponential bound on ∫_horizon^∞
  bool slow_convergence = false;    ///< margin in [0.5, 1)
};

/// Numerical ∫_0^horizon e^{-s t} kernel(t) dt by product integration: the
/// weight t^{beta/k-1} is integrated exactly against a piecewise-quadratic
/// interpolant of the rest. horizon <= 0 selects 40/s. subdiv is rounded up to even.
LaplaceCheck laplace_numeric(const OperatorParams& p, double s, double horizon = 0.0,
                             std::size_t subdiv = 20000, double tol = kDefaultTol);

}  // namespace kprab
