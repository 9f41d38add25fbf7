#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "kprab/params.hpp"
#include "kprab/sampled.hpp"
#include "kprab/special.hpp"

namespace kprab {

/// Largest grid resolution accepted by the Nyström routines.
inline constexpr std::size_t kMaxNystromN = 512;

/// Nyström discretisation of y(t) = ∫ G(t,u) q(u) y(u) du on a uniform grid,
/// composite Simpson weights: matrix(i, j) = w_j G(t_i, u_j) q(u_j).
struct FredholmSystem {
  Interval interval;
  std::size_t n = 0;
  std::vector<double> matrix;  ///< row-major, (n+1) x (n+1)

  double operator()(std::size_t i, std::size_t j) const { return matrix[i * (n + 1) + j]; }
  double node(std::size_t i) const;
};

struct EigenReport {
  double spectral_radius = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double residual = 0.0;            ///< ||M v - lambda v||_inf with ||v||_inf = 1
  std::vector<double> eigenvector;  ///< max-norm 1, nonnegative at its largest entry
};

/// Requires even n in [16, kMaxNystromN]; q is interpolated onto the grid.
FredholmSystem assemble(const OperatorParams& p, const Interval& iv, const SampledFunction& q,
                        std::size_t n, double tol = kDefaultTol, unsigned threads = 1);

/// Power iteration from the all-ones vector.
EigenReport spectral_radius(const FredholmSystem& sys, std::size_t max_iter = 100000,
                            double tol = 1e-12);

/// 1 / spectral radius of the system with q = 1: the smallest constant |q| for
/// which the discretised problem has a nontrivial solution.
double critical_constant_q(const OperatorParams& p, const Interval& iv, std::size_t n,
                           double tol = kDefaultTol, unsigned threads = 1);

/// max |D y + q y| over grid nodes where the derivative stencil fits and
/// t - a >= boundary_margin (b - a). y and q are interpolated onto the n-grid.
double residual(const OperatorParams& p, const Interval& iv, const SampledFunction& q,
                const SampledFunction& y, std::size_t n, double tol = kDefaultTol,
                double boundary_margin = 0.0);

/// Residual of a Nystrom eigenpair in differential form: D y + (q / spectral_radius) y with y
/// the eigenvector, evaluated on the even (panel-boundary) nodes only. Odd rows carry a
/// different Simpson error at the diagonal singularity of G, and differencing across the two
/// parities does not converge.
double eigen_residual(const OperatorParams& p, const FredholmSystem& sys,
                      const SampledFunction& q, const EigenReport& r, double tol = kDefaultTol,
                      double boundary_margin = 0.1);

std::string to_json(const EigenReport& r);

/// CSV `t,y` of the eigenvector on the system grid.
void write_eigenvector_csv(std::ostream& os, const FredholmSystem& sys, const EigenReport& r);

}  // namespace kprab
