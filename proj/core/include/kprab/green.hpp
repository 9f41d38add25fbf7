#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "kprab/params.hpp"
#include "kprab/special.hpp"

namespace kprab {

/// G(t, u) for D y + q y = 0, y(a) = y(b) = 0, with phi(x) = x^{beta/k-1} E(omega x^{rho/k}):
///
///   G = phi(t-a) phi(b-u) / (k phi(b-a)) - [u <= t] phi(t-u) / k.
///
/// Requires a <= t, u <= b and the boundary-value parameter domain.
double green_eval(const OperatorParams& p, const Interval& iv, double t, double u,
                  double tol = kDefaultTol, DomainGate gate = DomainGate::strict);

/// h(u) = G(u, u).
double green_diag(const OperatorParams& p, const Interval& iv, double u,
                  double tol = kDefaultTol, DomainGate gate = DomainGate::strict);

struct GreenMaximum {
  double location = 0.0;
  double value = 0.0;
};

/// Location (a+b)/2 and value ((b-a)/4)^{beta/k-1} E(omega((b-a)/2)^{rho/k})^2 / (k E(omega(b-a)^{rho/k})).
GreenMaximum green_max_closed_form(const OperatorParams& p, const Interval& iv,
                                   double tol = kDefaultTol,
                                   DomainGate gate = DomainGate::strict);

/// G on the (n+1) x (n+1) grid t_i = u_i = a + i (b-a)/n, with summary statistics.
struct GreenGrid {
  Interval interval;
  std::size_t n = 0;
  std::vector<double> values;  ///< row-major: values[i * (n+1) + j] = G(t_i, u_j)

  double min_entry = 0.0;
  double max_entry = 0.0;
  std::vector<std::size_t> column_argmax;  ///< argmax over t (row index) for each column j
  std::size_t diagonal_argmax = 0;

  double at(std::size_t i, std::size_t j) const { return values[i * (n + 1) + j]; }
  double node(std::size_t i) const;
};

/// Fills the grid. Each cell is computed independently, so the result does not
/// depend on `threads`. Requires n >= 8.
GreenGrid green_scan(const OperatorParams& p, const Interval& iv, std::size_t n,
                     double tol = kDefaultTol, unsigned threads = 1,
                     DomainGate gate = DomainGate::strict);

/// CSV with header `t,u,G`, row-major, 17 significant digits.
void write_csv(std::ostream& os, const GreenGrid& grid);

}  // namespace kprab
