#include "kprab/green.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "green_lattice.hpp"
#include "kprab/error.hpp"
#include "kprab/io.hpp"
#include "kprab/sampled.hpp"
#include "parallel.hpp"

namespace kprab {

namespace detail {

GreenLattice::GreenLattice(const OperatorParams& p, const Interval& iv, std::size_t n,
                           double tol, unsigned threads)
    : n_(n), k_(p.k), phi_(n + 1) {
  const double h = iv.length() / static_cast<double>(n);
  parallel_for(n + 1, threads, [&](std::size_t d) {
    const double x = d == n ? iv.length() : static_cast<double>(d) * h;
    phi_[d] = weighted_ml(p, x, tol);
  });
}

}  // namespace detail

namespace {

void check_point(const Interval& iv, double t, double u) {
  if (!iv.contains(t) || !iv.contains(u)) {
    throw DomainError("Green's function needs a <= t, u <= b; got t = " + std::to_string(t) +
                      ", u = " + std::to_string(u));
  }
}

}  // namespace

double green_eval(const OperatorParams& p, const Interval& iv, double t, double u, double tol,
                  DomainGate gate) {
  validate_bvp(p, gate);
  check_point(iv, t, u);
  const double a = iv.a();
  const double b = iv.b();
  const double ratio = weighted_ml(p, t - a, tol) / weighted_ml(p, b - a, tol);
  const double v = ratio * weighted_ml(p, b - u, tol) / p.k;
  return u <= t ? v - weighted_ml(p, t - u, tol) / p.k : v;
}

double green_diag(const OperatorParams& p, const Interval& iv, double u, double tol,
                  DomainGate gate) {
  return green_eval(p, iv, u, u, tol, gate);
}

GreenMaximum green_max_closed_form(const OperatorParams& p, const Interval& iv, double tol,
                                   DomainGate gate) {
  validate_bvp(p, gate);
  const double len = iv.length();
  const double e_half = ml_series(p, p.omega * std::pow(0.5 * len, p.rho / p.k), tol).value;
  const double e_full = ml_series(p, p.omega * std::pow(len, p.rho / p.k), tol).value;
  const double value = std::pow(0.25 * len, p.beta / p.k - 1.0) * e_half * e_half / (p.k * e_full);
  return {iv.midpoint(), value};
}

double GreenGrid::node(std::size_t i) const { return SampledFunction::grid_node(interval, n, i); }

GreenGrid green_scan(const OperatorParams& p, const Interval& iv, std::size_t n, double tol,
                     unsigned threads, DomainGate gate) {
  validate_bvp(p, gate);
  if (n < 8) throw DomainError("green_scan needs n >= 8");
  const detail::GreenLattice lattice(p, iv, n, tol, threads);
  GreenGrid grid{iv, n, std::vector<double>((n + 1) * (n + 1)), 0.0, 0.0, {}, 0};
  detail::parallel_for(n + 1, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j <= n; ++j) grid.values[i * (n + 1) + j] = lattice(i, j);
  });

  grid.min_entry = *std::min_element(grid.values.begin(), grid.values.end());
  grid.max_entry = *std::max_element(grid.values.begin(), grid.values.end());
  grid.column_argmax.assign(n + 1, 0);
  for (std::size_t j = 0; j <= n; ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (grid.at(i, j) > grid.at(best, j)) best = i;
    }
    grid.column_argmax[j] = best;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (grid.at(i, i) > grid.at(best, best)) best = i;
  }
  grid.diagonal_argmax = best;
  return grid;
}

void write_csv(std::ostream& os, const GreenGrid& grid) {
  os << "t,u,G\n";
  for (std::size_t i = 0; i <= grid.n; ++i) {
    const std::string t = io::number(grid.node(i));
    for (std::size_t j = 0; j <= grid.n; ++j) {
      os << t << ',' << io::number(grid.node(j)) << ',' << io::number(grid.at(i, j)) << '\n';
    }
  }
}

}  // namespace kprab
