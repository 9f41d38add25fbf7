#pragma once

#include <cstddef>
#include <vector>

#include "kprab/params.hpp"

namespace kprab::detail {

/// phi(d h) for d = 0..n on a uniform grid, from which every G(t_i, u_j) follows
/// because t_i - a, b - u_j and t_i - u_j are all multiples of h.
class GreenLattice {
 public:
  GreenLattice(const OperatorParams& p, const Interval& iv, std::size_t n, double tol,
               unsigned threads);

  double operator()(std::size_t i, std::size_t j) const {
    const double v = phi_[i] / phi_[n_] * phi_[n_ - j] / k_;
    return j <= i ? v - phi_[i - j] / k_ : v;
  }

 private:
  std::size_t n_;
  double k_;
  std::vector<double> phi_;
};

}  // namespace kprab::detail
