#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "kprab/params.hpp"

namespace kprab {

/// Values of a function on the uniform grid a = t_0 < ... < t_n = b, n >= 2.
class SampledFunction {
 public:
  SampledFunction(Interval interval, std::vector<double> values);

  template <class F>
  static SampledFunction sample(const Interval& interval, std::size_t n, F&& f) {
    std::vector<double> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = f(grid_node(interval, n, i));
    return SampledFunction(interval, std::move(v));
  }

  /// t_i = a + i (b - a) / n, with t_n = b exactly.
  static double grid_node(const Interval& interval, std::size_t n, std::size_t i) noexcept {
    if (i == n) return interval.b();
    return interval.a() + static_cast<double>(i) * (interval.length() / static_cast<double>(n));
  }

  const Interval& interval() const noexcept { return interval_; }
  std::size_t n() const noexcept { return values_.size() - 1; }
  double h() const noexcept { return interval_.length() / static_cast<double>(n()); }
  double node(std::size_t i) const noexcept { return grid_node(interval_, n(), i); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Piecewise-linear interpolant; x must lie in the interval.
  double at(double x) const;

 private:
  Interval interval_;
  std::vector<double> values_;
};

}  // namespace kprab
