#include "kprab/sampled.hpp"

#include <algorithm>
#include <cmath>

#include "kprab/error.hpp"

namespace kprab {

SampledFunction::SampledFunction(Interval interval, std::vector<double> values)
    : interval_(interval), values_(std::move(values)) {
  if (values_.size() < 3) throw DomainError("sampled function needs n >= 2 (at least 3 nodes)");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("sampled function values must be finite");
  }
}

double SampledFunction::at(double x) const {
  if (!interval_.contains(x)) throw DomainError("interpolation point outside the interval");
  const double pos = (x - interval_.a()) / h();
  const std::size_t j = std::min(static_cast<std::size_t>(pos), n() - 1);
  const double frac = pos - static_cast<double>(j);
  return values_[j] + frac * (values_[j + 1] - values_[j]);
}

}  // namespace kprab
