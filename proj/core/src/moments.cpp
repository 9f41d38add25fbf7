#include "moments.hpp"

#include <cmath>

namespace kprab::detail {

namespace {

constexpr std::array<std::array<double, 2>, 5> kGauss10 = {{
    {0.14887433898163122, 0.29552422471475298},
    {0.43339539412924721, 0.26926671930999652},
    {0.67940956829902444, 0.21908636251598201},
    {0.86506336668898454, 0.14945134915058036},
    {0.97390652851717174, 0.066671344308688069},
}};

// ∫_lo^hi τ^{e-1} dτ for lo > 0.
double power_difference(double lo, double hi, double e) {
  return std::pow(lo, e) * std::expm1(e * std::log(hi / lo)) / e;
}

}  // namespace

std::array<double, 3> power_moments(double lo, double hi, double mu) {
  const double w = hi - lo;
  if (lo == 0.0) {
    const double base = std::pow(hi, mu);
    return {base / mu, base / (mu + 1.0), base / (mu + 2.0)};
  }
  if (lo < 2.0 * w || mu * w > 2.0 * lo) {
    // Binomial expansion of (τ - lo)^p; the cancellation stays mild in this regime.
    const double i0 = power_difference(lo, hi, mu);
    const double i1 = power_difference(lo, hi, mu + 1.0);
    const double i2 = power_difference(lo, hi, mu + 2.0);
    const double m1 = (i1 - lo * i0) / w;
    const double m2 = (i2 - 2.0 * lo * i1 + lo * lo * i0) / (w * w);
    return {i0, m1, m2};
  }
  const double half = 0.5 * w;
  const double mid = lo + half;
  std::array<double, 3> m{0.0, 0.0, 0.0};
  for (const auto& [x, wt] : kGauss10) {
    for (double sx : {-x, x}) {
      const double tau = mid + half * sx;
      const double f = wt * std::pow(tau, mu - 1.0);
      const double u = 0.5 * (1.0 + sx);
      m[0] += f;
      m[1] += f * u;
      m[2] += f * u * u;
    }
  }
  for (double& v : m) v *= half;
  return m;
}

}  // namespace kprab::detail
