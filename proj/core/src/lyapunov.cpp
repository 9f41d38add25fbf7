#include "kprab/lyapunov.hpp"

#include <cmath>

#include "kprab/error.hpp"
#include "kprab/io.hpp"

namespace kprab {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::necessary_condition_met: return "NECESSARY_CONDITION_MET";
    case Verdict::no_nontrivial_solution: return "NO_NONTRIVIAL_SOLUTION";
  }
  return "UNKNOWN";
}

double lyapunov_bound(const OperatorParams& p, const Interval& iv, double tol, DomainGate gate) {
  validate_bvp(p, gate);
  const double len = iv.length();
  const double e_half = ml_series(p, p.omega * std::pow(0.5 * len, p.rho / p.k), tol).value;
  const double e_full = ml_series(p, p.omega * std::pow(len, p.rho / p.k), tol).value;
  return std::pow(4.0 / len, p.beta / p.k - 1.0) * p.k * e_full / (e_half * e_half);
}

double integrate_abs(const SampledFunction& q) {
  const auto v = q.values();
  const std::size_t n = q.n();
  const double h = q.h();
  auto f = [&](std::size_t i) { return std::abs(v[i]); };

  // Simpson over an even number of cells, 3/8 rule on the trailing three if n is odd.
  const std::size_t simpson_cells = (n % 2 == 0) ? n : n - 3;
  double acc = 0.0;
  for (std::size_t i = 0; i + 2 <= simpson_cells; i += 2) {
    acc += h / 3.0 * (f(i) + 4.0 * f(i + 1) + f(i + 2));
  }
  if (n % 2 == 1) {
    const std::size_t i = simpson_cells;
    acc += 3.0 * h / 8.0 * (f(i) + 3.0 * f(i + 1) + 3.0 * f(i + 2) + f(i + 3));
  }
  return acc;
}

BoundReport certify(const OperatorParams& p, const Interval& iv, const SampledFunction& q,
                    double tol) {
  if (!(q.interval() == iv)) throw DomainError("q is sampled on a different interval");
  BoundReport r;
  r.bound = lyapunov_bound(p, iv, tol);
  r.q_integral = integrate_abs(q);
  r.margin = r.q_integral - r.bound;
  r.verdict = r.q_integral < r.bound ? Verdict::no_nontrivial_solution
                                     : Verdict::necessary_condition_met;
  return r;
}

std::string to_json(const BoundReport& r) {
  return io::JsonObject{}
      .add("bound", r.bound)
      .add("q_integral", r.q_integral)
      .add("margin", r.margin)
      .add("verdict", to_string(r.verdict))
      .str();
}

}  // namespace kprab
