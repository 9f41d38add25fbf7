#pragma once

#include <string>
#include <string_view>

#include "kprab/params.hpp"
#include "kprab/sampled.hpp"
#include "kprab/special.hpp"

namespace kprab {

enum class Verdict {
  necessary_condition_met,  ///< ∫|q| >= bound: a nontrivial solution is not ruled out
  no_nontrivial_solution,   ///< ∫|q| < bound: only y = 0 solves the problem
};

std::string_view to_string(Verdict v) noexcept;

struct BoundReport {
  double bound = 0.0;
  double q_integral = 0.0;
  double margin = 0.0;  ///< q_integral - bound
  Verdict verdict = Verdict::necessary_condition_met;
};

/// (4/(b-a))^{beta/k-1} k E(omega(b-a)^{rho/k}) / E(omega((b-a)/2)^{rho/k})^2,
/// the reciprocal of the Green's function maximum.
double lyapunov_bound(const OperatorParams& p, const Interval& iv, double tol = kDefaultTol,
                      DomainGate gate = DomainGate::strict);

/// ∫|q| by composite Simpson on q's grid (Simpson 3/8 on the last three cells when n is odd).
double integrate_abs(const SampledFunction& q);

/// Compares ∫|q| with the bound. Equality counts as the condition being met.
BoundReport certify(const OperatorParams& p, const Interval& iv, const SampledFunction& q,
                    double tol = kDefaultTol);

/// {"bound":..,"q_integral":..,"margin":..,"verdict":".."}
std::string to_json(const BoundReport& r);

}  // namespace kprab
