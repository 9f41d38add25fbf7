#pragma once

#include <string>
#include <vector>

#include "kprab/params.hpp"
#include "kprab/special.hpp"

namespace kprab {

/// One evaluated invariant. `observed` is compared against `threshold` using `relation`
/// ("<=" or ">=").
struct Check {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  double threshold = 0.0;
  std::string relation;
  std::string detail;
};

struct VerifyOptions {
  unsigned threads = 1;
  double tol = kDefaultTol;
};

struct VerifyReport {
  std::vector<Check> checks;

  std::size_t violation_count() const;
  bool passed() const { return violation_count() == 0; }
};

/// Parameter sets and intervals on which the Green's function is nonnegative with its
/// maximum on the diagonal at the midpoint.
struct ValidationCase {
  OperatorParams params;
  Interval interval;
};
std::vector<ValidationCase> green_validation_cases();

/// Runs the full invariant sweep. Output is independent of `threads` up to floating-point
/// reassociation, and bitwise reproducible for a fixed thread count.
VerifyReport run_verification(const VerifyOptions& options = {});

/// {"passed":..,"check_count":..,"violation_count":..,"violations":[..],"checks":[..]}
std::string to_json(const VerifyReport& report);

}  // namespace kprab
