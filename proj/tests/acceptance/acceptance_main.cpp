// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "kprab/bvp.hpp"
#include "kprab/fracops.hpp"
#include "kprab/green.hpp"
#include "kprab/lyapunov.hpp"
#include "kprab/special.hpp"
#include "kprab/verify.hpp"
#include "oracles.hpp"

#ifndef KPRAB_CLI_PATH
#error "KPRAB_CLI_PATH must name the kprab executable"
#endif

using kprab::Interval;
using kprab::OperatorParams;
using kprab::SampledFunction;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Outcome classical_reduction() {
  const Interval intervals[] = {{0, 1}, {-1, 1}, {2, 5}, {-3.5, -0.25}, {0, 0.1}, {10, 30}};
  double worst = 0;
  for (const auto& iv : intervals) {
    worst = std::max(worst, rel(kprab::lyapunov_bound(OperatorParams::classical(), iv), 4 / iv.length()));
  }
  return {worst <= 1e-12, "6 intervals, max rel err " + sci(worst) + " (tol 1e-12)"};
}

Outcome exponential_identity() {
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const double z = -2.0 + 4.0 * i / 49.0;
    worst = std::max(worst, rel(kprab::ml_k({1, 1, 1, 1, 0}, z).value, std::exp(z)));
  }
  return {worst <= 1e-10, "50 points, max rel err " + sci(worst) + " (tol 1e-10)"};
}

Outcome laplace_oracle() {
  oracle::Gen gen(2024);
  int count = 0;
  double worst = 0;
  while (count < 24) {
    const OperatorParams p = gen.any_operator();
    const double s = gen.uniform(0.3, 8);
    if (kprab::laplace_margin(p, s) >= 0.5) continue;
    const auto r = kprab::laplace_numeric(p, s);
    worst = std::max(worst, rel(r.numeric, r.closed_form));
    ++count;
  }
  return {worst <= 1e-6, std::to_string(count) + " (p,s) points with margin < 0.5, max rel err " +
                             sci(worst) + " (tol 1e-6)"};
}

Outcome weighted_derivative() {
  const OperatorParams sets[] = {{1, 1, 1.5, 0.5, 0.3}, {0.5, 0.7, 0.9, 1.2, 0.3}, {2, 1, 3.3, 1, 0.5},
                                 {1, 0.5, 1.48, 1, -0.7}, {1.5, 2, 2.1, 0.4, 0.8}, {0.8, 1.2, 1.9, 2.5, 1.5}};
  const double xs[] = {0.25, 0.9, 2.0};
  int count = 0;
  double worst = 0;
  for (const auto& p : sets) {
    for (double x : xs) {
      auto f = [&](double s) { return kprab::weighted_ml(p, s); };
      for (unsigned j = 1; j <= 2; ++j) {
        auto fd = [&](double h) {
          return j == 1 ? (f(x + h) - f(x - h)) / (2 * h) : (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
        };
        const double h = (j == 1 ? 1e-3 : 4e-3) * x;
        const double want = (4 * fd(h / 2) - fd(h)) / 3;
        worst = std::max(worst, rel(kprab::ml_weighted_derivative(p, x, j), want));
        ++count;
      }
    }
  }
  return {worst <= 1e-5, std::to_string(count) + " points (j=1,2), max rel err " + sci(worst) + " (tol 1e-5)"};
}

// Error of D(P f) - f over stencil-safe nodes at least 10% of the interval from the left end,
// together with the rounding floor of an m-th difference on that grid.
std::pair<double, double> left_inverse_error(const OperatorParams& p, std::size_t n,
                                             const std::function<double(double)>& f) {
  const Interval iv(0, 1);
  const auto fs = SampledFunction::sample(iv, n, f);
  const SampledFunction pf(iv, kprab::prabhakar_integral_grid(p, fs));
  const auto d = kprab::prabhakar_derivative_grid(p, pf);
  double err = 0;
  for (std::size_t i = d.first; i <= d.last; ++i) {
    if (fs.node(i) >= 0.1) err = std::max(err, std::abs(d.values[i] - fs[i]));
  }
  double scale = 1;
  for (double v : pf.values()) scale = std::max(scale, std::abs(v));
  const double floor = 4 * std::numeric_limits<double>::epsilon() * scale *
                       std::pow(static_cast<double>(n), kprab::derivative_count(p));
  return {err, floor};
}

Outcome left_inverse() {
  const OperatorParams sets[] = {{1, 1, 1.5, 0.7, 0.4}, {0.5, 0.7, 0.9, 1.2, 0.3}, {1, 1, 1.9, 0.5, 0.5},
                                 {1, 1, 1.2, 1, 1},     {2, 1, 3, 0.5, 0.2},       OperatorParams::classical()};
  const std::function<double(double)> fns[] = {[](double) { return 1.0; }, [](double t) { return t; },
                                               [](double t) { return std::sin(t); }};
  double worst_ratio = INFINITY;
  int at_floor = 0;
  for (const auto& p : sets) {
    for (const auto& f : fns) {
      const auto [e64, floor64] = left_inverse_error(p, 64, f);
      const auto [e128, floor128] = left_inverse_error(p, 128, f);
      if (e64 <= floor64 && e128 <= floor128) {
        ++at_floor;
        continue;
      }
      worst_ratio = std::min(worst_ratio, e64 / e128);
    }
  }
  return {worst_ratio >= 2.0, "6 sets x {1,t,sin t}, worst err64/err128 = " + sci(worst_ratio) +
                                  " (need >= 2; " + std::to_string(at_floor) + " cases exact to rounding)"};
}

Outcome green_positivity() {
  const auto cases = kprab::green_validation_cases();
  double min_entry = INFINITY;
  long column_offset = 0;
  long diag_offset = 0;
  double max_rel = 0;
  for (const auto& c : cases) {
    const auto g = kprab::green_scan(c.params, c.interval, 128);
    min_entry = std::min(min_entry, g.min_entry);
    for (std::size_t j = 1; j < 128; ++j) {
      column_offset = std::max(column_offset, std::labs(static_cast<long>(g.column_argmax[j]) - static_cast<long>(j)));
    }
    diag_offset = std::max(diag_offset, std::labs(static_cast<long>(g.diagonal_argmax) - 64));
    max_rel = std::max(max_rel, rel(kprab::green_max_closed_form(c.params, c.interval).value, g.max_entry));
  }
  const bool pass = cases.size() >= 10 && min_entry >= -1e-12 && column_offset <= 1 && diag_offset <= 1 &&
                    max_rel <= 1e-8;
  return {pass, std::to_string(cases.size()) + " sets at n=128: min G " + sci(min_entry) +
                    ", column argmax offset " + std::to_string(column_offset) + ", diagonal offset " +
                    std::to_string(diag_offset) + ", closed-form max rel err " + sci(max_rel)};
}

Outcome reciprocity() {
  double worst = 0;
  oracle::Gen gen(7);
  std::vector<kprab::ValidationCase> cases = kprab::green_validation_cases();
  for (int i = 0; i < 40; ++i) cases.push_back({gen.bvp_operator(), gen.interval()});
  for (const auto& c : cases) {
    const double prod = kprab::lyapunov_bound(c.params, c.interval) *
                        kprab::green_max_closed_form(c.params, c.interval).value;
    worst = std::max(worst, std::abs(prod - 1));
  }
  return {worst <= 1e-12, std::to_string(cases.size()) + " sets, max |bound * maxG - 1| = " + sci(worst)};
}

Outcome fredholm_soundness() {
  double min_margin = INFINITY;
  const auto cases = kprab::green_validation_cases();
  for (const auto& c : cases) {
    const double lambda = kprab::critical_constant_q(c.params, c.interval, 128);
    min_margin = std::min(min_margin, lambda * c.interval.length() / kprab::lyapunov_bound(c.params, c.interval));
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double classical = kprab::critical_constant_q(OperatorParams::classical(), Interval(0, 1), 128);
  const bool pass = cases.size() >= 10 && min_margin >= 1 && std::abs(classical - pi2) <= 1e-3;
  return {pass, std::to_string(cases.size()) + " sets, min lambda*(b-a)/bound = " + sci(min_margin) +
                    "; classical |lambda - pi^2| = " + sci(std::abs(classical - pi2)) + " (tol 1e-3)"};
}

Outcome equivalence_residual() {
  const Interval iv(0, 1);
  const double pi = std::numbers::pi;
  auto res = [&](std::size_t n) {
    const auto q = SampledFunction::sample(iv, n, [&](double) { return pi * pi; });
    const auto y = SampledFunction::sample(iv, n, [&](double t) { return std::sin(pi * t); });
    return kprab::residual(OperatorParams::classical(), iv, q, y, n);
  };
  const double r64 = res(64);
  const double r128 = res(128);
  const double order = std::log2(r64 / r128);
  return {r128 < 1e-2 && order >= 1, "residual n=128 " + sci(r128) + " (tol 1e-2), observed order " + sci(order)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path first = dir / "kprab_acceptance_verify_1.json";
  const fs::path second = dir / "kprab_acceptance_verify_2.json";
  auto run = [&](const fs::path& out) {
    const std::string cmd = std::string("\"") + KPRAB_CLI_PATH + "\" verify-all --threads 1 --out \"" +
                            out.string() + "\"";
    return std::system(cmd.c_str());
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  const int s1 = run(first);
  const int s2 = run(second);
  const std::string a = slurp(first);
  const std::string b = slurp(second);
  fs::remove(first);
  fs::remove(second);
  const bool pass = s1 == 0 && s2 == 0 && !a.empty() && a == b;
  return {pass, "two verify-all runs: " + std::to_string(a.size()) + " bytes, " +
                    (a == b ? "identical" : "DIFFERENT") + ", exit " + std::to_string(s1) + "/" +
                    std::to_string(s2)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "classical Lyapunov reduction", 1, classical_reduction},
      {2, "exponential identity", 1, exponential_identity},
      {3, "Laplace oracle", 30, laplace_oracle},
      {4, "weighted derivative identity", 10, weighted_derivative},
      {5, "left-inverse identity", 60, left_inverse},
      {6, "Green's function positivity and maximum", 60, green_positivity},
      {7, "reciprocity", 1, reciprocity},
      {8, "Fredholm soundness", 120, fredholm_soundness},
      {9, "equivalence residual", 30, equivalence_residual},
      {10, "determinism of verify-all", 600, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %2d: %s | %s | %.2fs%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, in_time ? "" : " (over time budget)");
  }
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
