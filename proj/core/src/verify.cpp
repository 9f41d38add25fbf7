#include "kprab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>

#include "kprab/bvp.hpp"
#include "kprab/fracops.hpp"
#include "kprab/green.hpp"
#include "kprab/io.hpp"
#include "kprab/lyapunov.hpp"
#include "kprab/sampled.hpp"

namespace kprab {

namespace {

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string label(const OperatorParams& p) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "/k=%g,rho=%g,beta=%g,gamma=%g,omega=%g", p.k, p.rho, p.beta,
                p.gamma, p.omega);
  return buf;
}

std::string label(const OperatorParams& p, const Interval& iv) {
  char buf[64];
  std::snprintf(buf, sizeof buf, ";[%g,%g]", iv.a(), iv.b());
  return label(p) + buf;
}

double rel_err(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

class Recorder {
 public:
  explicit Recorder(std::vector<Check>& out) : out_(out) {}

  void at_most(std::string name, double observed, double threshold, std::string detail = {}) {
    push(std::move(name), observed, threshold, "<=", observed <= threshold, std::move(detail));
  }
  void at_least(std::string name, double observed, double threshold, std::string detail = {}) {
    push(std::move(name), observed, threshold, ">=", observed >= threshold, std::move(detail));
  }
  void failed(std::string name, const std::exception& e) {
    push(std::move(name), std::nan(""), std::nan(""), "", false, e.what());
  }

  // Runs `body`; any exception is recorded as a failed check under `name`.
  void guard(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      failed(name, e);
    }
  }

 private:
  void push(std::string name, double observed, double threshold, const char* rel, bool ok,
            std::string detail) {
    // NaN comparisons are false, so a NaN observation is a violation.
    out_.push_back(Check{std::move(name), ok, observed, threshold, rel, std::move(detail)});
  }
  std::vector<Check>& out_;
};

void check_classical_bound(Recorder& rec, double tol) {
  const Interval intervals[] = {{0, 1}, {-1, 1}, {2, 5}, {-3.5, -0.25}, {0, 0.1}, {10, 30}};
  for (const auto& iv : intervals) {
    const std::string name = "classical_bound" + label(OperatorParams::classical(), iv);
    rec.guard(name, [&] {
      const double got = lyapunov_bound(OperatorParams::classical(), iv, tol);
      rec.at_most(name, rel_err(got, 4.0 / iv.length()), 1e-12);
    });
  }
}

void check_exponential(Recorder& rec, double tol) {
  const OperatorParams e{1, 1, 1, 1, 0};
  rec.guard("exponential_identity", [&] {
    double worst = 0.0;
    double where = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double z = -2.0 + 4.0 * i / 49.0;
      const double err = rel_err(ml_k(e, z, tol).value, std::exp(z));
      if (err > worst) {
        worst = err;
        where = z;
      }
    }
    rec.at_most("exponential_identity", worst, 1e-10, fmt("worst z=%.17g", where));
  });
}

void check_laplace(Recorder& rec, double tol) {
  struct Case {
    OperatorParams p;
    double s;
  };
  const Case cases[] = {
      {{1, 1, 2, 0, 0}, 1},           {{1, 1, 2, 0, 0}, 2.5},
      {{1, 1, 1.5, 0.5, 0.3}, 1},     {{1, 1, 1.5, 0.5, 0.3}, 3},
      {{0.5, 0.7, 0.9, 1.2, 0.3}, 2}, {{0.5, 0.7, 0.9, 1.2, 0.3}, 4},
      {{2, 1, 3, 0.5, 0.2}, 1},       {{2, 1, 3, 0.5, 0.2}, 2},
      {{1, 0.5, 1.48, 1, 0.5}, 4},    {{1, 0.5, 1.48, 1, 0.5}, 9},
      {{1, 2, 1.3, 0, 2}, 3},         {{1, 2, 1.3, 1, 2}, 3},
      {{1, 1, 1.74, 2, 2}, 5},        {{1, 1, 1.74, 2, 2}, 8},
      {{1, 0.25, 1.63, 2, 0.1}, 1},   {{1, 0.25, 1.63, 2, 0.1}, 0.5},
      {{1, 1.5, 1.58, 1, 0.5}, 1},    {{1, 1.5, 1.58, 1, 0.5}, 2},
      {{1, 1, 1.2, 0.5, 0.1}, 0.5},   {{0.5, 0.5, 0.8, 1, 3}, 8},
      {{1, 1, 1, 1, -0.5}, 2},        {{0.8, 1.2, 1.1, 0.6, 0.7}, 2},
  };
  for (const auto& c : cases) {
    const std::string name = "laplace" + label(c.p) + fmt(";s=%g", c.s);
    rec.guard(name, [&] {
      const double margin = laplace_margin(c.p, c.s);
      const LaplaceCheck r = laplace_numeric(c.p, c.s, 0.0, 20000, tol);
      rec.at_most(name, rel_err(r.numeric, r.closed_form), 1e-6, fmt("margin=%.17g", margin));
    });
  }
}

void check_weighted_derivative(Recorder& rec, double tol) {
  const OperatorParams sets[] = {
      {1, 1, 1.5, 0.5, 0.3}, {0.5, 0.7, 0.9, 1.2, 0.3}, {2, 1, 3.3, 1, 0.5},
      {1, 0.5, 1.48, 1, -0.7}, {1, 1.5, 1.7, 2, 1.2},
  };
  const double xs[] = {0.3, 0.7, 1.5, 2.5};
  for (const auto& p : sets) {
    for (double x : xs) {
      for (unsigned j = 1; j <= 2; ++j) {
        const std::string name = "weighted_derivative" + label(p) + fmt(";x=%g", x) +
                                 ";j=" + std::to_string(j);
        rec.guard(name, [&] {
          // Central differences at steps h and h/2, combined to cancel the h^2 term.
          auto fd = [&](double h) {
            const double f0 = weighted_ml(p, x, tol);
            const double fp = weighted_ml(p, x + h, tol);
            const double fm = weighted_ml(p, x - h, tol);
            return j == 1 ? (fp - fm) / (2 * h) : (fp - 2 * f0 + fm) / (h * h);
          };
          const double h = (j == 1 ? 1e-3 : 4e-3) * x;
          const double fd_value = (4 * fd(h / 2) - fd(h)) / 3;
          rec.at_most(name, rel_err(ml_weighted_derivative(p, x, j, tol), fd_value), 1e-5);
        });
      }
    }
  }
}

// Max |D(P f) - f| over nodes that are stencil-safe and at least a tenth of the interval
// away from the left end; the boundary layer at the left end does not shrink with h.
struct LeftInverseError {
  double error = 0.0;
  double rounding_floor = 0.0;  ///< error level an m-th difference of the data cannot beat
};

LeftInverseError left_inverse_error(const OperatorParams& p, const Interval& iv, std::size_t n,
                                    const std::function<double(double)>& f, double tol) {
  const SampledFunction fs = SampledFunction::sample(iv, n, f);
  const SampledFunction pf(iv, prabhakar_integral_grid(p, fs, tol));
  const DerivativeGrid d = prabhakar_derivative_grid(p, pf, tol);
  LeftInverseError out;
  for (std::size_t i = d.first; i <= d.last; ++i) {
    if (fs.node(i) - iv.a() < 0.1 * iv.length()) continue;
    out.error = std::max(out.error, std::abs(d.values[i] - fs[i]));
  }
  double scale = 1.0;
  for (double v : pf.values()) scale = std::max(scale, std::abs(v));
  const double steps = iv.length() / pf.h();
  out.rounding_floor = 4 * std::numeric_limits<double>::epsilon() * scale *
                       std::pow(steps, derivative_count(p));
  return out;
}

void check_left_inverse(Recorder& rec, double tol) {
  const OperatorParams sets[] = {
      {1, 1, 1.5, 0.7, 0.4}, {0.5, 0.7, 0.9, 1.2, 0.3}, {1, 1, 1.9, 0.5, 0.5},
      {1, 1, 1.2, 1, 1},     {2, 1, 3, 0.5, 0.2},       OperatorParams::classical(),
  };
  struct Fn {
    const char* name;
    std::function<double(double)> f;
  };
  const Fn fns[] = {{"1", [](double) { return 1.0; }},
                    {"t", [](double t) { return t; }},
                    {"sin", [](double t) { return std::sin(t); }}};
  const Interval iv(0, 1);
  for (const auto& p : sets) {
    for (const auto& fn : fns) {
      const std::string name = "left_inverse" + label(p) + ";f=" + fn.name;
      rec.guard(name, [&] {
        const auto e64 = left_inverse_error(p, iv, 64, fn.f, tol);
        const auto e128 = left_inverse_error(p, iv, 128, fn.f, tol);
        // Errors already at rounding level cannot halve further.
        const bool exact = e64.error <= e64.rounding_floor && e128.error <= e128.rounding_floor;
        const double ratio = exact ? INFINITY : e64.error / e128.error;
        char detail[96];
        std::snprintf(detail, sizeof detail, "err64=%.3e err128=%.3e", e64.error, e128.error);
        rec.at_least(name, ratio, 2.0, detail);
      });
    }
  }
}

void check_green(Recorder& rec, const std::vector<ValidationCase>& cases, double tol,
                 unsigned threads) {
  constexpr std::size_t n = 128;
  for (const auto& c : cases) {
    const std::string tag = label(c.params, c.interval);
    rec.guard("green" + tag, [&] {
      const GreenGrid g = green_scan(c.params, c.interval, n, tol, threads);
      rec.at_least("green_nonnegative" + tag, g.min_entry, -1e-12);

      double column_offset = 0.0;
      for (std::size_t j = 1; j < n; ++j) {
        const double d = std::abs(static_cast<double>(g.column_argmax[j]) - static_cast<double>(j));
        column_offset = std::max(column_offset, d);
      }
      rec.at_most("green_column_argmax" + tag, column_offset, 1.0);
      rec.at_most("green_diagonal_argmax" + tag,
                  std::abs(static_cast<double>(g.diagonal_argmax) - static_cast<double>(n / 2)),
                  1.0);

      const GreenMaximum m = green_max_closed_form(c.params, c.interval, tol);
      rec.at_most("green_max_closed_form" + tag, rel_err(m.value, g.max_entry), 1e-8);

      const double bound = lyapunov_bound(c.params, c.interval, tol);
      rec.at_most("reciprocity" + tag, std::abs(bound * m.value - 1.0), 1e-12);
    });
  }
}

void check_fredholm(Recorder& rec, const std::vector<ValidationCase>& cases, double tol,
                    unsigned threads) {
  for (const auto& c : cases) {
    const std::string name = "fredholm_soundness" + label(c.params, c.interval);
    rec.guard(name, [&] {
      const double lambda = critical_constant_q(c.params, c.interval, 128, tol, threads);
      const double bound = lyapunov_bound(c.params, c.interval, tol);
      rec.at_least(name, lambda * c.interval.length(), bound, fmt("bound=%.17g", bound));
    });
  }
  rec.guard("classical_dirichlet_eigenvalue", [&] {
    const double lambda =
        critical_constant_q(OperatorParams::classical(), Interval(0, 1), 128, tol, threads);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    rec.at_most("classical_dirichlet_eigenvalue", std::abs(lambda - pi2), 1e-3,
                fmt("lambda=%.17g", lambda));
  });
}

void check_residual(Recorder& rec, double tol) {
  const OperatorParams p = OperatorParams::classical();
  const Interval iv(0, 1);
  const double pi = std::numbers::pi;
  auto res = [&](std::size_t n) {
    const auto q = SampledFunction::sample(iv, n, [&](double) { return pi * pi; });
    const auto y = SampledFunction::sample(iv, n, [&](double t) { return std::sin(pi * t); });
    return residual(p, iv, q, y, n, tol);
  };
  rec.guard("equivalence_residual", [&] {
    const double r64 = res(64);
    const double r128 = res(128);
    const double r256 = res(256);
    rec.at_most("equivalence_residual_n128", r128, 1e-2);
    rec.at_least("equivalence_residual_order_64_128", std::log2(r64 / r128), 1.0,
                 fmt("r64=%.3e", r64));
    rec.at_least("equivalence_residual_order_128_256", std::log2(r128 / r256), 1.0,
                 fmt("r256=%.3e", r256));
  });

  // Nystrom eigenpairs against the differential form, away from the left boundary layer.
  for (const OperatorParams& q : {OperatorParams{1, 1, 1.5, 1, 1}, OperatorParams{0.5, 0.5, 0.8, 1, 3}}) {
    const std::string name = "eigen_residual_order" + label(q);
    rec.guard(name, [&] {
      auto res = [&](std::size_t n) {
        const auto one = SampledFunction::sample(iv, n, [](double) { return 1.0; });
        const FredholmSystem sys = assemble(q, iv, one, n, tol);
        return eigen_residual(q, sys, one, spectral_radius(sys), tol, 0.1);
      };
      const double r128 = res(128);
      const double r256 = res(256);
      rec.at_least(name, std::log2(r128 / r256), 1.0, fmt("r256=%.3e", r256));
    });
  }
}

}  // namespace

std::size_t VerifyReport::violation_count() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

std::vector<ValidationCase> green_validation_cases() {
  return {
      {OperatorParams::classical(), Interval(0, 1)},
      {{1, 1, 1.5, 1, 1}, Interval(0, 1)},
      {{1, 1, 1.5, 1, 5}, Interval(0.5, 1.5)},
      {{0.5, 0.5, 0.8, 1, 3}, Interval(0, 1)},
      {{1, 0.5, 1.48, 1, 0.5}, Interval(-1, 1.5)},
      {{2, 1, 3.2, 1, 0.5}, Interval(0, 2)},
      {{1, 2, 1.3, 0, 2}, Interval(0, 1)},
      {{1, 1, 1.74, 2, 2}, Interval(0, 1)},
      {{1, 0.25, 1.63, 2, 0.1}, Interval(1, 3)},
      {{1, 1.5, 1.58, 1, 0.5}, Interval(0, 1)},
      {{0.5, 0.5, 0.75, 0.25, 1}, Interval(0, 1)},
      {{1, 1, 1.2, 0.5, 0.1}, Interval(-2, 2)},
      {{1, 1, 1.9, 0.5, 0.5}, Interval(0, 3)},
  };
}

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  Recorder rec(report.checks);
  const auto cases = green_validation_cases();
  check_classical_bound(rec, options.tol);
  check_exponential(rec, options.tol);
  check_laplace(rec, options.tol);
  check_weighted_derivative(rec, options.tol);
  check_left_inverse(rec, options.tol);
  check_green(rec, cases, options.tol, options.threads);
  check_fredholm(rec, cases, options.tol, options.threads);
  check_residual(rec, options.tol);
  return report;
}

namespace {

std::string check_json(const Check& c) {
  io::JsonObject o;
  o.add("name", c.name)
      .add("passed", c.passed)
      .add("observed", c.observed)
      .add("threshold", c.threshold)
      .add("relation", c.relation)
      .add("detail", c.detail);
  return o.str();
}

}  // namespace

std::string to_json(const VerifyReport& report) {
  std::vector<std::string> all;
  std::vector<std::string> violations;
  for (const auto& c : report.checks) {
    all.push_back(check_json(c));
    if (!c.passed) violations.push_back(all.back());
  }
  io::JsonObject o;
  o.add("passed", report.passed())
      .add("check_count", report.checks.size())
      .add("violation_count", report.violation_count())
      .add_raw("violations", io::array(violations))
      .add_raw("checks", io::array(all));
  return o.str();
}

}  // namespace kprab
