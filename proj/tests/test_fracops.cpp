#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "kprab/error.hpp"
#include "kprab/fracops.hpp"
#include "oracles.hpp"

using kprab::Interval;
using kprab::OperatorParams;
using kprab::SampledFunction;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST(Kernel, MatchesSeriesOracle) {
  oracle::Gen gen(21);
  for (int i = 0; i < 200; ++i) {
    const OperatorParams p = gen.any_operator();
    const double t = gen.uniform(0.01, 2.0);
    // Negative omega sums alternating terms; measure against the all-positive series.
    const double scale = oracle::kernel({p.k, p.rho, p.beta, p.gamma, std::abs(p.omega)}, t);
    EXPECT_LE(std::abs(kprab::prabhakar_kernel(p, t) - oracle::kernel(p, t)), 1e-13 * scale)
        << p.to_string();
  }
}

TEST(Kernel, VanishesForNonPositiveTime) {
  const OperatorParams p{1, 1, 1.5, 1, 1};
  EXPECT_EQ(kprab::prabhakar_kernel(p, 0.0), 0.0);
  EXPECT_EQ(kprab::prabhakar_kernel(p, -1.0), 0.0);
}

TEST(Kernel, RiemannLiouvilleReduction) {
  // gamma = 0: t^{beta/k-1} / (k Γ_k(beta))
  const OperatorParams p{1, 0.7, 1.6, 0, 3.0};
  for (double t : {0.1, 0.5, 2.0}) {
    EXPECT_LT(rel(kprab::prabhakar_kernel(p, t), std::pow(t, 0.6) / std::tgamma(1.6)), 1e-14);
  }
}

TEST(Integral, ExactForPiecewiseLinearData) {
  oracle::Gen gen(22);
  for (int i = 0; i < 40; ++i) {
    const OperatorParams p = gen.any_operator();
    const Interval iv = gen.interval();
    const double c0 = gen.uniform(-2, 2);
    const double c1 = gen.uniform(-2, 2);
    auto f = [&](double t) { return c0 + c1 * (t - iv.a()); };
    const SampledFunction fs = SampledFunction::sample(iv, 16, f);
    const double x = iv.a() + gen.uniform(0.1, 1.0) * iv.length();
    const double want = oracle::prabhakar_integral(p, f, iv.a(), x);
    const double scale = oracle::prabhakar_integral(
        p, [&](double t) { return std::abs(c0) + std::abs(c1 * (t - iv.a())); }, iv.a(), x);
    EXPECT_LE(std::abs(kprab::prabhakar_integral(p, fs, x) - want), 1e-10 * scale)
        << p.to_string() << " x=" << x;
  }
}

TEST(Integral, OfOneIsShiftedSeries) {
  // P[1](x) = (x-a)^{beta/k} E^gamma_{k,rho,beta+k}(omega (x-a)^{rho/k})
  oracle::Gen gen(23);
  for (int i = 0; i < 40; ++i) {
    const OperatorParams p = gen.any_operator();
    const Interval iv = gen.interval();
    const SampledFunction one = SampledFunction::sample(iv, 8, [](double) { return 1.0; });
    const double d = iv.length();
    const OperatorParams shifted{p.k, p.rho, p.beta + p.k, p.gamma, p.omega};
    const double z = p.omega * std::pow(d, p.rho / p.k);
    const double want = std::pow(d, p.beta / p.k) * oracle::ml(shifted, z);
    const double scale = std::pow(d, p.beta / p.k) * oracle::ml(shifted, std::abs(z));
    EXPECT_LE(std::abs(kprab::prabhakar_integral(p, one, iv.b()) - want), 1e-12 * scale)
        << p.to_string();
  }
}

TEST(Integral, RiemannLiouvilleOfPower) {
  // gamma = 0, k = 1: I^alpha t = t^{alpha+1} / Γ(alpha+2)
  const OperatorParams p{1, 1, 1.5, 0, 0};
  const SampledFunction t = SampledFunction::sample(Interval(0, 2), 32, [](double s) { return s; });
  for (double x : {0.25, 1.0, 2.0}) {
    EXPECT_LT(rel(kprab::prabhakar_integral(p, t, x), std::pow(x, 2.5) / std::tgamma(3.5)), 1e-13);
  }
}

TEST(Integral, VanishesAtLeftEnd) {
  const SampledFunction f = SampledFunction::sample(Interval(1, 2), 8, [](double t) { return t; });
  EXPECT_EQ(kprab::prabhakar_integral({1, 1, 1.5, 1, 1}, f, 1.0), 0.0);
}

TEST(Integral, SecondOrderForSmoothData) {
  const OperatorParams p{0.5, 0.7, 0.9, 1.2, 0.3};
  const Interval iv(0, 1);
  auto f = [](double t) { return std::sin(3 * t); };
  const double want = oracle::prabhakar_integral(p, f, 0, 1);
  double prev = 0;
  for (std::size_t n : {16, 32, 64, 128}) {
    const double err = std::abs(kprab::prabhakar_integral(p, SampledFunction::sample(iv, n, f), 1.0) - want);
    if (prev > 0) EXPECT_GT(prev / err, 3.5) << n;
    prev = err;
  }
}

TEST(Integral, GridAgreesWithPointwise) {
  oracle::Gen gen(24);
  for (int i = 0; i < 10; ++i) {
    const OperatorParams p = gen.any_operator();
    const Interval iv = gen.interval();
    const SampledFunction f = SampledFunction::sample(iv, 40, [](double t) { return std::cos(t); });
    const auto grid = kprab::prabhakar_integral_grid(p, f);
    ASSERT_EQ(grid.size(), 41u);
    for (std::size_t j = 0; j <= 40; ++j) {
      const double point = kprab::prabhakar_integral(p, f, f.node(j));
      EXPECT_LE(std::abs(grid[j] - point), 1e-13 * std::max(1.0, std::abs(point)));
    }
  }
}

TEST(Integral, Linear) {
  oracle::Gen gen(25);
  const OperatorParams p{1.2, 0.9, 1.4, 0.8, -0.6};
  const Interval iv(0, 1.5);
  const auto f = SampledFunction::sample(iv, 20, [](double t) { return std::exp(t); });
  const auto g = SampledFunction::sample(iv, 20, [](double t) { return t * t - 1; });
  const double a = 1.7;
  const double b = -0.4;
  std::vector<double> combo(21);
  for (std::size_t j = 0; j <= 20; ++j) combo[j] = a * f[j] + b * g[j];
  const SampledFunction h(iv, combo);
  for (double x : {0.3, 1.1, 1.5}) {
    const double lhs = kprab::prabhakar_integral(p, h, x);
    const double rhs = a * kprab::prabhakar_integral(p, f, x) + b * kprab::prabhakar_integral(p, g, x);
    EXPECT_NEAR(lhs, rhs, 1e-13 * std::abs(rhs));
  }
}

TEST(Integral, RejectsPointOutsideInterval) {
  const auto f = SampledFunction::sample(Interval(0, 1), 8, [](double) { return 1.0; });
  EXPECT_THROW((void)kprab::prabhakar_integral({1, 1, 1.5, 0, 0}, f, 1.5), kprab::DomainError);
}

TEST(Derivative, RiemannLiouvilleOfLinear) {
  // D^{1.5} t = t^{-1/2} / Γ(1/2)
  const OperatorParams p{1, 1, 1.5, 0, 0};
  const auto t = SampledFunction::sample(Interval(0, 1), 128, [](double s) { return s; });
  for (double x : {0.25, 0.5, 0.75}) {
    EXPECT_LT(rel(kprab::prabhakar_derivative(p, t, x), 1 / std::sqrt(x * std::numbers::pi)), 1e-6);
  }
}

TEST(Derivative, ClassicalIsSecondDerivative) {
  const OperatorParams p = OperatorParams::classical();
  const auto f = SampledFunction::sample(Interval(0, 1), 128, [](double s) { return s * s * s; });
  for (double x : {0.3, 0.5, 0.7}) EXPECT_NEAR(kprab::prabhakar_derivative(p, f, x), 6 * x, 1e-3);
}

TEST(Derivative, LeftInverseAtInteriorNodes) {
  oracle::Gen gen(26);
  for (int i = 0; i < 8; ++i) {
    const OperatorParams p = gen.bvp_operator();
    const Interval iv(0, 1);
    auto f = [](double t) { return 1 + std::sin(2 * t); };
    const auto fs = SampledFunction::sample(iv, 128, f);
    const SampledFunction pf(iv, kprab::prabhakar_integral_grid(p, fs));
    const auto d = kprab::prabhakar_derivative_grid(p, pf);
    for (std::size_t j = d.first; j <= d.last; ++j) {
      if (fs.node(j) < 0.2) continue;
      EXPECT_NEAR(d.values[j], fs[j], 2e-3) << p.to_string() << " t=" << fs.node(j);
    }
  }
}

TEST(Derivative, GridMarksUnreachableNodes) {
  const OperatorParams p{1, 1, 1.5, 1, 1};
  const auto f = SampledFunction::sample(Interval(0, 1), 32, [](double t) { return t; });
  const auto d = kprab::prabhakar_derivative_grid(p, f);
  const std::size_t reach = kprab::derivative_reach(p);
  EXPECT_EQ(d.first, reach);
  EXPECT_EQ(d.last, 32 - reach);
  EXPECT_TRUE(std::isnan(d.values[0]));
  EXPECT_TRUE(std::isnan(d.values[32]));
  for (std::size_t j = d.first; j <= d.last; ++j) {
    EXPECT_NEAR(d.values[j], kprab::prabhakar_derivative(p, f, f.node(j)), 1e-11);
  }
  EXPECT_THROW((void)kprab::prabhakar_derivative(p, f, 0.0), kprab::DomainError);
}

TEST(Laplace, ClassicalClosedForm) {
  const OperatorParams p = OperatorParams::classical();
  for (double s : {0.5, 1.0, 3.0}) {
    EXPECT_LT(rel(kprab::laplace_closed_form_integral(p, s), 1 / (s * s)), 1e-15);
  }
}

TEST(Laplace, NumericMatchesClosedForm) {
  oracle::Gen gen(27);
  int tested = 0;
  while (tested < 12) {
    const OperatorParams p = gen.any_operator();
    const double s = gen.uniform(0.5, 6);
    if (kprab::laplace_margin(p, s) >= 0.5 || p.beta / p.k < 0.3) continue;
    const auto r = kprab::laplace_numeric(p, s);
    EXPECT_LT(rel(r.numeric, r.closed_form), 1e-6) << p.to_string() << " s=" << s;
    EXPECT_FALSE(r.slow_convergence);
    ++tested;
  }
}

TEST(Laplace, MarginGates) {
  const OperatorParams p{1, 1, 1.5, 1, 2};
  EXPECT_DOUBLE_EQ(kprab::laplace_margin(p, 4.0), 0.5);
  EXPECT_TRUE(kprab::laplace_numeric(p, 3.0).slow_convergence);
  EXPECT_THROW((void)kprab::laplace_closed_form_integral(p, 2.0), kprab::DomainError);
  EXPECT_THROW((void)kprab::laplace_numeric(p, 1.0), kprab::DomainError);
  EXPECT_THROW((void)kprab::laplace_numeric(p, -1.0), kprab::DomainError);
}
