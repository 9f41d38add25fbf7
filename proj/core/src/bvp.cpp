#include "kprab/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "green_lattice.hpp"
#include "kprab/error.hpp"
#include "kprab/fracops.hpp"
#include "kprab/io.hpp"
#include "parallel.hpp"

namespace kprab {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

SampledFunction on_grid(const SampledFunction& f, const Interval& iv, std::size_t n) {
  if (f.n() == n) return f;
  return SampledFunction::sample(iv, n, [&](double t) { return f.at(t); });
}

}  // namespace

double FredholmSystem::node(std::size_t i) const {
  return SampledFunction::grid_node(interval, n, i);
}

FredholmSystem assemble(const OperatorParams& p, const Interval& iv, const SampledFunction& q,
                        std::size_t n, double tol, unsigned threads) {
  validate_bvp(p);
  if (!(q.interval() == iv)) throw DomainError("q is sampled on a different interval");
  if (n < 16 || n > kMaxNystromN || n % 2 != 0) {
    throw DomainError("Nystrom grid needs even n in [16, " + std::to_string(kMaxNystromN) +
                      "]; got " + std::to_string(n));
  }
  const double h = iv.length() / static_cast<double>(n);
  std::vector<double> wq(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double w = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    const double qj = q.n() == n ? q[j] : q.at(SampledFunction::grid_node(iv, n, j));
    wq[j] = w * h / 3.0 * qj;
  }
  const detail::GreenLattice lattice(p, iv, n, tol, threads);
  FredholmSystem sys{iv, n, std::vector<double>((n + 1) * (n + 1))};
  detail::parallel_for(n + 1, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j <= n; ++j) sys.matrix[i * (n + 1) + j] = lattice(i, j) * wq[j];
  });
  return sys;
}

EigenReport spectral_radius(const FredholmSystem& sys, std::size_t max_iter, double tol) {
  const std::size_t dim = sys.n + 1;
  std::vector<double> v(dim, 1.0), w(dim);
  EigenReport rep;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < dim; ++i) {
      double acc = 0.0;
      const double* row = &sys.matrix[i * dim];
      for (std::size_t j = 0; j < dim; ++j) acc += row[j] * v[j];
      w[i] = acc;
    }
    // Signed eigenvalue estimate from the entry of largest magnitude.
    std::size_t arg = 0;
    for (std::size_t i = 1; i < dim; ++i) {
      if (std::abs(w[i]) > std::abs(w[arg])) arg = i;
    }
    const double lambda = v[arg] != 0.0 ? w[arg] / v[arg] : 0.0;
    double res = 0.0;
    for (std::size_t i = 0; i < dim; ++i) res = std::max(res, std::abs(w[i] - lambda * v[i]));
    rep.iterations = it;
    rep.residual = res;
    rep.spectral_radius = std::abs(lambda);
    const double norm = inf_norm(w);
    if (norm == 0.0) {
      rep.converged = true;
      rep.eigenvector = v;
      break;
    }
    const double sign = w[arg] < 0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < dim; ++i) v[i] = sign * w[i] / norm;
    if (res <= tol) {
      rep.converged = true;
      break;
    }
  }
  if (rep.eigenvector.empty()) rep.eigenvector = v;
  return rep;
}

double critical_constant_q(const OperatorParams& p, const Interval& iv, std::size_t n,
                           double tol, unsigned threads) {
  const auto one = SampledFunction::sample(iv, n, [](double) { return 1.0; });
  const auto rep = spectral_radius(assemble(p, iv, one, n, tol, threads));
  if (!rep.converged) throw ConvergenceError("power iteration did not converge", rep.spectral_radius, rep.iterations);
  if (rep.spectral_radius == 0.0) throw DomainError("spectral radius is zero");
  return 1.0 / rep.spectral_radius;
}

double residual(const OperatorParams& p, const Interval& iv, const SampledFunction& q,
                const SampledFunction& y, std::size_t n, double tol, double boundary_margin) {
  validate_bvp(p);
  if (!(q.interval() == iv) || !(y.interval() == iv)) {
    throw DomainError("q and y must be sampled on the problem interval");
  }
  const auto yg = on_grid(y, iv, n);
  const auto qg = on_grid(q, iv, n);
  const auto d = prabhakar_derivative_grid(p, yg, tol);
  double worst = 0.0;
  for (std::size_t i = d.first; i <= d.last; ++i) {
    if (yg.node(i) - iv.a() < boundary_margin * iv.length()) continue;
    worst = std::max(worst, std::abs(d.values[i] + qg[i] * yg[i]));
  }
  return worst;
}

double eigen_residual(const OperatorParams& p, const FredholmSystem& sys,
                      const SampledFunction& q, const EigenReport& r, double tol,
                      double boundary_margin) {
  if (r.eigenvector.size() != sys.n + 1) throw DomainError("eigenvector does not match the system");
  if (!(r.spectral_radius > 0.0)) throw DomainError("spectral radius is zero");
  const std::size_t half = sys.n / 2;
  std::vector<double> y(half + 1);
  for (std::size_t i = 0; i <= half; ++i) y[i] = r.eigenvector[2 * i];
  const double scale = 1.0 / r.spectral_radius;
  const auto qs = SampledFunction::sample(sys.interval, half, [&](double t) { return scale * q.at(t); });
  return residual(p, sys.interval, qs, SampledFunction(sys.interval, std::move(y)), half, tol,
                  boundary_margin);
}

std::string to_json(const EigenReport& r) {
  std::vector<std::string> vec;
  vec.reserve(r.eigenvector.size());
  for (double x : r.eigenvector) vec.push_back(io::number(x));
  return io::JsonObject{}
      .add("spectral_radius", r.spectral_radius)
      .add("iterations", r.iterations)
      .add("converged", r.converged)
      .add("residual", r.residual)
      .add_raw("eigenvector", io::array(vec))
      .str();
}

void write_eigenvector_csv(std::ostream& os, const FredholmSystem& sys, const EigenReport& r) {
  os << "t,y\n";
  for (std::size_t i = 0; i < r.eigenvector.size(); ++i) {
    os << io::number(sys.node(i)) << ',' << io::number(r.eigenvector[i]) << '\n';
  }
}

}  // namespace kprab
