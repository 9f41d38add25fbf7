#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cli/function_spec.hpp"
#include "kprab/bvp.hpp"
#include "kprab/error.hpp"
#include "kprab/fracops.hpp"
#include "kprab/green.hpp"
#include "kprab/io.hpp"
#include "kprab/lyapunov.hpp"
#include "kprab/special.hpp"
#include "kprab/verify.hpp"

namespace kprab::cli {

namespace {

constexpr const char* kParamUnits =
    "Units: k, rho, beta, gamma, omega are dimensionless. Points t, u, x and the interval "
    "ends a < b share one length unit; --tol is a relative series tolerance (default 1e-14, "
    "overridden by the KPRAB_TOL environment variable).";

constexpr const char* kOperatorGate =
    "Domain gate: k > 0, rho > 0, beta > 0, gamma >= 0, all finite.";

constexpr const char* kBvpGate =
    "Domain gate (strict): k > 0, rho > 0, gamma >= 0, omega >= 0 and 1 < beta/k <= 2. "
    "--exploratory drops the sign requirements on gamma and omega; results outside the "
    "strict gate carry no positivity guarantee.";

struct Config {
  OperatorParams p = OperatorParams::classical();
  bool classical = false;
  double a = 0.0;
  double b = 1.0;
  double tol = kDefaultTol;
  std::size_t n = 0;
  unsigned threads = 1;
  std::string out;
  std::string format = "json";
  bool exploratory = false;

  double z = 0.0;
  double x = 0.0;
  std::optional<double> at;
  double t = 0.0;
  double u = 0.0;
  double s = 1.0;
  double horizon = 0.0;
  std::size_t subdiv = 20000;
  double check_tol = 1e-6;
  std::string f = "const:1";
  std::string q = "const:1";
  std::size_t max_iter = 100000;

  DomainGate gate() const { return exploratory ? DomainGate::exploratory : DomainGate::strict; }
  Interval interval() const { return Interval(a, b); }
  std::size_t grid(std::size_t fallback) const { return n == 0 ? fallback : n; }
};

// One row of named scalars, rendered as a flat JSON object or a two-line CSV.
class Record {
 public:
  Record& num(std::string key, double v) { return put(std::move(key), io::number(v), io::number(v)); }
  Record& integer(std::string key, long long v) {
    return put(std::move(key), std::to_string(v), std::to_string(v));
  }
  Record& flag(std::string key, bool v) {
    return put(std::move(key), v ? "true" : "false", v ? "true" : "false");
  }
  Record& text(std::string key, const std::string& v) {
    return put(std::move(key), io::quoted(v), csv_field(v));
  }

  std::string render(const std::string& format) const {
    std::string out;
    if (format == "csv") {
      for (std::size_t i = 0; i < fields_.size(); ++i) out += (i ? "," : "") + fields_[i].key;
      out += '\n';
      for (std::size_t i = 0; i < fields_.size(); ++i) out += (i ? "," : "") + fields_[i].csv;
      return out + '\n';
    }
    out = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      out += (i ? "," : "") + io::quoted(fields_[i].key) + ":" + fields_[i].json;
    }
    return out + "}\n";
  }

  static std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  }

 private:
  struct Field {
    std::string key;
    std::string json;
    std::string csv;
  };
  Record& put(std::string key, std::string json, std::string csv) {
    fields_.push_back({std::move(key), std::move(json), std::move(csv)});
    return *this;
  }
  std::vector<Field> fields_;
};

std::string series_table(const std::vector<double>& t, const std::vector<double>& v,
                         const std::string& column, const std::string& format) {
  std::string out;
  if (format == "csv") {
    out = "t," + column + "\n";
    for (std::size_t i = 0; i < t.size(); ++i) out += io::number(t[i]) + "," + io::number(v[i]) + "\n";
    return out;
  }
  std::vector<std::string> ts;
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < t.size(); ++i) {
    ts.push_back(io::number(t[i]));
    vs.push_back(io::number(v[i]));
  }
  return io::JsonObject{}.add_raw("t", io::array(ts)).add_raw(column, io::array(vs)).str() + "\n";
}

// Output of one subcommand: the serialized artifact and the exit status it implies.
struct Outcome {
  std::string body;
  int status = kExitOk;
};

void add_params(CLI::App* sub, Config& cfg) {
  auto* k = sub->add_option("--k", cfg.p.k, "k > 0 (k-Gamma deformation)")->capture_default_str();
  auto* rho = sub->add_option("--rho", cfg.p.rho, "rho > 0")->capture_default_str();
  auto* beta = sub->add_option("--beta", cfg.p.beta, "beta > 0; operator order is beta/k")
                   ->capture_default_str();
  auto* gamma = sub->add_option("--gamma", cfg.p.gamma, "gamma >= 0")->capture_default_str();
  auto* omega = sub->add_option("--omega", cfg.p.omega, "omega, real")->capture_default_str();
  sub->add_flag("--classical", cfg.classical, "shorthand for k=1 rho=1 beta=2 gamma=0 omega=0")
      ->excludes(k)
      ->excludes(rho)
      ->excludes(beta)
      ->excludes(gamma)
      ->excludes(omega);
}

void add_interval(CLI::App* sub, Config& cfg) {
  sub->add_option("--a", cfg.a, "left end of [a,b]")->capture_default_str();
  sub->add_option("--b", cfg.b, "right end of [a,b], b > a")->capture_default_str();
}

void add_grid(CLI::App* sub, Config& cfg, std::size_t fallback, const std::string& what) {
  sub->add_option("--n", cfg.n,
                  "number of uniform grid cells on [a,b]" + what + " (default " +
                      std::to_string(fallback) + ")")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
}

void add_threads(CLI::App* sub, Config& cfg) {
  sub->add_option("--threads", cfg.threads, "worker threads; 1 gives reproducible output")
      ->capture_default_str()
      ->check(CLI::Range(1u, 256u));
}

void add_gate(CLI::App* sub, Config& cfg) {
  sub->add_flag("--exploratory", cfg.exploratory,
                "allow negative gamma or omega (order gate 1 < beta/k <= 2 still applies)");
}

struct Command {
  CLI::App* app;
  std::function<Outcome(const Config&)> body;
};

Outcome run_ml(const Config& c) {
  const SeriesResult r = ml_k(c.p, c.z, c.tol);
  return {Record{}
              .num("z", c.z)
              .num("value", r.value)
              .integer("terms_used", static_cast<long long>(r.terms_used))
              .num("tail_bound", r.tail_bound)
              .render(c.format)};
}

Outcome run_gammak(const Config& c) {
  Record rec;
  rec.num("x", c.x).num("k", c.p.k);
  const double log_value = log_k_gamma(c.x, c.p.k);
  double value = INFINITY;
  try {
    value = k_gamma(c.x, c.p.k);
  } catch (const OverflowError&) {
  }
  rec.num("value", value).num("log_value", log_value);
  return {rec.render(c.format)};
}

Outcome run_kernel(const Config& c) {
  return {Record{}.num("t", c.t).num("value", prabhakar_kernel(c.p, c.t, c.tol)).render(c.format)};
}

Outcome run_integral(const Config& c) {
  const Interval iv = c.interval();
  const SampledFunction f = sample_spec(c.f, iv, c.grid(64));
  if (c.at) {
    return {Record{}.num("x", *c.at).num("value", prabhakar_integral(c.p, f, *c.at, c.tol))
                .render(c.format)};
  }
  std::vector<double> t(f.n() + 1);
  for (std::size_t i = 0; i <= f.n(); ++i) t[i] = f.node(i);
  return {series_table(t, prabhakar_integral_grid(c.p, f, c.tol), "value", c.format)};
}

Outcome run_derivative(const Config& c) {
  const Interval iv = c.interval();
  const SampledFunction f = sample_spec(c.f, iv, c.grid(64));
  if (c.at) {
    return {Record{}.num("x", *c.at).num("value", prabhakar_derivative(c.p, f, *c.at, c.tol))
                .render(c.format)};
  }
  const DerivativeGrid d = prabhakar_derivative_grid(c.p, f, c.tol);
  std::vector<double> t;
  std::vector<double> v;
  for (std::size_t i = d.first; i <= d.last; ++i) {
    t.push_back(f.node(i));
    v.push_back(d.values[i]);
  }
  return {series_table(t, v, "value", c.format)};
}

Outcome run_laplace(const Config& c) {
  const LaplaceCheck r = laplace_numeric(c.p, c.s, c.horizon, c.subdiv, c.tol);
  const double rel = std::abs(r.numeric - r.closed_form) / std::abs(r.closed_form);
  const bool ok = rel <= c.check_tol;
  return {Record{}
              .num("s", r.s)
              .num("numeric", r.numeric)
              .num("closed_form", r.closed_form)
              .num("relative_error", rel)
              .num("convergence_margin", r.convergence_margin)
              .num("tail_estimate", r.tail_estimate)
              .flag("slow_convergence", r.slow_convergence)
              .flag("passed", ok)
              .render(c.format),
          ok ? kExitOk : kExitVerificationFailed};
}

Outcome run_green(const Config& c) {
  const double g = green_eval(c.p, c.interval(), c.t, c.u, c.tol, c.gate());
  return {Record{}.num("t", c.t).num("u", c.u).num("G", g).render(c.format)};
}

Outcome run_green_scan(const Config& c) {
  const Interval iv = c.interval();
  const GreenGrid g = green_scan(c.p, iv, c.grid(64), c.tol, c.threads, c.gate());
  if (c.format == "csv") {
    std::ostringstream os;
    write_csv(os, g);
    return {os.str()};
  }
  const GreenMaximum m = green_max_closed_form(c.p, iv, c.tol, c.gate());
  std::vector<std::string> argmax;
  for (std::size_t i : g.column_argmax) argmax.push_back(std::to_string(i));
  return {io::JsonObject{}
              .add("n", g.n)
              .add("min_entry", g.min_entry)
              .add("max_entry", g.max_entry)
              .add("diagonal_argmax", g.diagonal_argmax)
              .add("diagonal_argmax_t", g.node(g.diagonal_argmax))
              .add("closed_form_max", m.value)
              .add("closed_form_location", m.location)
              .add_raw("column_argmax", io::array(argmax))
              .str() +
          "\n"};
}

Outcome run_bound(const Config& c) {
  const Interval iv = c.interval();
  const GreenMaximum m = green_max_closed_form(c.p, iv, c.tol, c.gate());
  return {Record{}
              .num("bound", lyapunov_bound(c.p, iv, c.tol, c.gate()))
              .num("green_max", m.value)
              .num("green_max_location", m.location)
              .render(c.format)};
}

Outcome run_certify(const Config& c) {
  const Interval iv = c.interval();
  const BoundReport r = certify(c.p, iv, sample_spec(c.q, iv, c.grid(512)), c.tol);
  if (c.format == "csv") {
    return {Record{}
                .num("bound", r.bound)
                .num("q_integral", r.q_integral)
                .num("margin", r.margin)
                .text("verdict", std::string(to_string(r.verdict)))
                .render("csv")};
  }
  return {to_json(r) + "\n"};
}

Outcome run_eigen(const Config& c) {
  const Interval iv = c.interval();
  const std::size_t n = c.grid(64);
  const FredholmSystem sys = assemble(c.p, iv, sample_spec(c.q, iv, n), n, c.tol, c.threads);
  const EigenReport r = spectral_radius(sys, c.max_iter);
  std::string body;
  if (c.format == "csv") {
    std::ostringstream os;
    write_eigenvector_csv(os, sys, r);
    body = os.str();
  } else {
    body = to_json(r) + "\n";
  }
  return {body, r.converged ? kExitOk : kExitVerificationFailed};
}

Outcome run_critical_q(const Config& c) {
  const Interval iv = c.interval();
  const std::size_t n = c.grid(128);
  const double lambda = critical_constant_q(c.p, iv, n, c.tol, c.threads);
  const double bound = lyapunov_bound(c.p, iv, c.tol);
  return {Record{}
              .num("critical_q", lambda)
              .integer("n", static_cast<long long>(n))
              .num("q_integral", lambda * iv.length())
              .num("bound", bound)
              .num("margin", lambda * iv.length() - bound)
              .render(c.format)};
}

Outcome run_verify_all(const Config& c) {
  const VerifyReport r = run_verification({c.threads, c.tol});
  std::string body;
  if (c.format == "csv") {
    body = "name,passed,observed,relation,threshold,detail\n";
    for (const Check& k : r.checks) {
      body += Record::csv_field(k.name) + "," + (k.passed ? "true" : "false") + "," +
              io::number(k.observed) + "," + k.relation + "," + io::number(k.threshold) + "," +
              Record::csv_field(k.detail) + "\n";
    }
  } else {
    body = to_json(r) + "\n";
  }
  return {body, r.passed() ? kExitOk : kExitVerificationFailed};
}

std::optional<double> tolerance_from_env(std::string& problem) {
  const char* raw = std::getenv(kTolEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (*end != '\0' || !std::isfinite(v) || v <= 0) {
    problem = std::string(kTolEnv) + "='" + raw + "' must be a positive finite number";
    return std::nullopt;
  }
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  std::string env_problem;
  if (auto env_tol = tolerance_from_env(env_problem)) cfg.tol = *env_tol;
  if (!env_problem.empty()) {
    err << "error: " << env_problem << "\n";
    return kExitUsage;
  }

  CLI::App app{"k-Prabhakar operators, Green's functions and Lyapunov-type bounds", "kprab"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::vector<Command> commands;
  auto command = [&](const std::string& name, const std::string& about, const std::string& gate,
                     Outcome (*body)(const Config&)) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->footer(std::string(kParamUnits) + "\n" + gate);
    sub->add_option("--tol", cfg.tol, "relative series tolerance, > 0")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "write the result to this file instead of stdout");
    sub->add_option("--format", cfg.format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));
    commands.push_back({sub, body});
    return sub;
  };

  {
    auto* s = command("ml", "k-Mittag-Leffler function E^gamma_{k,rho,beta}(z)", kOperatorGate,
                      run_ml);
    add_params(s, cfg);
    s->add_option("--z", cfg.z, "argument z, real")->required();
  }
  {
    auto* s = command("gammak", "k-Gamma function Gamma_k(x) and its logarithm",
                      "Domain gate: x > 0, k > 0.", run_gammak);
    s->add_option("--k", cfg.p.k, "k > 0")->capture_default_str();
    s->add_option("--x", cfg.x, "argument x > 0")->required();
  }
  {
    auto* s = command("kernel", "Prabhakar kernel t^{beta/k-1}/k E(omega t^{rho/k}); 0 for t <= 0",
                      kOperatorGate, run_kernel);
    add_params(s, cfg);
    s->add_option("--t", cfg.t, "time t")->required();
  }
  for (auto [name, about, body] :
       {std::tuple{"integral", "k-Prabhakar integral of f sampled on [a,b]", &run_integral},
        std::tuple{"derivative",
                   "k-Prabhakar derivative of f sampled on [a,b] (reported on stencil-safe nodes)",
                   &run_derivative}}) {
    auto* s = command(name, about, kOperatorGate, body);
    add_params(s, cfg);
    add_interval(s, cfg);
    add_grid(s, cfg, 64, "");
    s->add_option("--f", cfg.f,
                  "function of t: const:V, poly:c0,c1,.., sin:w, cos:w, exp:w or csv:PATH "
                  "(header then t,value rows on a uniform grid)")
        ->capture_default_str();
    s->add_option_function<double>(
        "--x", [&cfg](double v) { cfg.at = v; }, "evaluate at this point only (a <= x <= b)");
  }
  {
    auto* s = command("laplace-check",
                      "compare numerical and closed-form Laplace transforms of the kernel; exit 1 "
                      "when the relative gap exceeds --check-tol",
                      std::string(kOperatorGate) +
                          " The closed form needs s > 0 and margin |omega k (k s)^{-rho/k}| < 1.",
                      run_laplace);
    add_params(s, cfg);
    s->add_option("--s", cfg.s, "transform variable s > 0, reciprocal time units")
        ->capture_default_str();
    s->add_option("--horizon", cfg.horizon, "quadrature cut-off in time units; 0 picks 40/s")
        ->capture_default_str();
    s->add_option("--subdiv", cfg.subdiv, "quadrature cells on [0, horizon]")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
    s->add_option("--check-tol", cfg.check_tol, "pass threshold for the relative gap")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }
  {
    auto* s = command("green", "Green's function G(t,u) of the two-point problem on [a,b]",
                      kBvpGate, run_green);
    add_params(s, cfg);
    add_interval(s, cfg);
    add_gate(s, cfg);
    s->add_option("--t", cfg.t, "a <= t <= b")->required();
    s->add_option("--u", cfg.u, "a <= u <= b")->required();
  }
  {
    auto* s = command("green-scan",
                      "G on the (n+1)^2 grid; csv gives t,u,G rows, json a summary of extrema",
                      kBvpGate, run_green_scan);
    add_params(s, cfg);
    add_interval(s, cfg);
    add_gate(s, cfg);
    add_grid(s, cfg, 64, ", n >= 8");
    add_threads(s, cfg);
  }
  {
    auto* s = command("bound", "Lyapunov constant 1 / max G for the interval [a,b]", kBvpGate,
                      run_bound);
    add_params(s, cfg);
    add_interval(s, cfg);
    add_gate(s, cfg);
  }
  {
    auto* s = command("certify",
                      "compare the integral of |q| over [a,b] with the Lyapunov constant",
                      kBvpGate, run_certify);
    add_params(s, cfg);
    add_interval(s, cfg);
    add_grid(s, cfg, 512, " used to integrate |q|");
    s->add_option("--q", cfg.q, "potential q(t), same syntax as --f of integral")
        ->capture_default_str();
  }
  {
    auto* s = command("eigen",
                      "dominant eigenpair of the Nystrom matrix of y = int G q y; exit 1 when "
                      "power iteration does not converge",
                      std::string(kBvpGate) + " Requires even n in [16, 512].", run_eigen);
    add_params(s, cfg);
    add_interval(s, cfg);
    add_grid(s, cfg, 64, "");
    add_threads(s, cfg);
    s->add_option("--q", cfg.q, "potential q(t), same syntax as --f of integral")
        ->capture_default_str();
    s->add_option("--max-iter", cfg.max_iter, "power iteration cap")->capture_default_str();
  }
  {
    auto* s = command("critical-q",
                      "smallest constant q admitting a nontrivial solution, units length^{-beta/k}",
                      std::string(kBvpGate) + " Requires even n in [16, 512].", run_critical_q);
    add_params(s, cfg);
    add_interval(s, cfg);
    add_grid(s, cfg, 128, "");
    add_threads(s, cfg);
  }
  {
    auto* s = command("verify-all",
                      "run every invariant check; prints all results with a violations list and "
                      "exits 1 if any check fails",
                      "No parameters: the sweep uses fixed parameter sets.", run_verify_all);
    add_threads(s, cfg);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    if (c.app->parsed()) chosen = &c;
  }
  if (cfg.classical) cfg.p = OperatorParams::classical();

  Outcome result;
  try {
    result = chosen->body(cfg);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }

  if (cfg.out.empty()) {
    out << result.body;
  } else {
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    file << result.body;
    if (!file) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return kExitUsage;
    }
  }
  return result.status;
}

}  // namespace kprab::cli
