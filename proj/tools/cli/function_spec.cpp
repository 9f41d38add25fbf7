#include "cli/function_spec.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "kprab/error.hpp"

namespace kprab::cli {

namespace {

double parse_number(std::string_view text, std::string_view spec) {
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw DomainError("function spec '" + std::string(spec) + "': '" + s +
                      "' is not a finite number");
  }
  return v;
}

std::vector<double> parse_list(std::string_view text, std::string_view spec) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start), spec));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

SampledFunction read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open function table '" + path + "'");
  std::string line;
  std::vector<double> ts;
  std::vector<double> vs;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const std::vector<double> row = parse_list(line, path);
    if (row.size() != 2) throw DomainError("function table '" + path + "' needs rows t,value");
    ts.push_back(row[0]);
    vs.push_back(row[1]);
  }
  if (ts.size() < 3) throw DomainError("function table '" + path + "' needs at least 3 rows");
  const Interval iv(ts.front(), ts.back());
  const std::size_t n = ts.size() - 1;
  for (std::size_t i = 0; i <= n; ++i) {
    if (std::abs(ts[i] - SampledFunction::grid_node(iv, n, i)) > 1e-9 * iv.length()) {
      throw DomainError("function table '" + path + "' is not on a uniform grid");
    }
  }
  return SampledFunction(iv, std::move(vs));
}

}  // namespace

std::function<double(double)> parse_function(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("function spec '" + std::string(spec) + "' must look like kind:args");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view args = spec.substr(colon + 1);
  if (kind == "const") {
    const double v = parse_number(args, spec);
    return [v](double) { return v; };
  }
  if (kind == "poly") {
    const std::vector<double> c = parse_list(args, spec);
    return [c](double t) {
      double acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
      return acc;
    };
  }
  if (kind == "sin" || kind == "cos" || kind == "exp") {
    const double w = parse_number(args, spec);
    if (kind == "sin") return [w](double t) { return std::sin(w * t); };
    if (kind == "cos") return [w](double t) { return std::cos(w * t); };
    return [w](double t) { return std::exp(w * t); };
  }
  throw DomainError("function spec '" + std::string(spec) +
                    "': kind must be const, poly, sin, cos, exp or csv");
}

SampledFunction sample_spec(std::string_view spec, const Interval& iv, std::size_t n) {
  if (spec.substr(0, 4) == "csv:") {
    const SampledFunction table = read_table(std::string(spec.substr(4)));
    const double slack = 1e-12 * table.interval().length();
    if (iv.a() < table.interval().a() - slack || iv.b() > table.interval().b() + slack) {
      throw DomainError("function table does not cover the requested interval");
    }
    return SampledFunction::sample(iv, n, [&](double t) {
      return table.at(std::clamp(t, table.interval().a(), table.interval().b()));
    });
  }
  return SampledFunction::sample(iv, n, parse_function(spec));
}

}  // namespace kprab::cli
