#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace torusspec::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (true) {
    const size_t next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return parts;
}

double parse_real(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v))
      throw UsageError(what + ": cannot parse number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError(what + ": cannot parse number '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw UsageError(what + ": cannot parse integer '" + s + "'");
  return v;
}

// fourier:[a0,a1,b1,a2,b2,...] -> TrigPoly
TrigPoly parse_fourier(const std::string& body, const std::string& what) {
  std::string list = body;
  if (list.size() >= 2 && list.front() == '[' && list.back() == ']')
    list = list.substr(1, list.size() - 2);
  if (list.empty()) throw UsageError(what + ": empty coefficient list");
  const auto parts = split(list, ',');
  std::vector<double> a{parse_real(parts[0], what)}, b{0.0};
  for (size_t i = 1; i + 1 < parts.size(); i += 2) {
    a.push_back(parse_real(parts[i], what));
    b.push_back(parse_real(parts[i + 1], what));
  }
  if (parts.size() % 2 == 0)
    throw UsageError(what +
                     ": coefficients must be a0 followed by (a_n, b_n) pairs");
  return TrigPoly(std::move(a), std::move(b));
}

TrigPoly expfam_log_h(double E) {
  constexpr double pi = std::numbers::pi;
  return TrigPoly::harmonic_sin(1, E / pi) +
         TrigPoly::harmonic_cos(1, -2.0 * E / pi);
}

ConformalMetric coarsened(const ConformalMetric& m, int degree, int grid) {
  if (degree <= 0) return m;
  return ConformalMetric::from_h4(m.h4_coeffs(degree, grid), true, grid);
}

}  // namespace

ConformalMetric parse_metric(const std::string& spec, int grid,
                             int metric_degree) {
  if (spec == "flat")
    return coarsened(ConformalMetric::flat(), metric_degree, grid);
  const auto parts = split(spec, ':');
  if (parts[0] == "cos") {
    if (parts.size() != 3) throw UsageError("metric cos wants cos:N:E");
    const int n = parse_int(parts[1], "metric cos");
    if (n < 1) throw UsageError("metric cos: harmonic index must be >= 1");
    const double E = parse_real(parts[2], "metric cos");
    TrigPoly h4 = TrigPoly(1.0) + TrigPoly::harmonic_cos(n, E);
    return coarsened(ConformalMetric::from_h4(std::move(h4), true, grid),
                     metric_degree, grid);
  }
  if (parts[0] == "expfam") {
    if (parts.size() != 2) throw UsageError("metric expfam wants expfam:E");
    const double E = parse_real(parts[1], "metric expfam");
    return coarsened(ConformalMetric::from_log_h(expfam_log_h(E)),
                     metric_degree, grid);
  }
  if (parts[0] == "fourier") {
    const std::string body = spec.substr(std::string("fourier:").size());
    return coarsened(
        ConformalMetric::from_h4(parse_fourier(body, "metric fourier"), true,
                                 grid),
        metric_degree, grid);
  }
  throw UsageError("unknown metric spec '" + spec +
                   "' (expected flat | cos:N:E | expfam:E | fourier:[...])");
}

TrigPoly parse_direction(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts[0] == "cos" || parts[0] == "sin") {
    if (parts.size() < 2 || parts.size() > 3)
      throw UsageError("direction wants " + parts[0] + ":N[:amplitude]");
    const int n = parse_int(parts[1], "direction " + parts[0]);
    if (n < 1) throw UsageError("direction: harmonic index must be >= 1");
    const double amp =
        parts.size() == 3 ? parse_real(parts[2], "direction amplitude") : 1.0;
    return parts[0] == "cos" ? TrigPoly::harmonic_cos(n, amp)
                             : TrigPoly::harmonic_sin(n, amp);
  }
  if (parts[0] == "fourier") {
    const std::string body = spec.substr(std::string("fourier:").size());
    return parse_fourier(body, "direction fourier");
  }
  throw UsageError("unknown direction spec '" + spec +
                   "' (expected cos:N | sin:N | fourier:[...])");
}

ConformalMetric family_metric(const std::string& family, double E, int grid,
                              int metric_degree) {
  const auto parts = split(family, ':');
  if (parts[0] == "expfam") {
    if (parts.size() != 1)
      throw UsageError("family expfam takes no parameters");
    return coarsened(ConformalMetric::from_log_h(expfam_log_h(E)),
                     metric_degree, grid);
  }
  TrigPoly H = parse_direction(family);
  ConformalMetric m =
      family_eval(DeformationFamily{std::move(H), TrigPoly()}, E, true, grid);
  return coarsened(m, metric_degree, grid);
}

std::vector<double> sweep_values(const RunConfig& cfg) {
  std::vector<double> out = cfg.E;
  if (cfg.e_range) {
    const ERange& r = *cfg.e_range;
    if (r.steps < 1) throw UsageError("--E-range needs at least one step");
    if (r.steps == 1) {
      out.push_back(r.start);
    } else {
      for (int i = 0; i < r.steps; ++i)
        out.push_back(r.start + i * (r.stop - r.start) / (r.steps - 1));
    }
  }
  if (out.empty()) throw UsageError("no deformation parameters: pass --E or --E-range");
  return out;
}

}  // namespace torusspec::cli
