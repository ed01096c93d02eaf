#include "torusspec/metric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace torusspec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kDegenerateTol = 1e-10;

bool coeffs_symmetric(const TrigPoly& p) {
  const double scale = std::max(1.0, p.max_abs_coeff());
  return p.symmetry_defect() <= 1e-12 * scale;
}

}  // namespace

ConformalMetric ConformalMetric::flat() {
  return from_h4(TrigPoly(1.0));
}

ConformalMetric ConformalMetric::from_h4(TrigPoly h4, bool allow_degenerate,
                                         int check_grid) {
  GridFn g = sample(h4, check_grid);
  double min_v = g[0];
  int min_j = 0;
  for (int j = 1; j < check_grid; ++j) {
    if (g[j] < min_v) {
      min_v = g[j];
      min_j = j;
    }
  }
  const double t_min = static_cast<double>(min_j) / check_grid;
  if (min_v < -kDegenerateTol) throw NonPositiveMetric(t_min, min_v);
  const bool touches_zero = min_v <= kDegenerateTol;
  if (touches_zero && !allow_degenerate) throw NonPositiveMetric(t_min, min_v);

  ConformalMetric m;
  m.symmetric_ = coeffs_symmetric(h4);
  m.degenerate_ = touches_zero;
  m.h4_ = std::move(h4);
  return m;
}

ConformalMetric ConformalMetric::from_log_h(TrigPoly log_h) {
  ConformalMetric m;
  m.symmetric_ = coeffs_symmetric(log_h);
  m.degenerate_ = false;
  m.logh_ = std::move(log_h);
  return m;
}

double ConformalMetric::h4(double t) const {
  if (h4_) return h4_->eval(t);
  return std::exp(4.0 * logh_->eval(t));
}

GridFn ConformalMetric::h4_grid(int M) const {
  if (h4_) return sample(*h4_, M);
  GridFn u = sample(*logh_, M);
  for (auto& v : u.values) v = std::exp(4.0 * v);
  return u;
}

GridFn ConformalMetric::h2_grid(int M) const {
  if (h4_) {
    GridFn g = sample(*h4_, M);
    for (auto& v : g.values) v = std::sqrt(std::max(0.0, v));
    return g;
  }
  GridFn u = sample(*logh_, M);
  for (auto& v : u.values) v = std::exp(2.0 * v);
  return u;
}

TrigPoly ConformalMetric::h4_coeffs(int degree, int M) const {
  if (h4_) return h4_->truncated(degree);
  return from_samples(h4_grid(M), degree);
}

double ConformalMetric::volume(int M) const {
  if (h4_) return h4_->mean();
  return quadrature(h4_grid(M));
}

double ConformalMetric::h4_min(int M) const {
  GridFn g = h4_grid(M);
  double v = g[0];
  for (double x : g.values) v = std::min(v, x);
  return v;
}

double ConformalMetric::h4_max(int M) const {
  GridFn g = h4_grid(M);
  double v = g[0];
  for (double x : g.values) v = std::max(v, x);
  return v;
}

MetricJet jet(const ConformalMetric& m, int M) {
  if (m.degenerate()) throw DegenerateMetric("metric jet");
  MetricJet j;
  j.grid = M;
  if (m.poly_form()) {
    j.h4 = sample(m.h4_poly(), M);
    j.h2.values.resize(M);
    j.u.values.resize(M);
    for (int i = 0; i < M; ++i) {
      const double v = j.h4[i];
      if (!(v > 0.0)) throw DegenerateMetric("metric jet");
      j.h2[i] = std::sqrt(v);
      j.u[i] = 0.25 * std::log(v);
    }
    const TrigPoly u = from_samples(j.u, M / 4);
    const TrigPoly du = u.derivative();
    j.u1 = sample(du, M);
    const GridFn u2 = sample(du.derivative(), M);
    j.curv.values.resize(M);
    for (int i = 0; i < M; ++i) j.curv[i] = u2[i] - j.u1[i] * j.u1[i];
  } else {
    const TrigPoly& u = m.log_h();
    const TrigPoly du = u.derivative();
    j.u = sample(u, M);
    j.u1 = sample(du, M);
    const GridFn u2 = sample(du.derivative(), M);
    j.h4.values.resize(M);
    j.h2.values.resize(M);
    j.curv.values.resize(M);
    for (int i = 0; i < M; ++i) {
      j.h4[i] = std::exp(4.0 * j.u[i]);
      j.h2[i] = std::exp(2.0 * j.u[i]);
      j.curv[i] = u2[i] - j.u1[i] * j.u1[i];
    }
  }
  return j;
}

ConformalMetric family_eval(const DeformationFamily& fam, double E,
                            bool allow_degenerate, int M) {
  TrigPoly h4 = TrigPoly(1.0) + E * fam.H + (E * E) * fam.G;
  return ConformalMetric::from_h4(std::move(h4), allow_degenerate, M);
}

GridFn mathieu_potential_closed_form(double E, int l, int M) {
  if (l != 1)
    throw std::invalid_argument(
        "closed-form potential is only available for l = 1");
  if (!(std::abs(E) < 1.0))
    throw std::invalid_argument("closed-form potential needs |E| < 1");
  GridFn g;
  g.values.resize(M);
  for (int j = 0; j < M; ++j) {
    const double t = static_cast<double>(j) / M;
    const double c = std::cos(4 * pi * t);
    const double s = std::sin(4 * pi * t);
    const double s8 = std::sin(8 * pi * t);
    const double den = 1.0 + E * c;
    g[j] = 4 * pi * pi +
           E * pi * pi * (4 * c + 4 * s + E * s * s + 2 * E * (2 + s8)) /
               (den * den);
  }
  return g;
}

}  // namespace torusspec
