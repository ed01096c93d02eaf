#pragma once

#include <optional>

#include "torusspec/trig.hpp"

namespace torusspec {

// Conformal factor h^4(t) of a metric h^4 (dt^2 + dy^2) on the unit torus,
// constant in the second coordinate. Stored either as a trigonometric
// polynomial for h^4 itself or as u = ln h (for conformal factors of
// exponential type); both forms evaluate anywhere.
//
// A metric is degenerate when h^4 has isolated zeros on the working grid.
// Degenerate metrics stay usable for the weighted (Laplace side) problems;
// anything touching h' or 1/h requires strict positivity.
class ConformalMetric {
 public:
  static ConformalMetric flat();
  static ConformalMetric from_h4(TrigPoly h4, bool allow_degenerate = false,
                                 int check_grid = 4096);
  static ConformalMetric from_log_h(TrigPoly log_h);

  bool symmetric() const { return symmetric_; }    // h^4(t) = h^4(1-t)
  bool degenerate() const { return degenerate_; }
  bool poly_form() const { return h4_.has_value(); }
  const TrigPoly& h4_poly() const { return *h4_; }
  const TrigPoly& log_h() const { return *logh_; }

  double h4(double t) const;
  GridFn h4_grid(int M) const;
  GridFn h2_grid(int M) const;
  // Fourier coefficients of h^4 up to `degree` (exact for the poly form).
  TrigPoly h4_coeffs(int degree, int M = 4096) const;

  double volume(int M = 4096) const;  // integral of h^4
  double h4_min(int M = 8192) const;
  double h4_max(int M = 8192) const;

 private:
  ConformalMetric() = default;
  std::optional<TrigPoly> h4_;
  std::optional<TrigPoly> logh_;
  bool symmetric_ = false;
  bool degenerate_ = false;
};

// Grid jet of the log conformal factor u = ln h:
//   u1 = u', curv = u'' - u'^2 = (h h'' - 2 h'^2) / h^2.
// Derivatives come from spectral differentiation of the degree M/4
// projection of u (exact when u is stored in closed form).
struct MetricJet {
  int grid = 0;
  GridFn h4, h2, u, u1, curv;
};

MetricJet jet(const ConformalMetric& m, int M = 4096);

// One- or two-parameter conformal deformation h^4_E = 1 + E H + E^2 G.
struct DeformationFamily {
  TrigPoly H;
  TrigPoly G;
};

ConformalMetric family_eval(const DeformationFamily& fam, double E,
                            bool allow_degenerate = false, int M = 4096);

// Closed form of the l = 1 spin Hamiltonian potential for the family
// h^4 = 1 + E cos(4 pi t), |E| < 1:
//
//   p_E(t) = 4 pi^2 + E pi^2 [4 cos(4 pi t) + 4 sin(4 pi t)
//            + E sin^2(4 pi t) + 2 E (2 + sin(8 pi t))] / (1 + E cos(4 pi t))^2.
GridFn mathieu_potential_closed_form(double E, int l, int M = 4096);

}  // namespace torusspec
