#pragma once

#include <optional>
#include <utility>

#include "torusspec/metric.hpp"
#include "torusspec/spectral.hpp"
#include "torusspec/trig.hpp"

namespace torusspec {

// Closed-form and test-function eigenvalue bounds for the reduced problems.
enum class BoundKind {
  conformal_lower,      // 4 pi^2 / max h^4
  conformal_upper,      // 4 pi^2 / min h^4
  rayleigh_laplace,     // int f'^2 / int f^2 h^4
  rayleigh_dirac,       // int (h f' + 2 f h')^2 / int f^2 h^6
  laplace_dirac_gap,    // mu_1 + weighted curvature correction
  positivity_quotient,  // int (2 pi l phi - phi')^2 / h^2  over  int h^2 phi^2
  degenerate_limit,     // the |sin| quotient bounding the E -> -1 limit
  potential_mean,       // int V_l over one period
};

struct BoundReport {
  BoundKind kind = BoundKind::conformal_upper;
  double value = 0.0;
  std::optional<TrigPoly> witness;  // test function, when one was used
};

// Two-sided bracket for the first positive eigenvalue of either operator:
// (4 pi^2 / max h^4, 4 pi^2 / min h^4). Requires strict positivity.
std::pair<double, double> conformal_sandwich(const ConformalMetric& m);

// Rayleigh quotient bound for mu_1. f must be odd about t = 1/2 (so the
// weighted mean constraint holds automatically); the metric symmetric.
// Degenerate metrics are allowed.
double rayleigh_upper_laplace(const ConformalMetric& m, const TrigPoly& f,
                              int M = 4096);

// Test-function bound for the first Dirac eigenvalue square,
// int (h f' + 2 f h')^2 / int f^2 h^6. Same oddness requirement; the metric
// must be strictly positive. The grid overload takes samples f(j/M) and
// differentiates them spectrally (degree M/4 projection), for witnesses that
// are not trigonometric polynomials.
double rayleigh_upper_dirac(const ConformalMetric& m, const TrigPoly& f,
                            int M = 4096);
double rayleigh_upper_dirac(const ConformalMetric& m, const GridFn& f);

// lambda_1^2 <= mu_1 + int (4 h'^2 - (h^2)''/2) f^2 / int f^2 h^6 for a
// first Laplace eigenmode f. The correction vanishes on the flat metric.
double laplace_dirac_gap_bound(const ConformalMetric& m,
                               const EigenMode& f_mode, int M = 4096);

// Positivity quotient bounding the first Dirac eigenvalue square of weight l:
// int (2 pi l phi - phi')^2 / h^2  over  int h^2 phi^2, any periodic phi.
// A degenerate metric is accepted only when the numerator vanishes at the
// grid zeros of h^2; quadrature samples midpoints to dodge the zeros.
double positivity_upper_bound(const ConformalMetric& m, int l,
                              const TrigPoly& phi, int M = 8192);

// The witness phi_l = (cos 2 pi t + l sin 2 pi t) / (2 (l^2 + 1) pi), which
// turns 2 pi l phi - phi' into sin 2 pi t.
TrigPoly limit_witness(int l);

// Limiting bound for the degenerate endpoint of the h^4 = 1 + E cos(4 pi t)
// family: (1/2) int (2 pi l phi - phi')^2 / |sin 2 pi t| over
// int |sin 2 pi t| phi^2. Midpoint quadrature; the numerator must vanish at
// t = 0 and t = 1/2 to second order or the quotient is not integrable.
double limit_quotient(int l, const TrigPoly& phi, int M = 8192);

// Mean of the weight-l potential over one period; bounds the first weight-l
// eigenvalue square whenever the ground state is positive and periodic.
double potential_mean_bound(const ConformalMetric& m, int l, int M = 4096);

}  // namespace torusspec
