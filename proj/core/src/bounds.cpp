#include "torusspec/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "torusspec/errors.hpp"

namespace torusspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

// sup bound of |f(t) + f(1-t)|; zero iff f is odd about 1/2.
double antisymmetry_defect(const TrigPoly& f) {
  double d = std::abs(f.a(0));
  for (int n = 1; n <= f.degree(); ++n) d += std::abs(f.a(n));
  return 2.0 * d;
}

void require_odd(const TrigPoly& f) {
  const double defect = antisymmetry_defect(f);
  if (defect > 1e-10 * (1.0 + f.max_abs_coeff()))
    throw AntisymmetryViolated(defect);
}

void require_symmetric(const ConformalMetric& m) {
  if (!m.symmetric()) throw MetricNotSymmetric();
}

double quotient_or_throw(double num, double den, const char* what) {
  if (!(den > 0.0)) throw SingularQuotient(what);
  return num / den;
}

// Shared core of the Dirac Rayleigh bound once f and f' are on the grid.
double dirac_quotient(const MetricJet& J, const GridFn& f, const GridFn& fp) {
  const int M = J.grid;
  double num = 0.0, den = 0.0;
  for (int j = 0; j < M; ++j) {
    const double slope = fp[j] + 2.0 * f[j] * J.u1[j];  // (h f' + 2 f h') / h
    num += J.h2[j] * slope * slope;
    den += f[j] * f[j] * J.h4[j] * J.h2[j];
  }
  return quotient_or_throw(num, den,
                           "weighted norm of the test function vanishes");
}

}  // namespace

std::pair<double, double> conformal_sandwich(const ConformalMetric& m) {
  if (m.degenerate()) throw DegenerateMetric("conformal sandwich");
  const double base = 4.0 * kPi * kPi;
  return {base / m.h4_max(), base / m.h4_min()};
}

double rayleigh_upper_laplace(const ConformalMetric& m, const TrigPoly& f,
                              int M) {
  require_odd(f);
  require_symmetric(m);
  const TrigPoly fp = f.derivative();
  const double num = integrate(fp * fp);
  const GridFn f2 = sample(f * f, M);
  const GridFn h4 = m.h4_grid(M);
  double den = 0.0;
  for (int j = 0; j < M; ++j) den += f2[j] * h4[j];
  den /= M;
  return quotient_or_throw(num, den,
                           "weighted norm of the test function vanishes");
}

double rayleigh_upper_dirac(const ConformalMetric& m, const TrigPoly& f,
                            int M) {
  require_odd(f);
  require_symmetric(m);
  const MetricJet J = jet(m, M);
  return dirac_quotient(J, sample(f, M), sample(f.derivative(), M));
}

double rayleigh_upper_dirac(const ConformalMetric& m, const GridFn& f) {
  const int M = f.size();
  require_symmetric(m);
  double scale = 0.0, defect = 0.0;
  for (int j = 0; j < M; ++j) {
    scale = std::max(scale, std::abs(f[j]));
    defect = std::max(defect, std::abs(f[j] + f[(M - j) % M]));
  }
  if (defect > 1e-8 * (1.0 + scale)) throw AntisymmetryViolated(defect);
  const MetricJet J = jet(m, M);
  const TrigPoly fp_poly = from_samples(f, M / 4).derivative();
  return dirac_quotient(J, f, sample(fp_poly, M));
}

double laplace_dirac_gap_bound(const ConformalMetric& m,
                               const EigenMode& f_mode, int M) {
  const MetricJet J = jet(m, M);
  const GridFn f = sample(f_mode.coefficients, M);
  double num = 0.0, den = 0.0;
  for (int j = 0; j < M; ++j) {
    // 4 h'^2 - (h^2)''/2 = (u'^2 - (u'' - u'^2)) h^2
    const double correction = (J.u1[j] * J.u1[j] - J.curv[j]) * J.h2[j];
    num += correction * f[j] * f[j];
    den += f[j] * f[j] * J.h4[j] * J.h2[j];
  }
  return f_mode.value +
         quotient_or_throw(num, den, "eigenmode has vanishing weighted norm");
}

double positivity_upper_bound(const ConformalMetric& m, int l,
                              const TrigPoly& phi, int M) {
  if (phi.norm_l2() == 0.0)
    throw SingularQuotient("test function is identically zero");
  const TrigPoly g = 2.0 * kPi * l * phi - phi.derivative();
  if (m.degenerate()) {
    // Admissible only when the numerator dies with h^2 on the nodal grid.
    for (int j = 0; j < M; ++j) {
      const double t = static_cast<double>(j) / M;
      if (m.h4(t) <= 1e-12) {
        const double gt = g.eval(t);
        if (gt * gt > 1e-8)
          throw SingularQuotient(
              "numerator does not vanish at a zero of the conformal factor");
      }
    }
  }
  // Midpoints never land on the isolated zeros of h^2.
  double num = 0.0, den = 0.0;
  for (int j = 0; j < M; ++j) {
    const double t = (j + 0.5) / M;
    const double h4t = std::max(m.h4(t), 0.0);
    const double h2t = std::sqrt(h4t);
    const double gt = g.eval(t);
    const double pt = phi.eval(t);
    if (h2t <= 1e-12) {
      if (gt * gt > 1e-8)
        throw SingularQuotient(
            "numerator does not vanish at a zero of the conformal factor");
      continue;
    }
    num += gt * gt / h2t;
    den += h2t * pt * pt;
  }
  return quotient_or_throw(num, den,
                           "weighted norm of the test function vanishes");
}

TrigPoly limit_witness(int l) {
  const double s = 1.0 / (2.0 * (l * l + 1.0) * kPi);
  return TrigPoly::harmonic_cos(1, s) + TrigPoly::harmonic_sin(1, l * s);
}

double limit_quotient(int l, const TrigPoly& phi, int M) {
  const TrigPoly g = 2.0 * kPi * l * phi - phi.derivative();

  double gmax2 = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double v = g.eval(j / 64.0);
    gmax2 = std::max(gmax2, v * v);
  }
  // Integrability: near each singular node the numerator must scale like the
  // local sin^2, i.e. the quotient stays bounded walking into the node.
  for (const double t0 : {0.0, 0.5}) {
    const double t1 = t0 + 0.5 / M;
    const double t2 = t0 + 1.5 / M;
    const double g1 = g.eval(t1), g2 = g.eval(t2);
    const double s1 = std::sin(2.0 * kPi * t1), s2 = std::sin(2.0 * kPi * t2);
    const double q1 = g1 * g1 / (s1 * s1);
    const double q2 = g2 * g2 / (s2 * s2);
    if (q1 > 4.0 * q2 + 1e-9 * (1.0 + gmax2))
      throw SingularQuotient(
          "numerator does not vanish to second order at t = " +
          std::to_string(t0));
  }

  double num = 0.0, den = 0.0;
  for (int j = 0; j < M; ++j) {
    const double t = (j + 0.5) / M;
    const double s = std::abs(std::sin(2.0 * kPi * t));
    const double gt = g.eval(t);
    const double pt = phi.eval(t);
    num += gt * gt / s;
    den += s * pt * pt;
  }
  return 0.5 * quotient_or_throw(
                   num, den, "weighted norm of the test function vanishes");
}

double potential_mean_bound(const ConformalMetric& m, int l, int M) {
  const MetricJet J = jet(m, M);
  const double base = 4.0 * kPi * kPi * l * l;
  double acc = 0.0;
  for (int j = 0; j < M; ++j)
    acc += base - 4.0 * kPi * l * J.u1[j] - J.curv[j];
  return acc / M;
}

}  // namespace torusspec
