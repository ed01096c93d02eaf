#include "torusspec/variations.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "torusspec/errors.hpp"
#include "torusspec/spectral.hpp"

namespace torusspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr double kHypTol = 1e-10;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double inner(const TrigPoly& p, const TrigPoly& q) { return integrate(p * q); }

void require_even(const TrigPoly& f) {
  const double defect = f.symmetry_defect();
  if (defect > kHypTol) throw SymmetryViolated(defect);
}

// int H sin^2(2 pi t) and int H cos^2(2 pi t); they sum to int H.
struct BranchIntegrals {
  double h_sin2 = 0.0;
  double h_cos2 = 0.0;
  double h_mean = 0.0;
};

BranchIntegrals branch_integrals(const TrigPoly& H) {
  BranchIntegrals r;
  r.h_mean = H.mean();
  // sin^2 = (1 - cos 4 pi t)/2, cos^2 = (1 + cos 4 pi t)/2
  const double cross = H.a(2) / 2.0;  // int H cos(4 pi t)
  r.h_sin2 = (r.h_mean - cross) / 2.0;
  r.h_cos2 = (r.h_mean + cross) / 2.0;
  return r;
}

}  // namespace

VariationReport first_variation(const TrigPoly& H) {
  require_even(H);
  const BranchIntegrals bi = branch_integrals(H);

  VariationReport r;
  r.order = 1;
  r.mu1 = -8 * kPi2 * bi.h_sin2;
  r.mu2 = -8 * kPi2 * bi.h_cos2;
  r.mu3 = -4 * kPi2 * bi.h_mean;
  r.lam1sq = r.mu3;
  r.lam23sq = r.mu3;
  r.hypotheses_checked.push_back({"H even about 1/2", H.symmetry_defect()});
  return r;
}

VariationReport second_variation(const TrigPoly& H, const TrigPoly& G,
                                 HypothesisPolicy policy) {
  require_even(H);
  require_even(G);
  const BranchIntegrals bi = branch_integrals(H);

  VariationReport r;
  r.order = 2;
  r.hypotheses_checked.push_back({"int H sin^2(2 pi t) = 0", bi.h_sin2});
  r.hypotheses_checked.push_back({"int H cos^2(2 pi t) = 0", bi.h_cos2});
  r.hypotheses_checked.push_back({"int H = 0", bi.h_mean});
  if (policy == HypothesisPolicy::require) {
    if (std::abs(bi.h_sin2) > kHypTol)
      throw HypothesisViolated("int H sin^2(2 pi t) = 0", bi.h_sin2);
    if (std::abs(bi.h_cos2) > kHypTol)
      throw HypothesisViolated("int H cos^2(2 pi t) = 0", bi.h_cos2);
  }

  const TrigPoly sin1 = TrigPoly::harmonic_sin(1);
  const TrigPoly cos1 = TrigPoly::harmonic_cos(1);
  const double g_sin2 = inner(G, sin1 * sin1);
  const double g_cos2 = inner(G, cos1 * cos1);
  const double g_mean = G.mean();
  const double h_sq = inner(H, H);

  // mu1, mu2: resonant solves C'' + 4 pi^2 C = -4 pi^2 H sin (resp. cos);
  // the kernel modes are clear exactly when the branch hypothesis holds.
  if (std::abs(bi.h_sin2) <= kHypTol) {
    TrigPoly c = solve_poisson_periodic(-4 * kPi2 * (H * sin1), 4 * kPi2);
    r.mu1 = -16 * kPi2 * g_sin2 - 16 * kPi2 * inner(H * c, sin1);
  } else {
    r.mu1 = kNaN;
  }
  if (std::abs(bi.h_cos2) <= kHypTol) {
    TrigPoly c = solve_poisson_periodic(-4 * kPi2 * (H * cos1), 4 * kPi2);
    r.mu2 = -16 * kPi2 * g_cos2 - 16 * kPi2 * inner(H * c, cos1);
  } else {
    r.mu2 = kNaN;
  }

  if (std::abs(bi.h_mean) <= 2 * kHypTol) {  // sum of the two sub-hypotheses
    TrigPoly c3 = solve_poisson_periodic(-4 * kPi2 * H, 0.0);
    r.mu3 = -8 * kPi2 * g_mean - 8 * kPi2 * inner(H, c3);
    r.lam1sq = -8 * kPi2 * g_mean + 2 * kPi2 * h_sq;
    TrigPoly cd =
        solve_poisson_periodic(-4 * kPi2 * H - kPi * H.derivative(), 0.0);
    r.lam23sq = -8 * kPi2 * g_mean + 4 * kPi2 * h_sq -
                8 * kPi2 * inner(H, cd) - 2 * kPi * inner(H.derivative(), cd);
    r.hypotheses_checked.push_back(
        {"corollary: lam23sq - mu3 - 2 pi^2 int H^2",
         r.lam23sq - r.mu3 - 2 * kPi2 * h_sq});
  } else {
    r.mu3 = r.lam1sq = r.lam23sq = kNaN;
  }
  return r;
}

double fourth_variation_dirac(const TrigPoly& H, FourthOrderScheme scheme) {
  require_even(H);
  if (H.max_abs_coeff() == 0.0) return 0.0;

  const double h_mean = H.mean();
  if (std::abs(h_mean) > kHypTol)
    throw HypothesisViolated("first variation of lam23sq = 0", h_mean);

  const TrigPoly H1 = H.derivative();
  const TrigPoly H2 = H1.derivative();

  // second-variation hypothesis, via the closed formula (G = 0)
  {
    TrigPoly cd = solve_poisson_periodic(-4 * kPi2 * H - kPi * H1, 0.0);
    const double lam2 = 4 * kPi2 * inner(H, H) - 8 * kPi2 * inner(H, cd) -
                        2 * kPi * inner(H1, cd);
    if (std::abs(lam2) > 1e-8)
      throw HypothesisViolated("second variation of lam23sq = 0", lam2);
  }

  const TrigPoly c1 =
      solve_poisson_periodic(-4 * kPi2 * H - 0.25 * H2 - kPi * H1, 0.0);

  double result = 6 * inner(H * H * H, H2) + 22.5 * inner(H * H, H1 * H1);

  if (scheme == FourthOrderScheme::printed) {
    const TrigPoly f2 = 0.5 * (H * H2) + 0.625 * (H1 * H1) +
                        2 * kPi * (H1 * H) -
                        (8 * kPi2 * H + 0.5 * H2 + 2 * kPi * H1) * c1;
    const TrigPoly c2 = solve_poisson_periodic(f2, 0.0);

    result += inner(2.5 * (H1 * H1) + 2.0 * (H * H2), c2);
    result -= inner((15.0 * (H1 * H1) + 6.0 * (H2 * H)) * H, c1);

    // fast path of the remark: H'' = -16 pi^2 H kills the C3 coefficient
    const TrigPoly res = H2 + 16 * kPi2 * H;
    if (res.max_abs_coeff() > 1e-12 * (1 + H2.max_abs_coeff())) {
      const TrigPoly f3 =
          -(1.5 * (H2 * (H * H)) + 3.75 * (H * (H1 * H1)) +
            6 * kPi * (H1 * (H * H))) +
          (1.5 * (H * H2) + 0.625 * (H1 * H1) + 6.0 * (H * H1)) * c1 -
          (3 * kPi * H1 + 0.75 * H2 + 4 * kPi2 * H) * c2;
      const TrigPoly c3 = solve_poisson_periodic(f3, 0.0);
      result -= inner(16 * kPi2 * H + H2, c3);
    }
    return result;
  }

  // corrected chain: C_k = k! times the k-th eigenfunction Taylor
  // coefficient; same C1 and C2 equations, C3 and the assembly weights
  // pick up the pi H' cross terms
  const TrigPoly f2 = 0.5 * (H * H2) + 0.625 * (H1 * H1) +
                      2 * kPi * (H1 * H) -
                      (8 * kPi2 * H + 0.5 * H2 + 2 * kPi * H1) * c1;
  const TrigPoly c2 = solve_poisson_periodic(f2, 0.0);

  const TrigPoly f3 =
      -(1.5 * (H2 * (H * H)) + 3.75 * (H * (H1 * H1)) +
        6 * kPi * (H1 * (H * H))) +
      (1.5 * (H * H2) + 1.875 * (H1 * H1) + 6 * kPi * (H * H1)) * c1 -
      (3 * kPi * H1 + 0.75 * H2 + 12 * kPi2 * H) * c2;
  const TrigPoly c3 = solve_poisson_periodic(f3, 0.0);

  result += inner(3.75 * (H1 * H1) + 3.0 * (H * H2) + 12 * kPi * (H1 * H), c2);
  result -= inner((15.0 * (H1 * H1) + 6.0 * (H2 * H) + 24 * kPi * (H1 * H)) * H,
                  c1);
  result -= inner(16 * kPi2 * H + H2 + 4 * kPi * H1, c3);
  return result;
}

GeneralVariation general_first_variation(const ConformalMetric& m0,
                                         const TrigPoly& H, int N, int M) {
  if (m0.degenerate())
    throw DegenerateMetric("general first variation");

  // H is the derivative of the conformal factor: h^4_eps = h^4_0 + eps H.
  // Relative to the base metric that is the conformal multiplier H / h^4_0,
  // which is what enters the eigenvalue-derivative quotients; at the flat
  // base the two readings coincide.
  GridFn hg = sample(H, M);
  GridFn h4 = m0.h4_grid(M);
  GridFn h2 = m0.h2_grid(M);

  auto check_simple = [](const std::vector<EigenMode>& modes) {
    const double gap = modes[1].value - modes[0].value;
    if (gap <= 1e-8) throw EigenvalueNotSimple(gap);
  };

  GeneralVariation out;

  // -mu0 int (H/h^4) f^2 dM / int f^2 dM with dM = h^4 dt
  auto lap = solve({OperatorKind::laplace, 1, m0, N, M}, 2);
  check_simple(lap);
  {
    double num = 0.0, den = 0.0;
    GridFn a = sample(lap[0].coefficients, M);
    for (int j = 0; j < M; ++j) {
      num += hg[j] * a[j] * a[j];
      den += a[j] * a[j] * h4[j];
    }
    out.mu_dot = -lap[0].value * num / den;
  }

  // Dirac side: the first eigenvalue is the l = 0 branch, whose spinor
  // density is |psi|^2 = |A|^2 / h^2 with |A| = 1. The quotient with that
  // density is exact; it equals the derivative of 2 pi / int h^2. The extra
  // factor two because lam enters the quotient through its square.
  {
    const double lam0 = std::sqrt(dirac_l0_closed_form(m0, 1, M));
    double num = 0.0, den = 0.0;
    for (int j = 0; j < M; ++j) {
      num += hg[j] / h2[j];
      den += h2[j];
    }
    out.lam_dot = -lam0 * num / (2.0 * den);
  }
  return out;
}

}  // namespace torusspec
