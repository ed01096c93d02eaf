#pragma once

#include <string>
#include <vector>

#include "torusspec/metric.hpp"
#include "torusspec/trig.hpp"

namespace torusspec {

// Derivatives at E = 0 of the five tracked spectral branches of the family
// h^4_E = 1 + E H + E^2 G: mu1/mu2 (k = 0 Laplace, deformations of sin/cos),
// mu3 (k = +-1 Laplace), lam1sq (l = 0 Dirac square), lam23sq (l = +-1,
// the two branches coincide for even H).
struct HypothesisCheck {
  std::string name;
  double residual = 0.0;
};

struct VariationReport {
  int order = 1;  // which derivative the five fields hold: 1 or 2
  double mu1 = 0.0, mu2 = 0.0, mu3 = 0.0;
  double lam1sq = 0.0, lam23sq = 0.0;
  std::vector<HypothesisCheck> hypotheses_checked;
};

// First variation. H must be even about t = 1/2, else SymmetryViolated.
// Satisfies mu1 + mu2 = 2 mu3 = 2 lam23sq exactly in exact arithmetic.
VariationReport first_variation(const TrigPoly& H);

// Second variation. Each branch formula carries its own vanishing-first-
// variation hypothesis: int H sin^2(2 pi t) = 0 for mu1, int H cos^2 = 0
// for mu2, int H = 0 for mu3 and both Dirac branches. `require` demands
// all three (the theorem's joint hypothesis) and throws HypothesisViolated;
// `partial` computes the branches whose own hypothesis holds and reports
// NaN for the others, recording every residual either way.
enum class HypothesisPolicy { require, partial };
VariationReport second_variation(const TrigPoly& H, const TrigPoly& G,
                                 HypothesisPolicy policy =
                                     HypothesisPolicy::require);

// Fourth derivative of lam23sq for the pure family h^4 = 1 + E H, assuming
// the first three derivatives vanish (checked, HypothesisViolated).
//
// The two schemes assemble different correction chains C1, C2, C3:
// `printed` follows the published five-integral formula literally and
// reproduces its stated value 27 pi^2 / 4 for H = cos(4 pi t); `corrected`
// follows the chain rederived from the order-by-order expansion of the
// Sturm-Liouville pencil and is the one consistent with finite differences
// of the solved eigenvalue curve (21 pi^2 / 16 for the same H). See the
// tests for the discrepancy record.
enum class FourthOrderScheme { printed, corrected };
double fourth_variation_dirac(const TrigPoly& H,
                              FourthOrderScheme scheme = FourthOrderScheme::printed);

// First derivative at E = 0 of the branches of h^4 = m0.h4 + E H about an
// arbitrary non-degenerate base metric, via the eigenvalue-derivative
// quotients: mu_dot for the k = +1 Laplace ground state, lam_dot for the
// first Dirac eigenvalue (the l = 0 branch, where the reduced spinor
// density 1/h^2 makes the quotient exact). lam_dot differentiates the
// eigenvalue itself, not its square. H need not be symmetric; the sectors
// never couple.
struct GeneralVariation {
  double mu_dot = 0.0;
  double lam_dot = 0.0;
};
GeneralVariation general_first_variation(const ConformalMetric& m0,
                                         const TrigPoly& H, int N = 32,
                                         int M = 4096);

}  // namespace torusspec
