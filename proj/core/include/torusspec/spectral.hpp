#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "torusspec/eigsolve.hpp"
#include "torusspec/metric.hpp"
#include "torusspec/trig.hpp"

namespace torusspec {

// Periodic Sturm-Liouville reduction on [0,1]:
//   -A'' + V(t) A = lambda h^4(t) A,
// where the potential V depends on the operator family and the integer
// weight index (Fourier mode in the symmetry direction):
//   laplace, index k:  V = 4 pi^2 k^2              (lambda = mu)
//   dirac,   index l:  V = 4 pi^2 l^2 - 4 pi l u' - (u'' - u'^2)
//                                                   (lambda = square of the
//                                                    Dirac eigenvalue)
enum class OperatorKind { laplace, dirac };

struct SLProblem {
  OperatorKind kind = OperatorKind::laplace;
  int weight_index = 0;
  ConformalMetric metric = ConformalMetric::flat();
  int truncation = 32;  // Fourier-Galerkin degree N, dimension 2N+1
  int grid = 4096;      // sampling grid for weights and residuals
};

struct EigenMode {
  double value = 0.0;
  int weight_index = 0;
  TrigPoly coefficients;  // eigenfunction A, normalized to int A^2 h^4 = 1
  double residual = 0.0;  // L2 grid norm of -A'' + (V - value h^4) A
  bool positive = false;  // no sign change on the grid
};

// Galerkin mass matrix <w phi_i, phi_j> in the orthonormal basis
// {1, sqrt2 cos(2 pi n t), sqrt2 sin(2 pi n t)}, n = 1..N; w needs
// coefficients up to degree 2N.
SymMatrix galerkin_matrix(const TrigPoly& w, int N);

// Stiffness + potential and weight matrices of the problem.
std::pair<SymMatrix, SymMatrix> assemble(const SLProblem& p);

// The `count` lowest eigenpairs.
std::vector<EigenMode> solve(const SLProblem& p, int count);

// k = 0 Laplace eigenpairs restricted to one parity sector about t = 1/2
// (even: {1, cos}; odd: {sin}). Requires a symmetric metric.
enum class Parity { even, odd };
std::vector<EigenMode> solve_k0_parity(const ConformalMetric& m, Parity parity,
                                       int N, int M, int count);

// Exact l = 0 spectrum: lambda^2 = 4 pi^2 n^2 / (int h^2 dt)^2.
// Degenerate metrics are fine; only int h^2 enters.
double dirac_l0_closed_form(const ConformalMetric& m, int n, int M = 4096);

struct FirstPositive {
  double value = 0.0;
  int weight_index = 0;
  std::optional<EigenMode> mode;  // absent when a closed form wins
};

// Smallest positive eigenvalue over k in {0, +-1}; k = +-1 coincide and are
// reported as 1. Zero modes are cut at 1e-8 * 4 pi^2.
FirstPositive first_positive_laplace(const ConformalMetric& m, int N = 32,
                                     int M = 4096);
// Smallest Dirac eigenvalue square over l in {0, +-1}.
FirstPositive first_positive_dirac(const ConformalMetric& m, int N = 32,
                                   int M = 4096);

// Smallest eigenvalue of the unweighted operator -d^2/dt^2 + V_l.
double hamiltonian_min_spec(const ConformalMetric& m, int l, int N = 32,
                            int M = 4096);

// Angular Mathieu normal form y'' + (a - 2 q cos(2x)) y = 0 of the k-mode
// equation for the family h^4 = 1 + E cos(4 pi t).
struct MathieuParameters {
  double a = 0.0;
  double q = 0.0;
};
MathieuParameters mathieu_parameters(double mu, double E, int k);

// Fourier expansion of the squared eigenfunction, scaled to mean one and
// truncated at `terms`. The mode must be sign-definite.
TrigPoly spinor_square_expansion(const EigenMode& mode, int terms);

// The five tracked spectral branches of a symmetric metric. mu1/mu2 are the
// lowest odd/even k = 0 Laplace eigenvalues, mu3 the lowest at k = +-1,
// lam1sq the l = 0 closed form at n = 1, lam23sq the lowest at l = +-1.
// For degenerate metrics the Dirac Galerkin branch is unavailable and
// lam23sq is NaN with dirac_ok = false.
struct SpectralFunctions {
  double mu1 = 0.0, mu2 = 0.0, mu3 = 0.0;
  double lam1sq = 0.0, lam23sq = 0.0;
  double max_residual = 0.0;
  bool dirac_ok = true;
};
SpectralFunctions spectral_functions(const ConformalMetric& m, int N = 32,
                                     int M = 4096);

}  // namespace torusspec
