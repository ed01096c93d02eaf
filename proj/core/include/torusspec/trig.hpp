#pragma once

#include <vector>

#include "torusspec/errors.hpp"

namespace torusspec {

// Real trigonometric polynomial on the unit circle R/Z,
//
//   f(t) = a(0) + sum_{n=1..N} a(n) cos(2 pi n t) + b(n) sin(2 pi n t).
//
// Value type; all operations return new objects.
class TrigPoly {
 public:
  TrigPoly() : a_(1, 0.0), b_(1, 0.0) {}
  explicit TrigPoly(double constant) : a_(1, constant), b_(1, 0.0) {}
  // a[0] is the mean, b[0] must be zero and is ignored.
  TrigPoly(std::vector<double> a, std::vector<double> b);

  static TrigPoly harmonic_cos(int n, double amplitude = 1.0);
  static TrigPoly harmonic_sin(int n, double amplitude = 1.0);

  int degree() const { return static_cast<int>(a_.size()) - 1; }
  double a(int n) const { return n <= degree() ? a_[n] : 0.0; }
  double b(int n) const { return (n >= 1 && n <= degree()) ? b_[n] : 0.0; }
  double mean() const { return a_[0]; }

  double eval(double t) const;
  TrigPoly derivative() const;
  // Drops all coefficients above degree N.
  TrigPoly truncated(int N) const;
  // Drops a trailing block of coefficients that are all below `tol`.
  TrigPoly trimmed(double tol = 0.0) const;

  // L2 norm over one period: sqrt(a0^2 + (1/2) sum a_n^2 + b_n^2).
  double norm_l2() const;
  double max_abs_coeff() const;
  // sup |f(t) - f(1-t)| <= 2 sum |b_n|; zero iff even about 1/2.
  double symmetry_defect() const;

  TrigPoly& operator+=(const TrigPoly& rhs);
  TrigPoly& operator-=(const TrigPoly& rhs);
  TrigPoly& operator*=(double s);

 private:
  std::vector<double> a_, b_;  // index n = 0..degree, b_[0] unused
};

TrigPoly operator+(TrigPoly lhs, const TrigPoly& rhs);
TrigPoly operator-(TrigPoly lhs, const TrigPoly& rhs);
TrigPoly operator*(TrigPoly lhs, double s);
TrigPoly operator*(double s, TrigPoly rhs);
TrigPoly operator-(TrigPoly p);

// Exact product by coefficient convolution; degrees add.
TrigPoly operator*(const TrigPoly& p, const TrigPoly& q);

// Mean value over one period (the a(0) coefficient).
double integrate(const TrigPoly& p);

// Uniform samples values[j] = f(j/M) of a 1-periodic function.
struct GridFn {
  std::vector<double> values;

  GridFn() = default;
  explicit GridFn(std::vector<double> v) : values(std::move(v)) {}
  int size() const { return static_cast<int>(values.size()); }
  double operator[](int j) const { return values[j]; }
  double& operator[](int j) { return values[j]; }
};

GridFn sample(const TrigPoly& p, int M);
template <typename F>
GridFn sample_fn(int M, F&& f) {
  GridFn g;
  g.values.resize(M);
  for (int j = 0; j < M; ++j) g.values[j] = f(static_cast<double>(j) / M);
  return g;
}

// Trapezoidal rule on the periodic grid, (1/M) sum values[j].
// Exact for trigonometric polynomials of degree < M.
double quadrature(const GridFn& g);

// Least-squares / DFT projection of grid samples onto degree <= N.
// Requires M >= 2N+1, else UndersampledGrid.
TrigPoly from_samples(const GridFn& g, int N);

// Solves C'' + omega_sq C = f on R/Z mode by mode. Kernel modes of the
// operator are zeroed in C; a resonant forcing coefficient of magnitude
// > 1e-9 * |f|_L2 raises SolvabilityViolated.
TrigPoly solve_poisson_periodic(const TrigPoly& f, double omega_sq);

}  // namespace torusspec
