#pragma once

#include <stdexcept>
#include <string>

namespace torusspec {

// Base class for every domain error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// h^4 fails strict positivity on the working grid.
class NonPositiveMetric : public Error {
 public:
  NonPositiveMetric(double t_, double value_)
      : Error("conformal factor h^4 is not strictly positive at t = " +
              std::to_string(t_) + " (value " + std::to_string(value_) + ")"),
        t(t_), value(value_) {}
  double t;
  double value;
};

// Metric has an (isolated) zero of h^4; the requested operation needs h > 0.
class DegenerateMetric : public Error {
 public:
  explicit DegenerateMetric(const std::string& op)
      : Error("metric is degenerate (h^4 touches zero); " + op +
              " requires a strictly positive conformal factor") {}
};

// Sample count too small for the requested interpolation degree.
class UndersampledGrid : public Error {
 public:
  UndersampledGrid(int grid_size, int degree)
      : Error("grid of " + std::to_string(grid_size) +
              " samples cannot determine a trigonometric polynomial of degree " +
              std::to_string(degree) + " (need at least 2N+1 samples)") {}
};

// Resonant Fourier mode of the forcing exceeds the solvability tolerance
// in a periodic solve of C'' + w^2 C = f.
class SolvabilityViolated : public Error {
 public:
  SolvabilityViolated(int mode_, double magnitude_)
      : Error("periodic solve is not solvable: resonant mode n = " +
              std::to_string(mode_) + " has forcing coefficient of magnitude " +
              std::to_string(magnitude_)),
        mode(mode_), magnitude(magnitude_) {}
  int mode;
  double magnitude;
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(int pivot_)
      : Error("matrix is not positive definite (Cholesky pivot " +
              std::to_string(pivot_) + ")"),
        pivot(pivot_) {}
  int pivot;
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(int sweeps_)
      : Error("eigenvalue iteration failed to converge within " +
              std::to_string(sweeps_) + " sweeps"),
        sweeps(sweeps_) {}
  int sweeps;
};

// A named integral hypothesis of a variation formula fails.
class HypothesisViolated : public Error {
 public:
  HypothesisViolated(const std::string& which_, double residual_)
      : Error("variation hypothesis violated: " + which_ + " (residual " +
              std::to_string(residual_) + ")"),
        which(which_), residual(residual_) {}
  std::string which;
  double residual;
};

class SymmetryViolated : public Error {
 public:
  explicit SymmetryViolated(double residual_)
      : Error("function is not even about t = 1/2 (residual " +
              std::to_string(residual_) + ")"),
        residual(residual_) {}
  double residual;
};

class AntisymmetryViolated : public Error {
 public:
  explicit AntisymmetryViolated(double residual_)
      : Error("test function is not odd about t = 1/2 (residual " +
              std::to_string(residual_) + ")"),
        residual(residual_) {}
  double residual;
};

class MetricNotSymmetric : public Error {
 public:
  MetricNotSymmetric() : Error("metric lacks the symmetry h^4(t) = h^4(1-t)") {}
};

// Quotient with a singular denominator whose numerator does not vanish
// fast enough where the denominator does.
class SingularQuotient : public Error {
 public:
  explicit SingularQuotient(const std::string& detail)
      : Error("singular quotient: " + detail) {}
};

class NotPositiveMode : public Error {
 public:
  NotPositiveMode() : Error("eigenfunction changes sign on the grid") {}
};

class EigenvalueNotSimple : public Error {
 public:
  explicit EigenvalueNotSimple(double gap_)
      : Error("eigenvalue is not simple (gap " + std::to_string(gap_) + ")"),
        gap(gap_) {}
  double gap;
};

}  // namespace torusspec
