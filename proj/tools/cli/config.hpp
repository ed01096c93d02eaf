#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torusspec/metric.hpp"
#include "torusspec/trig.hpp"

namespace torusspec::cli {

// Command-line input that cannot be mapped to a run. Exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct ERange {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;
};

struct RunConfig {
  std::string command;

  std::string metric;  // flat | cos:N:E | expfam:E | fourier:[a0,a1,b1,...]
  std::string family;  // cos:N | expfam | fourier:[...]
  std::string H, G;    // cos:N[:amp] | sin:N[:amp] | fourier:[...]

  std::vector<double> E;
  std::optional<ERange> e_range;

  int trunc = 32;
  int grid = 4096;
  int metric_degree = 0;  // > 0: replace h^4 by its Fourier truncation
  int jobs = 1;

  std::string format;  // json | csv; per-command default when empty
  std::string out;     // output path; stdout when empty

  std::vector<int> orders;      // variations
  std::string scheme = "both";  // fourth-order chain: printed | corrected | both

  int l = 1;       // spinor / positivity weight
  int terms = 8;   // spinor expansion length
  int dump = 0;    // spinor profile samples
  int limit_l = 0; // bounds: emit the degenerate-limit report for this weight

  std::vector<int> laplace_k{0, 1};  // spectrum branches
  std::vector<int> dirac_l{0, 1};
  int count = 3;  // eigenvalues per branch

  double residual_tol = 1e-6;
};

// Mini-language parsers. UsageError on malformed specs; admissibility of the
// resulting factor (positivity) is checked by the metric layer.
ConformalMetric parse_metric(const std::string& spec, int grid,
                             int metric_degree);

// Deformation direction for --H/--G and cos families.
TrigPoly parse_direction(const std::string& spec);

// Family evaluation at parameter E. Families: cos:N (h^4 = 1 + E cos 2piNt),
// expfam (log h = (E/pi)(sin 2pi t - 2 cos 2pi t)), fourier:[...] (additive
// direction for h^4 = 1 + E H).
ConformalMetric family_metric(const std::string& family, double E, int grid,
                              int metric_degree);

// Explicit --E values followed by the --E-range grid, in emission order.
std::vector<double> sweep_values(const RunConfig& cfg);

}  // namespace torusspec::cli
