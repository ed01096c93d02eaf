#include "torusspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace torusspec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double four_pi_sq = 4.0 * pi * pi;
constexpr double kZeroModeTol = 1e-8 * four_pi_sq;

struct Assembled {
  SymMatrix stiffness_potential;
  SymMatrix weight;
  GridFn potential;  // V on the grid
  GridFn h4;
};

GridFn dirac_potential_grid(const ConformalMetric& m, int l, int M) {
  const MetricJet j = jet(m, M);
  GridFn v;
  v.values.resize(M);
  for (int i = 0; i < M; ++i)
    v[i] = four_pi_sq * l * l - 4.0 * pi * l * j.u1[i] - j.curv[i];
  return v;
}

Assembled assemble_ctx(const SLProblem& p) {
  const int N = p.truncation;
  const int M = p.grid;
  if (N < 1) throw std::invalid_argument("truncation degree must be >= 1");

  Assembled ctx;
  ctx.h4 = p.metric.h4_grid(M);
  const int dim = 2 * N + 1;

  if (p.kind == OperatorKind::laplace) {
    const double v = four_pi_sq * p.weight_index * p.weight_index;
    ctx.potential.values.assign(M, v);
    SymMatrix k(dim);
    k.set(0, 0, v);
    for (int n = 1; n <= N; ++n) {
      const double stiff = four_pi_sq * n * n;
      k.set(2 * n - 1, 2 * n - 1, stiff + v);
      k.set(2 * n, 2 * n, stiff + v);
    }
    ctx.stiffness_potential = std::move(k);
  } else {
    ctx.potential = dirac_potential_grid(p.metric, p.weight_index, M);
    SymMatrix k = galerkin_matrix(from_samples(ctx.potential, 2 * N), N);
    for (int n = 1; n <= N; ++n) {
      const double stiff = four_pi_sq * n * n;
      k.set(2 * n - 1, 2 * n - 1, k(2 * n - 1, 2 * n - 1) + stiff);
      k.set(2 * n, 2 * n, k(2 * n, 2 * n) + stiff);
    }
    ctx.stiffness_potential = std::move(k);
  }
  ctx.weight = galerkin_matrix(p.metric.h4_coeffs(2 * N, M), N);
  return ctx;
}

TrigPoly poly_from_basis(const std::vector<double>& x) {
  const int dim = static_cast<int>(x.size());
  const int N = (dim - 1) / 2;
  const double r2 = std::sqrt(2.0);
  std::vector<double> a(N + 1, 0.0), b(N + 1, 0.0);
  a[0] = x[0];
  for (int n = 1; n <= N; ++n) {
    a[n] = r2 * x[2 * n - 1];
    b[n] = r2 * x[2 * n];
  }
  return TrigPoly(std::move(a), std::move(b));
}

EigenMode make_mode(const Assembled& ctx, double value, int weight_index,
                    const std::vector<double>& x, int M) {
  EigenMode mode;
  mode.value = value;
  mode.weight_index = weight_index;
  TrigPoly a = poly_from_basis(x);

  GridFn av = sample(a, M);
  const GridFn app = sample(a.derivative().derivative(), M);
  double res = 0.0;
  for (int i = 0; i < M; ++i) {
    const double r = -app[i] + (ctx.potential[i] - value * ctx.h4[i]) * av[i];
    res += r * r;
  }
  mode.residual = std::sqrt(res / M);

  // orient sign-definite modes positive; others keep the solver convention
  int peak = 0;
  for (int i = 1; i < M; ++i)
    if (std::abs(av[i]) > std::abs(av[peak])) peak = i;
  const double flip = av[peak] < 0.0 ? -1.0 : 1.0;
  double mn = flip * av[0];
  for (int i = 1; i < M; ++i) mn = std::min(mn, flip * av[i]);
  mode.positive = mn > 1e-10;
  if (mode.positive && flip < 0.0) a *= -1.0;
  mode.coefficients = std::move(a);
  return mode;
}

}  // namespace

SymMatrix galerkin_matrix(const TrigPoly& w, int N) {
  const double r2 = std::sqrt(2.0);
  auto ci = [&](int k) { return k == 0 ? w.a(0) : 0.5 * w.a(k); };
  auto si = [&](int k) { return k == 0 ? 0.0 : 0.5 * w.b(k); };
  SymMatrix m(2 * N + 1);
  m.set(0, 0, w.a(0));
  for (int n = 1; n <= N; ++n) {
    m.set(0, 2 * n - 1, w.a(n) / r2);
    m.set(0, 2 * n, w.b(n) / r2);
  }
  for (int a = 1; a <= N; ++a) {
    for (int b = a; b <= N; ++b) {
      m.set(2 * a - 1, 2 * b - 1, ci(b - a) + ci(a + b));  // cos, cos
      m.set(2 * a, 2 * b, ci(b - a) - ci(a + b));          // sin, sin
    }
    for (int b = 1; b <= N; ++b) {
      // <w sin_a, cos_b> = si(a+b) + sign(a-b) si(|a-b|)
      double v = si(a + b);
      if (a > b)
        v += si(a - b);
      else if (a < b)
        v -= si(b - a);
      m.set(2 * a, 2 * b - 1, v);
    }
  }
  return m;
}

std::pair<SymMatrix, SymMatrix> assemble(const SLProblem& p) {
  Assembled ctx = assemble_ctx(p);
  return {std::move(ctx.stiffness_potential), std::move(ctx.weight)};
}

std::vector<EigenMode> solve(const SLProblem& p, int count) {
  const Assembled ctx = assemble_ctx(p);
  const EigenDecomposition dec =
      gen_eig(ctx.stiffness_potential, ctx.weight);
  const int take = std::min<int>(count, dec.values.size());
  std::vector<EigenMode> modes;
  modes.reserve(take);
  for (int i = 0; i < take; ++i)
    modes.push_back(
        make_mode(ctx, dec.values[i], p.weight_index, dec.vectors[i], p.grid));
  return modes;
}

std::vector<EigenMode> solve_k0_parity(const ConformalMetric& m, Parity parity,
                                       int N, int M, int count) {
  if (!m.symmetric()) throw MetricNotSymmetric();
  SLProblem p{OperatorKind::laplace, 0, m, N, M};
  const Assembled ctx = assemble_ctx(p);

  std::vector<int> keep;
  if (parity == Parity::even) {
    keep.push_back(0);
    for (int n = 1; n <= N; ++n) keep.push_back(2 * n - 1);
  } else {
    for (int n = 1; n <= N; ++n) keep.push_back(2 * n);
  }
  const int dim = static_cast<int>(keep.size());
  SymMatrix k(dim), b(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      k.set(i, j, ctx.stiffness_potential(keep[i], keep[j]));
      b.set(i, j, ctx.weight(keep[i], keep[j]));
    }

  const EigenDecomposition dec = gen_eig(k, b);
  const int take = std::min(count, dim);
  std::vector<EigenMode> modes;
  modes.reserve(take);
  const int full = 2 * N + 1;
  for (int p_i = 0; p_i < take; ++p_i) {
    std::vector<double> x(full, 0.0);
    for (int i = 0; i < dim; ++i) x[keep[i]] = dec.vectors[p_i][i];
    modes.push_back(make_mode(ctx, dec.values[p_i], 0, x, M));
  }
  return modes;
}

double dirac_l0_closed_form(const ConformalMetric& m, int n, int M) {
  const double vol_h2 = quadrature(m.h2_grid(M));
  const double ratio = 2.0 * pi * n / vol_h2;
  return ratio * ratio;
}

FirstPositive first_positive_laplace(const ConformalMetric& m, int N, int M) {
  SLProblem p0{OperatorKind::laplace, 0, m, N, M};
  const Assembled c0 = assemble_ctx(p0);
  const EigenDecomposition d0 = gen_eig(c0.stiffness_potential, c0.weight);
  int idx0 = 0;
  while (idx0 < static_cast<int>(d0.values.size()) &&
         d0.values[idx0] <= kZeroModeTol)
    ++idx0;

  SLProblem p1{OperatorKind::laplace, 1, m, N, M};
  const Assembled c1 = assemble_ctx(p1);
  const EigenDecomposition d1 = gen_eig(c1.stiffness_potential, c1.weight);

  FirstPositive fp;
  if (d0.values[idx0] <= d1.values[0]) {
    fp.value = d0.values[idx0];
    fp.weight_index = 0;
    fp.mode = make_mode(c0, d0.values[idx0], 0, d0.vectors[idx0], M);
  } else {
    fp.value = d1.values[0];
    fp.weight_index = 1;
    fp.mode = make_mode(c1, d1.values[0], 1, d1.vectors[0], M);
  }
  return fp;
}

FirstPositive first_positive_dirac(const ConformalMetric& m, int N, int M) {
  if (m.degenerate()) throw DegenerateMetric("Dirac Galerkin solve");
  FirstPositive fp;
  fp.value = dirac_l0_closed_form(m, 1, M);
  fp.weight_index = 0;

  auto consider = [&](int l) {
    SLProblem p{OperatorKind::dirac, l, m, N, M};
    const Assembled ctx = assemble_ctx(p);
    const EigenDecomposition dec = gen_eig(ctx.stiffness_potential, ctx.weight);
    // closed form wins roundoff ties so the flat metric reports its exact value
    if (dec.values[0] < fp.value * (1.0 - 1e-9)) {
      fp.value = dec.values[0];
      fp.weight_index = l;
      fp.mode = make_mode(ctx, dec.values[0], l, dec.vectors[0], M);
    }
  };
  consider(1);
  if (!m.symmetric()) consider(-1);  // l = -1 mirrors l = +1 when symmetric
  return fp;
}

double hamiltonian_min_spec(const ConformalMetric& m, int l, int N, int M) {
  SLProblem p{OperatorKind::dirac, l, m, N, M};
  const Assembled ctx = assemble_ctx(p);
  return sym_eig(ctx.stiffness_potential).values[0];
}

MathieuParameters mathieu_parameters(double mu, double E, int k) {
  MathieuParameters out;
  out.a = mu / four_pi_sq - k * k;
  out.q = E * mu / (64.0 * pi * pi);
  return out;
}

TrigPoly spinor_square_expansion(const EigenMode& mode, int terms) {
  if (!mode.positive) throw NotPositiveMode();
  TrigPoly sq = mode.coefficients * mode.coefficients;
  const double mean = sq.mean();
  sq *= 1.0 / mean;
  return sq.truncated(terms);
}

SpectralFunctions spectral_functions(const ConformalMetric& m, int N, int M) {
  if (!m.symmetric()) throw MetricNotSymmetric();
  SpectralFunctions out;

  const auto odd = solve_k0_parity(m, Parity::odd, N, M, 1);
  out.mu1 = odd[0].value;
  out.max_residual = odd[0].residual;

  const auto even = solve_k0_parity(m, Parity::even, N, M, 3);
  size_t e = 0;
  while (e < even.size() && even[e].value <= kZeroModeTol) ++e;
  out.mu2 = even[e].value;
  out.max_residual = std::max(out.max_residual, even[e].residual);

  const auto k1 = solve({OperatorKind::laplace, 1, m, N, M}, 1);
  out.mu3 = k1[0].value;
  out.max_residual = std::max(out.max_residual, k1[0].residual);

  out.lam1sq = dirac_l0_closed_form(m, 1, M);

  if (m.degenerate()) {
    out.lam23sq = std::numeric_limits<double>::quiet_NaN();
    out.dirac_ok = false;
  } else {
    const auto l1 = solve({OperatorKind::dirac, 1, m, N, M}, 1);
    out.lam23sq = l1[0].value;
    out.max_residual = std::max(out.max_residual, l1[0].residual);
  }
  return out;
}

}  // namespace torusspec
