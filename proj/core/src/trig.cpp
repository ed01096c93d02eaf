#include "torusspec/trig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace torusspec {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Tabulated cos/sin(2 pi m / M); cos(2 pi n j / M) = ct[(n*j) % M] exactly.
struct Turntable {
  std::vector<double> ct, st;
  explicit Turntable(int M) : ct(M), st(M) {
    for (int m = 0; m < M; ++m) {
      ct[m] = std::cos(two_pi * m / M);
      st[m] = std::sin(two_pi * m / M);
    }
  }
  int idx(long long n, long long j, int M) const {
    long long r = (n * j) % M;
    return static_cast<int>(r);
  }
};

}  // namespace

TrigPoly::TrigPoly(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) a_.assign(1, 0.0);
  b_.resize(a_.size(), 0.0);
  b_[0] = 0.0;
}

TrigPoly TrigPoly::harmonic_cos(int n, double amplitude) {
  std::vector<double> a(n + 1, 0.0), b(n + 1, 0.0);
  a[n] = amplitude;
  return TrigPoly(std::move(a), std::move(b));
}

TrigPoly TrigPoly::harmonic_sin(int n, double amplitude) {
  std::vector<double> a(n + 1, 0.0), b(n + 1, 0.0);
  if (n >= 1) b[n] = amplitude;
  return TrigPoly(std::move(a), std::move(b));
}

double TrigPoly::eval(double t) const {
  double s = a_[0];
  for (int n = 1; n <= degree(); ++n) {
    const double ph = two_pi * n * t;
    s += a_[n] * std::cos(ph) + b_[n] * std::sin(ph);
  }
  return s;
}

TrigPoly TrigPoly::derivative() const {
  const int N = degree();
  std::vector<double> a(N + 1, 0.0), b(N + 1, 0.0);
  for (int n = 1; n <= N; ++n) {
    a[n] = two_pi * n * b_[n];
    b[n] = -two_pi * n * a_[n];
  }
  return TrigPoly(std::move(a), std::move(b));
}

TrigPoly TrigPoly::truncated(int N) const {
  const int keep = std::min(N, degree());
  std::vector<double> a(a_.begin(), a_.begin() + keep + 1);
  std::vector<double> b(b_.begin(), b_.begin() + keep + 1);
  return TrigPoly(std::move(a), std::move(b));
}

TrigPoly TrigPoly::trimmed(double tol) const {
  int N = degree();
  while (N > 0 && std::abs(a_[N]) <= tol && std::abs(b_[N]) <= tol) --N;
  return truncated(N);
}

double TrigPoly::norm_l2() const {
  double s = a_[0] * a_[0];
  for (int n = 1; n <= degree(); ++n)
    s += 0.5 * (a_[n] * a_[n] + b_[n] * b_[n]);
  return std::sqrt(s);
}

double TrigPoly::max_abs_coeff() const {
  double m = 0.0;
  for (int n = 0; n <= degree(); ++n)
    m = std::max({m, std::abs(a_[n]), std::abs(b_[n])});
  return m;
}

double TrigPoly::symmetry_defect() const {
  double s = 0.0;
  for (int n = 1; n <= degree(); ++n) s += std::abs(b_[n]);
  return 2.0 * s;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& rhs) {
  if (rhs.degree() > degree()) {
    a_.resize(rhs.degree() + 1, 0.0);
    b_.resize(rhs.degree() + 1, 0.0);
  }
  for (int n = 0; n <= rhs.degree(); ++n) {
    a_[n] += rhs.a_[n];
    b_[n] += rhs.b_[n];
  }
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& rhs) {
  if (rhs.degree() > degree()) {
    a_.resize(rhs.degree() + 1, 0.0);
    b_.resize(rhs.degree() + 1, 0.0);
  }
  for (int n = 0; n <= rhs.degree(); ++n) {
    a_[n] -= rhs.a_[n];
    b_[n] -= rhs.b_[n];
  }
  return *this;
}

TrigPoly& TrigPoly::operator*=(double s) {
  for (auto& v : a_) v *= s;
  for (auto& v : b_) v *= s;
  return *this;
}

TrigPoly operator+(TrigPoly lhs, const TrigPoly& rhs) { return lhs += rhs; }
TrigPoly operator-(TrigPoly lhs, const TrigPoly& rhs) { return lhs -= rhs; }
TrigPoly operator*(TrigPoly lhs, double s) { return lhs *= s; }
TrigPoly operator*(double s, TrigPoly rhs) { return rhs *= s; }
TrigPoly operator-(TrigPoly p) { return p *= -1.0; }

TrigPoly operator*(const TrigPoly& p, const TrigPoly& q) {
  const int np = p.degree(), nq = q.degree();
  const int nr = np + nq;
  std::vector<double> ra(nr + 1, 0.0), rb(nr + 1, 0.0);
  // cos is even, sin is odd in the mode index; sin(0) contributes nothing.
  auto add_cos = [&](int k, double v) { ra[k < 0 ? -k : k] += v; };
  auto add_sin = [&](int k, double v) {
    if (k > 0)
      rb[k] += v;
    else if (k < 0)
      rb[-k] -= v;
  };
  for (int m = 0; m <= np; ++m) {
    const double am = p.a(m), bm = p.b(m);
    if (am == 0.0 && bm == 0.0) continue;
    for (int n = 0; n <= nq; ++n) {
      const double an = q.a(n), bn = q.b(n);
      if (an == 0.0 && bn == 0.0) continue;
      const double cc = 0.5 * am * an;
      const double ss = 0.5 * bm * bn;
      const double sc = 0.5 * bm * an;
      const double cs = 0.5 * am * bn;
      if (cc != 0.0) { add_cos(m - n, cc); add_cos(m + n, cc); }
      if (ss != 0.0) { add_cos(m - n, ss); add_cos(m + n, -ss); }
      if (sc != 0.0) { add_sin(m - n, sc); add_sin(m + n, sc); }
      if (cs != 0.0) { add_sin(n - m, cs); add_sin(m + n, cs); }
    }
  }
  return TrigPoly(std::move(ra), std::move(rb));
}

double integrate(const TrigPoly& p) { return p.mean(); }

GridFn sample(const TrigPoly& p, int M) {
  Turntable tab(M);
  GridFn g;
  g.values.assign(M, p.mean());
  for (int n = 1; n <= p.degree(); ++n) {
    const double an = p.a(n), bn = p.b(n);
    if (an == 0.0 && bn == 0.0) continue;
    for (int j = 0; j < M; ++j) {
      const int m = tab.idx(n, j, M);
      g.values[j] += an * tab.ct[m] + bn * tab.st[m];
    }
  }
  return g;
}

double quadrature(const GridFn& g) {
  double s = 0.0;
  for (double v : g.values) s += v;
  return s / g.size();
}

TrigPoly from_samples(const GridFn& g, int N) {
  const int M = g.size();
  if (M < 2 * N + 1) throw UndersampledGrid(M, N);
  Turntable tab(M);
  std::vector<double> a(N + 1, 0.0), b(N + 1, 0.0);
  for (int j = 0; j < M; ++j) a[0] += g.values[j];
  a[0] /= M;
  for (int n = 1; n <= N; ++n) {
    double ca = 0.0, sa = 0.0;
    for (int j = 0; j < M; ++j) {
      const int m = tab.idx(n, j, M);
      ca += g.values[j] * tab.ct[m];
      sa += g.values[j] * tab.st[m];
    }
    a[n] = 2.0 * ca / M;
    b[n] = 2.0 * sa / M;
  }
  return TrigPoly(std::move(a), std::move(b));
}

TrigPoly solve_poisson_periodic(const TrigPoly& f, double omega_sq) {
  constexpr double four_pi_sq = two_pi * two_pi;
  const double fnorm = f.norm_l2();
  const double res_tol = 1e-9 * fnorm;
  const int N = f.degree();
  std::vector<double> a(N + 1, 0.0), b(N + 1, 0.0);
  for (int n = 0; n <= N; ++n) {
    const double lap = four_pi_sq * n * n;  // -(d/dt)^2 on mode n
    const double denom = omega_sq - lap;
    const double scale = omega_sq + lap + four_pi_sq;
    if (std::abs(denom) <= 1e-12 * scale) {
      // kernel mode: solvability demands the forcing component vanish
      const double mag = std::max(std::abs(f.a(n)), std::abs(f.b(n)));
      if (mag > res_tol) throw SolvabilityViolated(n, mag);
      continue;  // left at zero
    }
    a[n] = f.a(n) / denom;
    b[n] = f.b(n) / denom;
  }
  return TrigPoly(std::move(a), std::move(b));
}

}  // namespace torusspec
