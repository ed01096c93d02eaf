#include "torusspec/eigsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace torusspec {

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kOffdiagTol = 1e-13;

// Householder reduction of the symmetric matrix stored in z (row-major,
// overwritten with the accumulated orthogonal transform). On return d holds
// the diagonal and e the subdiagonal (e[0] = 0) of the tridiagonal form.
void tridiagonalize(std::vector<double>& z, int n, std::vector<double>& d,
                    std::vector<double>& e) {
  auto at = [&](int i, int j) -> double& {
    return z[static_cast<size_t>(i) * n + j];
  };
  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::abs(at(i, k));
      if (scale == 0.0) {
        e[i] = at(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          at(i, k) /= scale;
          h += at(i, k) * at(i, k);
        }
        double f = at(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        at(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          at(j, i) = at(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
          for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
          e[j] = g / h;
          f += e[j] * at(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = at(i, j);
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k)
            at(j, k) -= f * e[k] + g * at(i, k);
        }
      }
    } else {
      e[i] = at(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  // accumulate the transformations
  for (int i = 0; i < n; ++i) {
    const int l = i - 1;
    if (d[i] != 0.0) {
      for (int j = 0; j <= l; ++j) {
        double g = 0.0;
        for (int k = 0; k <= l; ++k) g += at(i, k) * at(k, j);
        for (int k = 0; k <= l; ++k) at(k, j) -= g * at(k, i);
      }
    }
    d[i] = at(i, i);
    at(i, i) = 1.0;
    for (int j = 0; j <= l; ++j) at(j, i) = at(i, j) = 0.0;
  }
}

// Implicit-shift QL on the tridiagonal (d, e); plane rotations are applied
// to the columns of z so that column p ends up as the eigenvector of d[p].
void ql_implicit(std::vector<double>& z, int n, std::vector<double>& d,
                 std::vector<double>& e) {
  auto at = [&](int i, int j) -> double& {
    return z[static_cast<size_t>(i) * n + j];
  };
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  const double floor_tol = std::numeric_limits<double>::min();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kOffdiagTol * dd + floor_tol) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps) throw NoConvergence(kMaxSweeps);
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = at(k, i + 1);
            at(k, i + 1) = s * at(k, i) + c * f;
            at(k, i) = c * at(k, i) - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void normalize_sign(std::vector<double>& x) {
  double mx = 0.0;
  for (double v : x) mx = std::max(mx, std::abs(v));
  if (mx == 0.0) return;
  for (double v : x) {
    if (std::abs(v) > 1e-12 * mx) {
      if (v < 0.0)
        for (double& w : x) w = -w;
      return;
    }
  }
}

std::vector<double> matvec(const SymMatrix& a, const std::vector<double>& x) {
  const int n = a.size();
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

std::vector<double> LowerTriangular::solve_lower(std::vector<double> b) const {
  for (int i = 0; i < n_; ++i) {
    double s = b[i];
    for (int j = 0; j < i; ++j) s -= (*this)(i, j) * b[j];
    b[i] = s / (*this)(i, i);
  }
  return b;
}

std::vector<double> LowerTriangular::solve_upper_transposed(
    std::vector<double> y) const {
  for (int i = n_ - 1; i >= 0; --i) {
    double s = y[i];
    for (int j = i + 1; j < n_; ++j) s -= (*this)(j, i) * y[j];
    y[i] = s / (*this)(i, i);
  }
  return y;
}

LowerTriangular cholesky(const SymMatrix& a) {
  const int n = a.size();
  LowerTriangular l(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (!(s > 0.0)) throw NotPositiveDefinite(i);
        l.at(i, i) = std::sqrt(s);
      } else {
        l.at(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

EigenDecomposition sym_eig(const SymMatrix& a) {
  const int n = a.size();
  std::vector<double> z(a.data());
  std::vector<double> d(n, 0.0), e(n, 0.0);
  if (n == 1) {
    d[0] = a(0, 0);
    z[0] = 1.0;
  } else {
    tridiagonalize(z, n, d, e);
    ql_implicit(z, n, d, e);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int p, int q) { return d[p] < d[q]; });

  EigenDecomposition dec;
  dec.values.resize(n);
  dec.vectors.resize(n);
  dec.residuals.resize(n);
  for (int p = 0; p < n; ++p) {
    const int src = order[p];
    dec.values[p] = d[src];
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k) x[k] = z[static_cast<size_t>(k) * n + src];
    normalize_sign(x);
    std::vector<double> ax = matvec(a, x);
    for (int k = 0; k < n; ++k) ax[k] -= dec.values[p] * x[k];
    dec.residuals[p] = norm2(ax);
    dec.vectors[p] = std::move(x);
  }
  return dec;
}

EigenDecomposition gen_eig(const SymMatrix& k, const SymMatrix& b) {
  const int n = k.size();
  const LowerTriangular l = cholesky(b);

  // C = L^-1 K L^-T, built column block by column block
  std::vector<std::vector<double>> y(n);  // rows of Y = L^-1 K
  for (int j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (int i = 0; i < n; ++i) col[i] = k(i, j);
    col = l.solve_lower(std::move(col));
    for (int i = 0; i < n; ++i) {
      if (y[i].empty()) y[i].resize(n);
      y[i][j] = col[i];
    }
  }
  SymMatrix c(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row = l.solve_lower(std::move(y[i]));
    // row now holds row i of C^T = column i of C; C is symmetric, so
    // average the two writes for a clean symmetric matrix.
    for (int j = 0; j <= i; ++j) {
      if (j == i) {
        c.set(i, i, row[i]);
      } else {
        c.set(i, j, 0.5 * (row[j] + c(i, j)));
      }
    }
    for (int j = i + 1; j < n; ++j) c.set(i, j, row[j]);
  }

  EigenDecomposition dec = sym_eig(c);
  for (int p = 0; p < n; ++p) {
    std::vector<double> x = l.solve_upper_transposed(std::move(dec.vectors[p]));
    normalize_sign(x);
    std::vector<double> kx = matvec(k, x);
    const std::vector<double> bx = matvec(b, x);
    for (int i = 0; i < n; ++i) kx[i] -= dec.values[p] * bx[i];
    dec.residuals[p] = norm2(kx);
    dec.vectors[p] = std::move(x);
  }
  return dec;
}

}  // namespace torusspec
