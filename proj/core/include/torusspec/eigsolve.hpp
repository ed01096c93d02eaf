#pragma once

#include <vector>

#include "torusspec/errors.hpp"

namespace torusspec {

// Dense symmetric matrix, full row-major storage.
class SymMatrix {
 public:
  SymMatrix() : n_(0) {}
  explicit SymMatrix(int n) : n_(n), data_(static_cast<size_t>(n) * n, 0.0) {}

  int size() const { return n_; }
  double operator()(int i, int j) const { return data_[idx(i, j)]; }
  void set(int i, int j, double v) {
    data_[idx(i, j)] = v;
    data_[idx(j, i)] = v;
  }
  double frobenius() const;
  const std::vector<double>& data() const { return data_; }

 private:
  size_t idx(int i, int j) const {
    return static_cast<size_t>(i) * n_ + j;
  }
  int n_;
  std::vector<double> data_;
};

class LowerTriangular {
 public:
  explicit LowerTriangular(int n)
      : n_(n), data_(static_cast<size_t>(n) * n, 0.0) {}
  int size() const { return n_; }
  double operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * n_ + j];
  }
  double& at(int i, int j) { return data_[static_cast<size_t>(i) * n_ + j]; }

  // L y = b
  std::vector<double> solve_lower(std::vector<double> b) const;
  // L^T x = y
  std::vector<double> solve_upper_transposed(std::vector<double> y) const;

 private:
  int n_;
  std::vector<double> data_;
};

// Fails with NotPositiveDefinite carrying the pivot index.
LowerTriangular cholesky(const SymMatrix& a);

struct EigenDecomposition {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[p] pairs with values[p]
  std::vector<double> residuals;             // 2-norm defect per pair
};

// Householder tridiagonalization followed by implicit-shift QL.
// Deterministic: eigenvalues ascending, each eigenvector scaled so its
// first nonzero component is positive.
EigenDecomposition sym_eig(const SymMatrix& a);

// Generalized symmetric-definite pencil K x = lambda B x via Cholesky
// reduction. Eigenvectors are B-orthonormal; residuals hold |K x - l B x|_2.
EigenDecomposition gen_eig(const SymMatrix& k, const SymMatrix& b);

}  // namespace torusspec
