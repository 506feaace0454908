#pragma once

#include <cassert>
#include <complex>
#include <stdexcept>
#include <vector>

namespace consensus {

using cdouble = std::complex<double>;

/// Dense real matrix, row-major storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, value) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Matrix::apply: size mismatch");
    std::vector<double> y(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      double acc = 0.0;
      const double* row = &data_[static_cast<size_t>(i) * cols_];
      for (int j = 0; j < cols_; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
    return y;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Dense symmetric real matrix. Writes go through set(), which mirrors the
/// entry, so the storage is symmetric by construction (entries equal exactly).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : n_(n), data_(static_cast<size_t>(n) * n, 0.0) {
    if (n < 0) throw std::invalid_argument("SymMatrix: negative dimension");
  }

  int size() const { return n_; }

  double operator()(int i, int j) const {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    return data_[static_cast<size_t>(i) * n_ + j];
  }

  void set(int i, int j, double v) {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    data_[static_cast<size_t>(i) * n_ + j] = v;
    data_[static_cast<size_t>(j) * n_ + i] = v;
  }

  void add(int i, int j, double v) { set(i, j, (*this)(i, j) + v); }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("SymMatrix::apply: size mismatch");
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
      double acc = 0.0;
      const double* row = &data_[static_cast<size_t>(i) * n_];
      for (int j = 0; j < n_; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
    return y;
  }

  Matrix dense() const {
    Matrix m(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

 private:
  int n_ = 0;
  std::vector<double> data_;
};

}  // namespace consensus
