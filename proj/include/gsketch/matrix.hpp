#pragma once

// Dense row-major matrix of doubles. Deliberately minimal: the library only
// needs accumulation of outer products, products, bilinear forms, and
// entrywise reductions, all with a fixed evaluation order so results are
// reproducible bit-for-bit run to run.

#include <cstddef>
#include <vector>

#include "gsketch/error.hpp"

namespace gsketch {

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major, rows * cols entries

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }

  bool operator==(const Matrix&) const = default;
};

namespace detail {

inline void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw DimensionMismatchError("matrix shapes differ: " + std::to_string(a.rows) +
                                 "x" + std::to_string(a.cols) + " vs " +
                                 std::to_string(b.rows) + "x" + std::to_string(b.cols));
  }
}

}  // namespace detail

// m += weight * u v^T
inline void add_outer(Matrix& m, const std::vector<double>& u,
                      const std::vector<double>& v, double weight) {
  if (u.size() != m.rows || v.size() != m.cols) {
    throw DimensionMismatchError("outer product shape does not match matrix");
  }
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double w = weight * u[i];
    double* r = m.row(i);
    const double* vp = v.data();
    for (std::size_t j = 0; j < m.cols; ++j) r[j] += w * vp[j];
  }
}

// u^T m v
inline double bilinear(const std::vector<double>& u, const Matrix& m,
                       const std::vector<double>& v) {
  if (u.size() != m.rows || v.size() != m.cols) {
    throw DimensionMismatchError("bilinear form shape does not match matrix");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double* r = m.row(i);
    double rowdot = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) rowdot += r[j] * v[j];
    acc += u[i] * rowdot;
  }
  return acc;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) {
    throw DimensionMismatchError("inner dimensions differ in matrix product");
  }
  Matrix c(a.rows, b.cols);
  // i-k-j order: streams rows of b, vectorizes on the inner loop.
  for (std::size_t i = 0; i < a.rows; ++i) {
    double* cr = c.row(i);
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      const double* br = b.row(k);
      for (std::size_t j = 0; j < b.cols; ++j) cr[j] += aik * br[j];
    }
  }
  return c;
}

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  }
  return t;
}

inline Matrix add(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b);
  Matrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
  return c;
}

inline Matrix subtract(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b);
  Matrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
  return c;
}

// sum_ij a_ij * b_ij
inline double entrywise_dot(const Matrix& a, const Matrix& b) {
  detail::require_same_shape(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) acc += a.data[i] * b.data[i];
  return acc;
}

inline double frobenius_sq(const Matrix& m) { return entrywise_dot(m, m); }

}  // namespace gsketch
