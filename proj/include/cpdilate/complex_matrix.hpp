// Copyright 2026 the cpdilate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "cpdilate/errors.hpp"

namespace cpdilate {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major, binary64 components.
///
/// Zero-sized shapes (0 x n, n x 0, 0 x 0) are first-class values; they show
/// up naturally for rank-0 (zero map) dilations. Constructors that accept
/// entry data reject non-finite values.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw ShapeMismatch("ComplexMatrix: entry count does not match shape");
    check_finite();
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw ShapeMismatch("ComplexMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
    check_finite();
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
    return m;
  }

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  /// Matrix unit E_ij = |e_i><e_j| of size n x n.
  static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    ComplexMatrix m(n, n);
    m(i, j) = Complex(1.0, 0.0);
    return m;
  }

  /// Standard basis column vector e_i of length n.
  static ComplexMatrix basis_vector(std::size_t n, std::size_t i) {
    ComplexMatrix v(n, 1);
    v(i, 0) = Complex(1.0, 0.0);
    return v;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<Complex>& data() const { return data_; }

  bool same_shape(const ComplexMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    if (!same_shape(o)) throw ShapeMismatch("matrix add: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    if (!same_shape(o)) throw ShapeMismatch("matrix sub: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) {
    m *= s;
    return m;
  }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) {
    m *= s;
    return m;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a,
                                 const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw ShapeMismatch("matrix mul: inner dimension");
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

 private:
  void check_finite() const {
    for (const auto& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error("ComplexMatrix: non-finite entry");
    }
  }

  std::size_t rows_, cols_;
  std::vector<Complex> data_;
};

/// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
  return r;
}

/// Kronecker product. Block (i,j) of the result is A(i,j) * B, so the row
/// index of block element (i,k) is i*B.rows() + k (left factor major).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

inline Complex trace(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("trace: matrix not square");
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// Frobenius norm. Accumulation order is chosen invariant under
/// transposition, so ||M||_F == ||adjoint(M)||_F holds exactly, not just up
/// to rounding: square matrices sum transpose-symmetric entry pairs
/// together, rectangular ones sum along the longer axis first.
inline double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  if (m.rows() == m.cols()) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      s += std::norm(m(i, i));
      for (std::size_t j = i + 1; j < m.cols(); ++j)
        s += std::norm(m(i, j)) + std::norm(m(j, i));
    }
  } else if (m.rows() < m.cols()) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
  } else {
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i) s += std::norm(m(i, j));
  }
  return std::sqrt(s);
}

/// Largest entry magnitude (max norm).
inline double max_abs(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.data()) s = std::max(s, std::abs(z));
  return s;
}

/// <a, b> = sum_k conj(a_k) b_k for column vectors, linear in the second
/// argument.
inline Complex inner_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != 1 || b.cols() != 1 || a.rows() != b.rows())
    throw ShapeMismatch("inner_product: expects equal-length column vectors");
  Complex s(0.0, 0.0);
  for (std::size_t k = 0; k < a.rows(); ++k)
    s += std::conj(a(k, 0)) * b(k, 0);
  return s;
}

}  // namespace cpdilate
