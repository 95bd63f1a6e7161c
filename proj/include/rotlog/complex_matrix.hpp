// Copyright 2026 The rotlog Authors
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

/**
 * @file complex_matrix.hpp
 * @brief Dense complex matrices sized for few-qubit operators.
 *
 * Everything in this toolkit works on small dense operators (at most
 * 2^12 x 2^12), so a flat row-major buffer with explicit loops is both
 * simpler and faster than pulling in a full linear-algebra dependency.
 */

#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotlog {

using cplx = std::complex<double>;

/// Hard cap on operator dimension (12 qubits). Dense storage above this
/// would be hundreds of megabytes per matrix; the toolkit never needs it.
inline constexpr std::size_t kMaxDim = std::size_t{1} << 12;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {
    check_dims(rows, cols);
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    check_dims(rows, cols);
    if (data_.size() != rows_ * cols_) {
      throw std::invalid_argument("ComplexMatrix: data size does not match shape");
    }
  }

  /// Convenience: build a square matrix from a nested initializer list.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    check_dims(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw std::invalid_argument("ComplexMatrix: ragged initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  const std::vector<cplx>& data() const { return data_; }

  ComplexMatrix operator+(const ComplexMatrix& other) const {
    require_same_shape(other, "add");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
    return out;
  }

  ComplexMatrix operator-(const ComplexMatrix& other) const {
    require_same_shape(other, "subtract");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
    return out;
  }

  ComplexMatrix operator*(const ComplexMatrix& other) const {
    if (cols_ != other.rows_) {
      throw std::invalid_argument("ComplexMatrix: inner dimensions do not match (" +
                                  shape_string() + " * " + other.shape_string() + ")");
    }
    ComplexMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const cplx a = data_[i * cols_ + k];
        if (a == cplx{0.0, 0.0}) continue;
        const cplx* src = &other.data_[k * other.cols_];
        cplx* dst = &out.data_[i * other.cols_];
        for (std::size_t j = 0; j < other.cols_; ++j) dst[j] += a * src[j];
      }
    }
    return out;
  }

  ComplexMatrix operator*(cplx scalar) const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * scalar;
    return out;
  }

  friend ComplexMatrix operator*(cplx scalar, const ComplexMatrix& m) { return m * scalar; }

  /// Conjugate transpose.
  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
  }

  cplx trace() const {
    if (rows_ != cols_) throw std::invalid_argument("ComplexMatrix: trace of non-square matrix");
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Frobenius norm.
  double norm() const {
    double s = 0.0;
    for (const cplx& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  bool is_unitary(double tol = 1e-10) const {
    if (rows_ != cols_) return false;
    const ComplexMatrix delta = (*this) * adjoint() - identity(rows_);
    return max_abs(delta) < tol;
  }

  std::string shape_string() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_;
    return os.str();
  }

  friend double max_abs(const ComplexMatrix& m) {
    double mx = 0.0;
    for (const cplx& v : m.data_) mx = std::max(mx, std::abs(v));
    return mx;
  }

  friend double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.require_same_shape(b, "compare");
    double mx = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
      mx = std::max(mx, std::abs(a.data_[i] - b.data_[i]));
    }
    return mx;
  }

 private:
  static void check_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("ComplexMatrix: empty shape");
    }
    if (rows > kMaxDim || cols > kMaxDim) {
      throw std::invalid_argument("ComplexMatrix: dimension exceeds 2^12 cap");
    }
  }

  void require_same_shape(const ComplexMatrix& other, const char* what) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw std::invalid_argument(std::string("ComplexMatrix: cannot ") + what +
                                  " shapes " + shape_string() + " and " + other.shape_string());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Kronecker (tensor) product, left factor on the high-order bits.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cplx f = a(ia, ja);
      if (f == cplx{0.0, 0.0}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
        }
      }
    }
  }
  return out;
}

/// Kronecker product of a factor sequence, in the given order.
inline ComplexMatrix tensor(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor: empty factor sequence");
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

/// Matrix commutator [A, B] = AB - BA.
inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

}  // namespace rotlog
