// Copyright 2026 The dimcert Authors
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

#ifndef DIMCERT_MATRIX_HPP
#define DIMCERT_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "dimcert/common.hpp"

namespace dimcert {

/// Dense row-major matrix of doubles. All protocol matrices here are at most
/// 49x49, so no attempt is made at blocking or sparsity.
class Matrix {
 public:
  Matrix() = default;
  Matrix(index_t rows, index_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<double>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw input_error("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(index_t n) {
    Matrix m(n, n);
    for (index_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }

  double& operator()(index_t r, index_t c) { return data_[r * cols_ + c]; }
  double operator()(index_t r, index_t c) const { return data_[r * cols_ + c]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (index_t r = 0; r < rows_; ++r)
      for (index_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw input_error("matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (index_t r = 0; r < rows_; ++r) {
      for (index_t k = 0; k < cols_; ++k) {
        const double a = (*this)(r, k);
        if (a == 0.0) continue;
        for (index_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
      }
    }
    return out;
  }

  Matrix operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw input_error("matrix difference shape mismatch");
    Matrix out(rows_, cols_);
    for (index_t i = 0; i < data_.size(); ++i)
      out.data_[i] = data_[i] - rhs.data_[i];
    return out;
  }

  Matrix operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw input_error("matrix sum shape mismatch");
    Matrix out(rows_, cols_);
    for (index_t i = 0; i < data_.size(); ++i)
      out.data_[i] = data_[i] + rhs.data_[i];
    return out;
  }

  Matrix& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  double frobenius_norm() const {
    double ss = 0.0;
    for (double v : data_) ss += v * v;
    return std::sqrt(ss);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
  }

 private:
  index_t rows_ = 0;
  index_t cols_ = 0;
  std::vector<double> data_;
};

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).max_abs();
}

}  // namespace dimcert

#endif  // DIMCERT_MATRIX_HPP
