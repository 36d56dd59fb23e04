// Copyright 2026 The trpkit Authors. All Rights Reserved.
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
#ifndef TRPKIT_LINALG_MATRIX_H_
#define TRPKIT_LINALG_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

namespace trpkit {
namespace linalg {

// Dense row-major matrix of doubles. Entries supplied at construction must be
// finite; element access afterwards is unchecked.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix Identity(std::size_t n);
  static Matrix Diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<double> row(std::size_t r) {
    return std::span<double>(data_).subspan(r * cols_, cols_);
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

  Matrix Transposed() const;
  bool AllFinite() const;

  bool operator==(const Matrix &other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix Multiply(const Matrix &a, const Matrix &b);
// a * b^T
Matrix MultiplyTransposed(const Matrix &a, const Matrix &b);
Matrix Add(const Matrix &a, const Matrix &b);
Matrix Subtract(const Matrix &a, const Matrix &b);
Matrix Scaled(const Matrix &a, double factor);

// Sum of elementwise products, <a, b>.
double InnerProduct(const Matrix &a, const Matrix &b);
double MaxAbs(const Matrix &a);

void CheckSameShape(const Matrix &a, const Matrix &b, const char *what);

}  // namespace linalg
}  // namespace trpkit

#endif  // TRPKIT_LINALG_MATRIX_H_
