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
#ifndef TRPKIT_RESHAPE_TENSOR_H_
#define TRPKIT_RESHAPE_TENSOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace trpkit {
namespace reshape {

// Filter-bank dimensions: output channels, input channels, kernel height,
// kernel width.
struct FilterShape {
  std::size_t n = 0;
  std::size_t c = 0;
  std::size_t kh = 0;
  std::size_t kw = 0;

  std::size_t count() const { return n * c * kh * kw; }
  std::string ToString() const;
  bool operator==(const FilterShape &) const = default;
};

// Convolution filter bank stored as [n][c][kh][kw].
class WeightTensor {
 public:
  WeightTensor() = default;
  // Zero-filled.
  explicit WeightTensor(FilterShape shape);
  WeightTensor(FilterShape shape, std::vector<double> data);

  const FilterShape &shape() const { return shape_; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  std::size_t Index(std::size_t n, std::size_t c, std::size_t h,
                    std::size_t w) const {
    return ((n * shape_.c + c) * shape_.kh + h) * shape_.kw + w;
  }
  double &at(std::size_t n, std::size_t c, std::size_t h, std::size_t w) {
    return data_[Index(n, c, h, w)];
  }
  double at(std::size_t n, std::size_t c, std::size_t h,
            std::size_t w) const {
    return data_[Index(n, c, h, w)];
  }

  double FrobeniusNorm() const;

  bool operator==(const WeightTensor &) const = default;

 private:
  FilterShape shape_;
  std::vector<double> data_;
};

}  // namespace reshape
}  // namespace trpkit

#endif  // TRPKIT_RESHAPE_TENSOR_H_
