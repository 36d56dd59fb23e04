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
#include "trpkit/reshape/tensor.h"

#include <algorithm>
#include <cmath>

#include "trpkit/common/error.h"

namespace trpkit {
namespace reshape {
namespace {

void ValidateShape(const FilterShape &s) {
  if (s.n == 0 || s.c == 0 || s.kh == 0 || s.kw == 0) {
    throw ConfigError("filter dimensions must be >= 1, got " + s.ToString());
  }
}

}  // namespace

std::string FilterShape::ToString() const {
  return "(" + std::to_string(n) + "," + std::to_string(c) + "," +
         std::to_string(kh) + "," + std::to_string(kw) + ")";
}

WeightTensor::WeightTensor(FilterShape shape)
    : shape_(shape), data_(shape.count(), 0.0) {
  ValidateShape(shape_);
}

WeightTensor::WeightTensor(FilterShape shape, std::vector<double> data)
    : shape_(shape), data_(std::move(data)) {
  ValidateShape(shape_);
  if (data_.size() != shape_.count()) {
    throw ConfigError("filter data length " + std::to_string(data_.size()) +
                      " does not match shape " + shape_.ToString());
  }
  if (!std::all_of(data_.begin(), data_.end(),
                   [](double x) { return std::isfinite(x); })) {
    throw NumericalError("filter tensor constructed with non-finite entries");
  }
}

double WeightTensor::FrobeniusNorm() const {
  double acc = 0.0;
  for (double x : data_) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace reshape
}  // namespace trpkit
