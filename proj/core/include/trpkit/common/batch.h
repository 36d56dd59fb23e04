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
#ifndef TRPKIT_COMMON_BATCH_H_
#define TRPKIT_COMMON_BATCH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace trpkit {

// Channels x height x width of one image or activation map.
struct ImageShape {
  std::size_t c = 0;
  std::size_t h = 0;
  std::size_t w = 0;

  std::size_t count() const { return c * h * w; }
  std::string ToString() const {
    return "(" + std::to_string(c) + "," + std::to_string(h) + "," +
           std::to_string(w) + ")";
  }
  bool operator==(const ImageShape &) const = default;
};

// Images laid out sample-major, each as [c][h][w].
struct Batch {
  ImageShape shape;
  std::vector<double> images;
  std::vector<std::int32_t> labels;

  std::size_t size() const { return labels.size(); }
  const double *image(std::size_t i) const {
    return images.data() + i * shape.count();
  }
};

}  // namespace trpkit

#endif  // TRPKIT_COMMON_BATCH_H_
