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
#ifndef TRPKIT_RESHAPE_FLOPS_H_
#define TRPKIT_RESHAPE_FLOPS_H_

#include <cstddef>
#include <cstdint>

#include "trpkit/reshape/reshape.h"
#include "trpkit/reshape/tensor.h"

namespace trpkit {
namespace reshape {

// Multiply-accumulate counts for one convolution layer before and after
// decomposition at rank k, on an out_h x out_w output map.
struct FlopsReport {
  std::uint64_t original = 0;
  std::uint64_t decomposed = 0;
  double speedup = 0.0;
};

FlopsReport ComputeFlops(const FilterShape &shape, std::size_t out_h,
                         std::size_t out_w, DecompScheme scheme,
                         std::size_t rank);

}  // namespace reshape
}  // namespace trpkit

#endif  // TRPKIT_RESHAPE_FLOPS_H_
