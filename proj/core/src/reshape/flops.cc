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
#include "trpkit/reshape/flops.h"

#include "trpkit/common/error.h"

namespace trpkit {
namespace reshape {

FlopsReport ComputeFlops(const FilterShape &s, std::size_t out_h,
                         std::size_t out_w, DecompScheme scheme,
                         std::size_t rank) {
  if (s.n == 0 || s.c == 0 || s.kh == 0 || s.kw == 0 || out_h == 0 ||
      out_w == 0 || rank == 0) {
    throw ConfigError("ComputeFlops: all counts must be >= 1");
  }
  const std::uint64_t hw = static_cast<std::uint64_t>(out_h) * out_w;
  const std::uint64_t k = rank;
  FlopsReport r;
  r.original = static_cast<std::uint64_t>(s.n) * s.c * s.kh * s.kw * hw;
  if (scheme == DecompScheme::kChannelWise) {
    r.decomposed = k * s.c * s.kh * s.kw * hw + s.n * k * hw;
  } else {
    r.decomposed = k * s.c * s.kh * hw + s.n * k * s.kw * hw;
  }
  r.speedup = static_cast<double>(r.original) /
              static_cast<double>(r.decomposed);
  return r;
}

}  // namespace reshape
}  // namespace trpkit
