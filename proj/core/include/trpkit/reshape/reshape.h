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
#ifndef TRPKIT_RESHAPE_RESHAPE_H_
#define TRPKIT_RESHAPE_RESHAPE_H_

#include <cstddef>
#include <optional>
#include <string_view>

#include "trpkit/linalg/matrix.h"
#include "trpkit/linalg/svd.h"
#include "trpkit/reshape/tensor.h"

namespace trpkit {
namespace reshape {

// How a 4-D filter bank is flattened before the SVD.
//
//   kChannelWise: n x (c*kh*kw); row i is filter i. Factors into a rank-k
//                 kh x kw convolution followed by a 1x1 convolution.
//   kSpatialWise: (c*kh) x (n*kw); entry (ci*kh + h, ni*kw + w) holds
//                 W[ni][ci][h][w]. Factors into a kh x 1 convolution
//                 followed by a 1 x kw convolution.
enum class DecompScheme { kChannelWise, kSpatialWise };

std::string_view SchemeName(DecompScheme scheme);
// Accepts "channel" / "spatial".
std::optional<DecompScheme> ParseScheme(std::string_view name);

linalg::Matrix ToMatrix(const WeightTensor &w, DecompScheme scheme);
WeightTensor FromMatrix(const linalg::Matrix &m, DecompScheme scheme,
                        const FilterShape &shape);

struct Projection {
  WeightTensor weights;
  linalg::TsvdResult tsvd;

  std::size_t rank() const { return tsvd.rank; }
};

// Replaces `w` by the rank-k TSVD reconstruction of its matrix view, with k
// chosen by the energy criterion.
Projection LowRankProject(const WeightTensor &w, DecompScheme scheme,
                          double energy);

// Two convolutions whose composition equals the projected filter bank.
// The first layer carries V^T (channel-wise) or U (spatial-wise); the second
// layer carries the other factor scaled by the singular values.
struct DecomposedPair {
  DecompScheme scheme = DecompScheme::kChannelWise;
  WeightTensor first;
  WeightTensor second;
  std::size_t rank = 0;
};

DecomposedPair DecomposeExport(const WeightTensor &w, DecompScheme scheme,
                               double energy);

}  // namespace reshape
}  // namespace trpkit

#endif  // TRPKIT_RESHAPE_RESHAPE_H_
