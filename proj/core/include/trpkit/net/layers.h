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
#ifndef TRPKIT_NET_LAYERS_H_
#define TRPKIT_NET_LAYERS_H_

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "trpkit/common/batch.h"
#include "trpkit/linalg/matrix.h"
#include "trpkit/reshape/tensor.h"

namespace trpkit {
namespace net {

// Stride 1, zero "same" padding: pad_top = (kh-1)/2, pad_left = (kw-1)/2.
// Computes cross-correlation, as deep-learning frameworks do.
struct Conv2DLayer {
  reshape::WeightTensor weights;
  std::vector<double> bias;
};

struct ReluLayer {};

// 2x2 average pooling with stride 2; an odd trailing row/column is dropped.
struct AvgPoolLayer {};

// y = weights * x + bias, weights is out x in; the input map is flattened.
struct DenseLayer {
  linalg::Matrix weights;
  std::vector<double> bias;
};

// Mean softmax cross-entropy over the batch; input is the flattened logits.
struct SoftmaxCrossEntropyLayer {};

using Layer = std::variant<Conv2DLayer, ReluLayer, AvgPoolLayer, DenseLayer,
                           SoftmaxCrossEntropyLayer>;

// Stable numeric tags; also the on-disk kind tag in checkpoints.
enum class LayerKind : std::uint32_t {
  kConv2D = 1,
  kRelu = 2,
  kAvgPool = 3,
  kDense = 4,
  kSoftmaxCrossEntropy = 5,
};

LayerKind KindOf(const Layer &layer);
std::string_view KindName(LayerKind kind);
bool HasParameters(const Layer &layer);

// Output shape of `layer` for input `in`; throws ConfigError when the layer
// cannot accept that input.
ImageShape OutputShape(const Layer &layer, const ImageShape &in);

}  // namespace net
}  // namespace trpkit

#endif  // TRPKIT_NET_LAYERS_H_
