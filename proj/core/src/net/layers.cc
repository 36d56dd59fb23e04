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
#include "trpkit/net/layers.h"

#include <string>

#include "trpkit/common/error.h"

namespace trpkit {
namespace net {

LayerKind KindOf(const Layer &layer) {
  switch (layer.index()) {
    case 0:
      return LayerKind::kConv2D;
    case 1:
      return LayerKind::kRelu;
    case 2:
      return LayerKind::kAvgPool;
    case 3:
      return LayerKind::kDense;
    default:
      return LayerKind::kSoftmaxCrossEntropy;
  }
}

std::string_view KindName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv2D:
      return "conv2d";
    case LayerKind::kRelu:
      return "relu";
    case LayerKind::kAvgPool:
      return "avgpool2x2";
    case LayerKind::kDense:
      return "dense";
    case LayerKind::kSoftmaxCrossEntropy:
      return "softmax_ce";
  }
  return "unknown";
}

bool HasParameters(const Layer &layer) {
  return std::holds_alternative<Conv2DLayer>(layer) ||
         std::holds_alternative<DenseLayer>(layer);
}

ImageShape OutputShape(const Layer &layer, const ImageShape &in) {
  if (const auto *conv = std::get_if<Conv2DLayer>(&layer)) {
    const auto &s = conv->weights.shape();
    if (s.c != in.c) {
      throw ConfigError("conv2d expects " + std::to_string(s.c) +
                        " input channels, got " + in.ToString());
    }
    if (conv->bias.size() != s.n) {
      throw ConfigError("conv2d bias length does not match filter count");
    }
    return {s.n, in.h, in.w};
  }
  if (std::holds_alternative<AvgPoolLayer>(layer)) {
    if (in.h < 2 || in.w < 2) {
      throw ConfigError("avgpool2x2 needs spatial size >= 2, got " +
                        in.ToString());
    }
    return {in.c, in.h / 2, in.w / 2};
  }
  if (const auto *dense = std::get_if<DenseLayer>(&layer)) {
    if (dense->weights.cols() != in.count()) {
      throw ConfigError("dense expects " +
                        std::to_string(dense->weights.cols()) +
                        " inputs, got " + in.ToString());
    }
    if (dense->bias.size() != dense->weights.rows()) {
      throw ConfigError("dense bias length does not match output count");
    }
    return {dense->weights.rows(), 1, 1};
  }
  return in;
}

}  // namespace net
}  // namespace trpkit
