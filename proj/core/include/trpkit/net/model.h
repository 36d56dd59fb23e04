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
#ifndef TRPKIT_NET_MODEL_H_
#define TRPKIT_NET_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trpkit/common/batch.h"
#include "trpkit/net/layers.h"

namespace trpkit {
namespace net {

struct NetworkModel {
  ImageShape input;
  std::vector<Layer> layers;
  std::uint64_t rng_seed = 0;

  // Throws ConfigError unless shapes chain, the last layer (and only that
  // one) is the loss, and at least one Conv2D is present.
  void Validate() const;

  // Activation shapes: element i is the input to layers[i]; the last element
  // is the loss input.
  std::vector<ImageShape> ActivationShapes() const;
  std::size_t ClassCount() const;
  std::vector<std::size_t> ConvLayerIndices() const;
  std::size_t ParameterCount() const;

  bool operator==(const NetworkModel &) const;
};

// conv(8, c, 3x3) -> relu -> avgpool -> conv(16, 8, 3x3) -> relu -> avgpool
// -> dense(classes) -> softmax cross-entropy. Weights are fan-in scaled
// uniform draws from `seed`; biases start at zero.
NetworkModel MakeTinyConvNet(const ImageShape &input, std::size_t classes,
                             std::uint64_t seed);

}  // namespace net
}  // namespace trpkit

#endif  // TRPKIT_NET_MODEL_H_
