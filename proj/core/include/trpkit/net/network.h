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
#ifndef TRPKIT_NET_NETWORK_H_
#define TRPKIT_NET_NETWORK_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trpkit/common/batch.h"
#include "trpkit/linalg/matrix.h"
#include "trpkit/net/model.h"

namespace trpkit {
namespace net {

struct ForwardResult {
  double loss = 0.0;                 // mean cross-entropy over the batch
  linalg::Matrix logits;             // batch x classes
  linalg::Matrix probabilities;      // batch x classes
  std::vector<std::int32_t> predicted;  // argmax, ties -> lowest index
};

// Gradient for one layer; both vectors are empty for parameter-free layers.
// `weights` mirrors the layer's flat weight storage.
struct ParamGrad {
  std::vector<double> weights;
  std::vector<double> bias;
};

struct GradientSet {
  std::vector<ParamGrad> layers;  // parallel to NetworkModel::layers
  double loss = 0.0;
};

ForwardResult Forward(const NetworkModel &model, const Batch &batch);

// Exact gradients of the mean loss with respect to every parameter.
GradientSet Backward(const NetworkModel &model, const Batch &batch);

struct EvalResult {
  double accuracy = 0.0;
  double mean_loss = 0.0;
  std::size_t correct = 0;
  std::size_t total = 0;
};

EvalResult Evaluate(const NetworkModel &model, const Batch &dataset);

// Index of the largest score; ties resolve to the lowest index.
std::size_t ArgMax(std::span<const double> scores);

// Flat weight storage of a parameterized layer (empty span otherwise).
std::span<double> WeightStorage(Layer &layer);
std::span<const double> WeightStorage(const Layer &layer);
std::span<double> BiasStorage(Layer &layer);
std::span<const double> BiasStorage(const Layer &layer);

}  // namespace net
}  // namespace trpkit

#endif  // TRPKIT_NET_NETWORK_H_
