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
#include "trpkit/net/model.h"

#include <cmath>
#include <random>
#include <string>

#include "trpkit/common/error.h"

namespace trpkit {
namespace net {
namespace {

bool SameLayer(const Layer &a, const Layer &b) {
  if (a.index() != b.index()) return false;
  if (const auto *ca = std::get_if<Conv2DLayer>(&a)) {
    const auto &cb = std::get<Conv2DLayer>(b);
    return ca->weights == cb.weights && ca->bias == cb.bias;
  }
  if (const auto *da = std::get_if<DenseLayer>(&a)) {
    const auto &db = std::get<DenseLayer>(b);
    return da->weights == db.weights && da->bias == db.bias;
  }
  return true;
}

}  // namespace

void NetworkModel::Validate() const {
  if (input.count() == 0) throw ConfigError("model input shape is empty");
  if (layers.empty()) throw ConfigError("model has no layers");
  bool has_conv = false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const bool is_loss =
        std::holds_alternative<SoftmaxCrossEntropyLayer>(layers[i]);
    if (is_loss != (i + 1 == layers.size())) {
      throw ConfigError("the loss layer must appear exactly once, at the end");
    }
    has_conv = has_conv || std::holds_alternative<Conv2DLayer>(layers[i]);
  }
  if (!has_conv) throw ConfigError("model needs at least one conv2d layer");
  const auto shapes = ActivationShapes();
  if (shapes.back().count() < 2) {
    throw ConfigError("loss layer needs at least two class scores");
  }
}

std::vector<ImageShape> NetworkModel::ActivationShapes() const {
  std::vector<ImageShape> shapes;
  shapes.reserve(layers.size());
  ImageShape s = input;
  for (const Layer &layer : layers) {
    shapes.push_back(s);
    s = OutputShape(layer, s);
  }
  return shapes;
}

std::size_t NetworkModel::ClassCount() const {
  return ActivationShapes().back().count();
}

std::vector<std::size_t> NetworkModel::ConvLayerIndices() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (std::holds_alternative<Conv2DLayer>(layers[i])) idx.push_back(i);
  }
  return idx;
}

std::size_t NetworkModel::ParameterCount() const {
  std::size_t total = 0;
  for (const Layer &layer : layers) {
    if (const auto *conv = std::get_if<Conv2DLayer>(&layer)) {
      total += conv->weights.data().size() + conv->bias.size();
    } else if (const auto *dense = std::get_if<DenseLayer>(&layer)) {
      total += dense->weights.size() + dense->bias.size();
    }
  }
  return total;
}

bool NetworkModel::operator==(const NetworkModel &other) const {
  if (!(input == other.input) || rng_seed != other.rng_seed ||
      layers.size() != other.layers.size()) {
    return false;
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (!SameLayer(layers[i], other.layers[i])) return false;
  }
  return true;
}

NetworkModel MakeTinyConvNet(const ImageShape &input, std::size_t classes,
                             std::uint64_t seed) {
  if (classes < 2) throw ConfigError("TinyConvNet needs >= 2 classes");
  std::mt19937_64 rng(seed);
  auto uniform_fill = [&rng](std::span<double> out, std::size_t fan_in) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double &x : out) x = dist(rng);
  };

  auto make_conv = [&](std::size_t n, std::size_t c) {
    Conv2DLayer conv{reshape::WeightTensor({n, c, 3, 3}),
                     std::vector<double>(n, 0.0)};
    uniform_fill(conv.weights.data(), c * 9);
    return conv;
  };

  NetworkModel model;
  model.input = input;
  model.rng_seed = seed;
  model.layers.emplace_back(make_conv(8, input.c));
  model.layers.emplace_back(ReluLayer{});
  model.layers.emplace_back(AvgPoolLayer{});
  model.layers.emplace_back(make_conv(16, 8));
  model.layers.emplace_back(ReluLayer{});
  model.layers.emplace_back(AvgPoolLayer{});
  const ImageShape flat = model.ActivationShapes().back();
  const ImageShape pooled = OutputShape(model.layers.back(), flat);
  DenseLayer dense{linalg::Matrix(classes, pooled.count()),
                   std::vector<double>(classes, 0.0)};
  uniform_fill(dense.weights.data(), pooled.count());
  model.layers.emplace_back(std::move(dense));
  model.layers.emplace_back(SoftmaxCrossEntropyLayer{});
  model.Validate();
  return model;
}

}  // namespace net
}  // namespace trpkit
