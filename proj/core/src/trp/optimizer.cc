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
#include "trpkit/trp/optimizer.h"

#include <cmath>
#include <string>

#include "trpkit/common/error.h"
#include "trpkit/linalg/norms.h"
#include "trpkit/reshape/reshape.h"

namespace trpkit {
namespace trp {
namespace {

bool AllFinite(const std::vector<double> &v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

OptimizerState MakeOptimizerState(const net::NetworkModel &model) {
  OptimizerState s;
  s.velocity.resize(model.layers.size());
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    s.velocity[i].weights.assign(net::WeightStorage(model.layers[i]).size(),
                                 0.0);
    s.velocity[i].bias.assign(net::BiasStorage(model.layers[i]).size(), 0.0);
  }
  return s;
}

StepReport SgdStep(net::NetworkModel &model, OptimizerState &state,
                   const Batch &batch, double lr, const TrpConfig &config) {
  if (state.velocity.size() != model.layers.size()) {
    state = MakeOptimizerState(model);
  }
  net::GradientSet grads = net::Backward(model, batch);

  StepReport report;
  report.loss = grads.loss;
  report.weight_step_norms.assign(model.layers.size(), 0.0);

  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    net::Layer &layer = model.layers[i];
    if (!net::HasParameters(layer)) continue;
    net::ParamGrad &g = grads.layers[i];
    if (!AllFinite(g.weights) || !AllFinite(g.bias)) {
      throw NumericalError("non-finite gradient in layer " +
                           std::to_string(i) + " (" +
                           std::string(net::KindName(net::KindOf(layer))) +
                           ")");
    }

    if (config.nuclear_lambda > 0.0) {
      if (const auto *conv = std::get_if<net::Conv2DLayer>(&layer)) {
        const linalg::Matrix sub = linalg::NuclearSubgradient(
            reshape::ToMatrix(conv->weights, config.scheme));
        const reshape::WeightTensor sub_t =
            reshape::FromMatrix(sub, config.scheme, conv->weights.shape());
        const auto s = sub_t.data();
        for (std::size_t j = 0; j < g.weights.size(); ++j) {
          g.weights[j] += config.nuclear_lambda * s[j];
        }
      }
    }

    std::span<double> w = net::WeightStorage(layer);
    std::span<double> b = net::BiasStorage(layer);
    net::ParamGrad &v = state.velocity[i];
    double moved = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      v.weights[j] = config.momentum * v.weights[j] + g.weights[j] +
                     config.weight_decay * w[j];
      const double before = w[j];
      w[j] -= lr * v.weights[j];
      moved += (w[j] - before) * (w[j] - before);
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      v.bias[j] = config.momentum * v.bias[j] + g.bias[j] +
                  config.weight_decay * b[j];
      b[j] -= lr * v.bias[j];
    }
    report.weight_step_norms[i] = std::sqrt(moved);
  }
  return report;
}

}  // namespace trp
}  // namespace trpkit
