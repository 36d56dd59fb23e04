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
#ifndef TRPKIT_TRP_OPTIMIZER_H_
#define TRPKIT_TRP_OPTIMIZER_H_

#include <vector>

#include "trpkit/common/batch.h"
#include "trpkit/net/model.h"
#include "trpkit/net/network.h"
#include "trpkit/trp/config.h"

namespace trpkit {
namespace trp {

// Momentum buffers, parallel to NetworkModel::layers.
struct OptimizerState {
  std::vector<net::ParamGrad> velocity;
};

OptimizerState MakeOptimizerState(const net::NetworkModel &model);

struct StepReport {
  double loss = 0.0;  // batch loss at the pre-update weights
  // ||W_after - W_before||_F of each layer's weights (0 for layers without
  // parameters).
  std::vector<double> weight_step_norms;
};

// One momentum-SGD update:
//   g = grad f + weight_decay * p  (+ lambda * U_r V_r^T for conv weights,
//       taken in the configured matrix view at the pre-update weights)
//   v = momentum * v + g
//   p = p - lr * v
// Throws NumericalError naming the layer if any data gradient is non-finite.
StepReport SgdStep(net::NetworkModel &model, OptimizerState &state,
                   const Batch &batch, double lr, const TrpConfig &config);

}  // namespace trp
}  // namespace trpkit

#endif  // TRPKIT_TRP_OPTIMIZER_H_
