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
#ifndef TRPKIT_TRP_TRAINER_H_
#define TRPKIT_TRP_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "trpkit/common/batch.h"
#include "trpkit/data/dataset.h"
#include "trpkit/net/model.h"
#include "trpkit/trp/config.h"
#include "trpkit/trp/optimizer.h"
#include "trpkit/trp/trajectory.h"

namespace trpkit {
namespace trp {

// Largest and summed per-step weight change of one layer since the last
// projection.
class GradBoundTracker {
 public:
  void Reset() {
    max_ = 0.0;
    sum_ = 0.0;
    steps_ = 0;
  }
  void Observe(double step_norm);

  double max() const { return max_; }
  double sum() const { return sum_; }
  std::size_t steps() const { return steps_; }

 private:
  double max_ = 0.0;
  double sum_ = 0.0;
  std::size_t steps_ = 0;
};

// Replaces every conv weight tensor by its low-rank projection at iteration
// `t` and returns one event per conv layer. When `trackers` is given
// (indexed like model.layers) the bound statistic is filled from the window
// that just ended and the trackers are reset.
std::vector<RankEvent> ProjectConvLayers(
    net::NetworkModel &model, const TrpConfig &config, std::uint64_t t,
    std::vector<GradBoundTracker> *trackers = nullptr);

struct TrpStepResult {
  StepReport step;
  std::vector<RankEvent> events;
};

// Projection iteration: project all conv layers, then take one SGD step with
// gradients evaluated at the projected weights. Requires t % period_m == 0.
TrpStepResult TrpStep(net::NetworkModel &model, OptimizerState &state,
                      const Batch &batch, double lr, const TrpConfig &config,
                      std::uint64_t t,
                      std::vector<GradBoundTracker> *trackers = nullptr);

// Iteration-level driver: picks the projection or the plain branch from the
// iteration counter.
class TrpTrainer {
 public:
  TrpTrainer(net::NetworkModel model, TrpConfig config);

  StepReport Step(const Batch &batch, double lr);
  // Projection without a gradient step, taken when the current iteration
  // index is a multiple of the period (closes the last window).
  void FinishProjection();

  bool ProjectionDue() const;
  std::uint64_t iteration() const { return t_; }
  const net::NetworkModel &model() const { return model_; }
  net::NetworkModel &mutable_model() { return model_; }
  const RankTrajectory &trajectory() const { return trajectory_; }
  const TrpConfig &config() const { return config_; }

 private:
  net::NetworkModel model_;
  TrpConfig config_;
  OptimizerState state_;
  std::vector<GradBoundTracker> trackers_;
  RankTrajectory trajectory_;
  std::uint64_t t_ = 0;
};

struct EpochMetrics {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double test_accuracy = 0.0;
  double test_loss = 0.0;
};

struct TrainResult {
  net::NetworkModel model;
  RankTrajectory trajectory;
  std::vector<EpochMetrics> history;
  std::uint64_t iterations = 0;
};

using EpochCallback = std::function<void(const EpochMetrics &)>;

// Runs epochs * ceil(train_size / batch_size) iterations. Each epoch visits
// the training split in an order shuffled from config.seed. Test metrics are
// taken at the end of every epoch (after the closing projection, for the
// last one).
TrainResult Train(net::NetworkModel model, const data::SplitDataset &data,
                  const TrpConfig &config, const EpochCallback &on_epoch = {});

std::size_t IterationsPerEpoch(std::size_t train_size, std::size_t batch_size);

}  // namespace trp
}  // namespace trpkit

#endif  // TRPKIT_TRP_TRAINER_H_
