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
#include "trpkit/trp/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "trpkit/common/error.h"
#include "trpkit/net/network.h"
#include "trpkit/reshape/reshape.h"
#include "trpkit/trp/energy.h"

namespace trpkit {
namespace trp {

void GradBoundTracker::Observe(double step_norm) {
  max_ = std::max(max_, step_norm);
  sum_ += step_norm;
  ++steps_;
}

std::vector<RankEvent> ProjectConvLayers(
    net::NetworkModel &model, const TrpConfig &config, std::uint64_t t,
    std::vector<GradBoundTracker> *trackers) {
  if (!config.period_m) throw ConfigError("projection disabled in config");
  const std::uint64_t m = *config.period_m;
  const double sqrt_e = std::sqrt(config.energy_e);

  std::vector<RankEvent> events;
  for (std::size_t i : model.ConvLayerIndices()) {
    auto &conv = std::get<net::Conv2DLayer>(model.layers[i]);
    RankEvent ev;
    ev.layer = i;
    ev.t = t;
    ev.z = t / m;
    ev.fro_norm = conv.weights.FrobeniusNorm();

    if (trackers != nullptr && (*trackers)[i].steps() > 0) {
      const double g = (*trackers)[i].max();
      const double mg = static_cast<double>(m) * g;
      ev.bound_stat = ev.fro_norm > 0.0
                          ? mg / ev.fro_norm
                          : (mg > 0.0 ? std::numeric_limits<double>::infinity()
                                      : 0.0);
      ev.bound_holds = ev.bound_stat < sqrt_e;
    }
    if (trackers != nullptr) (*trackers)[i].Reset();

    reshape::Projection p =
        reshape::LowRankProject(conv.weights, config.scheme, config.energy_e);
    ev.rank = p.rank();
    ev.full_rank = p.tsvd.full_sigma.size();
    ev.discarded_energy = p.tsvd.discarded_energy;
    const auto &kept = p.tsvd.factors.sigma;
    if (std::any_of(kept.begin(), kept.end(), [](double s) { return s > 0.0; })) {
      ev.energy_ratios = EnergyRatios(kept, kept.size());
    } else {
      ev.energy_ratios.assign(kept.size(), 0.0);
    }
    conv.weights = std::move(p.weights);
    events.push_back(std::move(ev));
  }
  return events;
}

TrpStepResult TrpStep(net::NetworkModel &model, OptimizerState &state,
                      const Batch &batch, double lr, const TrpConfig &config,
                      std::uint64_t t,
                      std::vector<GradBoundTracker> *trackers) {
  if (!config.period_m || t % *config.period_m != 0) {
    throw ConfigError("TrpStep called at iteration " + std::to_string(t) +
                      " which is not a projection iteration");
  }
  TrpStepResult r;
  r.events = ProjectConvLayers(model, config, t, trackers);
  r.step = SgdStep(model, state, batch, lr, config);
  return r;
}

TrpTrainer::TrpTrainer(net::NetworkModel model, TrpConfig config)
    : model_(std::move(model)), config_(std::move(config)) {
  config_.Validate();
  model_.Validate();
  state_ = MakeOptimizerState(model_);
  trackers_.resize(model_.layers.size());
}

bool TrpTrainer::ProjectionDue() const {
  return config_.period_m && t_ % *config_.period_m == 0;
}

StepReport TrpTrainer::Step(const Batch &batch, double lr) {
  StepReport report;
  if (ProjectionDue()) {
    TrpStepResult r = TrpStep(model_, state_, batch, lr, config_, t_, &trackers_);
    trajectory_.events.insert(trajectory_.events.end(), r.events.begin(),
                              r.events.end());
    report = std::move(r.step);
  } else {
    report = SgdStep(model_, state_, batch, lr, config_);
  }
  for (std::size_t i = 0; i < trackers_.size(); ++i) {
    if (net::HasParameters(model_.layers[i])) {
      trackers_[i].Observe(report.weight_step_norms[i]);
    }
  }
  ++t_;
  return report;
}

void TrpTrainer::FinishProjection() {
  if (!ProjectionDue()) return;
  std::vector<RankEvent> events =
      ProjectConvLayers(model_, config_, t_, &trackers_);
  trajectory_.events.insert(trajectory_.events.end(), events.begin(),
                            events.end());
}

std::size_t IterationsPerEpoch(std::size_t train_size, std::size_t batch_size) {
  return (train_size + batch_size - 1) / batch_size;
}

TrainResult Train(net::NetworkModel model, const data::SplitDataset &data,
                  const TrpConfig &config, const EpochCallback &on_epoch) {
  config.Validate();
  data.train.Validate();
  if (data.train.size() == 0) throw ConfigError("training split is empty");
  if (data.test.size() == 0) throw ConfigError("test split is empty");

  TrpTrainer trainer(std::move(model), config);
  const std::size_t n = data.train.size();
  const std::size_t per_epoch = IterationsPerEpoch(n, config.batch_size);

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainResult result;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    const double lr = config.LearningRate(epoch);
    double loss_sum = 0.0;
    for (std::size_t b = 0; b < per_epoch; ++b) {
      const std::size_t begin = b * config.batch_size;
      const std::size_t end = std::min(n, begin + config.batch_size);
      const Batch batch = data.train.MakeBatch(
          std::span<const std::size_t>(order).subspan(begin, end - begin));
      loss_sum += trainer.Step(batch, lr).loss;
    }
    if (epoch + 1 == config.epochs) trainer.FinishProjection();

    EpochMetrics m;
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(per_epoch);
    const net::EvalResult eval = net::Evaluate(trainer.model(), data.test.samples);
    m.test_accuracy = eval.accuracy;
    m.test_loss = eval.mean_loss;
    result.history.push_back(m);
    if (on_epoch) on_epoch(m);
  }
  result.iterations = trainer.iteration();
  result.model = trainer.model();
  result.trajectory = trainer.trajectory();
  return result;
}

}  // namespace trp
}  // namespace trpkit
