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
#ifndef TRPKIT_TRP_CONFIG_H_
#define TRPKIT_TRP_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "trpkit/reshape/reshape.h"

namespace trpkit {
namespace trp {

enum class TrainMode { kScratch, kFinetune };

// Learning rate `lr` applies from `epoch` (inclusive) until the next step.
struct LrStep {
  std::size_t epoch = 0;
  double lr = 0.0;

  bool operator==(const LrStep &) const = default;
};

struct TrpConfig {
  // Iterations between low-rank projections; nullopt disables projection.
  std::optional<std::size_t> period_m = 20;
  // Fraction of squared singular-value mass a projection may discard.
  double energy_e = 0.02;
  // Nuclear-norm regularization weight; 0 disables it.
  double nuclear_lambda = 0.0003;
  reshape::DecompScheme scheme = reshape::DecompScheme::kChannelWise;
  std::vector<LrStep> lr_schedule = {{0, 0.1}, {20, 0.01}, {30, 0.001}};
  double momentum = 0.9;
  double weight_decay = 1e-4;
  std::size_t epochs = 40;
  std::size_t batch_size = 30;
  std::uint64_t seed = 1;
  TrainMode mode = TrainMode::kScratch;

  // Throws ConfigError when a field is out of range.
  void Validate() const;
  double LearningRate(std::size_t epoch) const;
  bool ProjectionEnabled() const { return period_m.has_value(); }

  bool operator==(const TrpConfig &) const = default;
};

// The four ablation cells. They differ only in (nuclear_lambda, period_m):
//   baseline     lambda = 0,       never project
//   baseline_nu  lambda = 0.0003,  never project
//   trp          lambda = 0,       project every 20 iterations
//   trp_nu       lambda = 0.0003,  project every 20 iterations
enum class Preset { kBaseline, kBaselineNu, kTrp, kTrpNu };

inline constexpr double kDefaultNuclearLambda = 0.0003;
inline constexpr std::size_t kDefaultPeriod = 20;

std::optional<Preset> ParsePreset(std::string_view name);
std::string_view PresetName(Preset preset);
void ApplyPreset(TrpConfig &config, Preset preset);

// JSON schema (all keys optional, unknown keys rejected):
//   period_m        integer >= 1, or "inf" / null to disable projection
//   energy_e        number in (0, 1)
//   nuclear_lambda  number >= 0
//   scheme          "channel" | "spatial"
//   lr_schedule     [[epoch, lr], ...] with strictly increasing epochs from 0
//   momentum        number in [0, 1)
//   weight_decay    number >= 0
//   epochs          integer >= 1
//   batch_size      integer >= 1
//   seed            integer
//   mode            "scratch" | "finetune"
nlohmann::json ToJson(const TrpConfig &config);
// Starts from `base` and overrides the keys present in `j`.
TrpConfig TrpConfigFromJson(const nlohmann::json &j, TrpConfig base = {});

}  // namespace trp
}  // namespace trpkit

#endif  // TRPKIT_TRP_CONFIG_H_
