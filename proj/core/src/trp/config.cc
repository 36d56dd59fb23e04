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
#include "trpkit/trp/config.h"

#include <cmath>
#include <string>

#include "trpkit/common/error.h"

namespace trpkit {
namespace trp {
namespace {

template <typename T>
T Get(const nlohmann::json &j, const char *key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

std::size_t GetCount(const nlohmann::json &j, const char *key) {
  const nlohmann::json &v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string("config key '") + key +
                      "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

void TrpConfig::Validate() const {
  if (period_m && *period_m == 0) throw ConfigError("period_m must be >= 1");
  if (!(energy_e > 0.0 && energy_e < 1.0)) {
    throw ConfigError("energy_e must lie in (0, 1)");
  }
  if (!(nuclear_lambda >= 0.0) || !std::isfinite(nuclear_lambda)) {
    throw ConfigError("nuclear_lambda must be finite and >= 0");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw ConfigError("momentum must lie in [0, 1)");
  }
  if (!(weight_decay >= 0.0) || !std::isfinite(weight_decay)) {
    throw ConfigError("weight_decay must be finite and >= 0");
  }
  if (epochs == 0) throw ConfigError("epochs must be >= 1");
  if (batch_size == 0) throw ConfigError("batch_size must be >= 1");
  if (lr_schedule.empty() || lr_schedule.front().epoch != 0) {
    throw ConfigError("lr_schedule must start at epoch 0");
  }
  for (std::size_t i = 0; i < lr_schedule.size(); ++i) {
    if (!(lr_schedule[i].lr >= 0.0) || !std::isfinite(lr_schedule[i].lr)) {
      throw ConfigError("learning rates must be finite and >= 0");
    }
    if (i > 0 && lr_schedule[i].epoch <= lr_schedule[i - 1].epoch) {
      throw ConfigError("lr_schedule epochs must be strictly increasing");
    }
  }
}

double TrpConfig::LearningRate(std::size_t epoch) const {
  double lr = lr_schedule.front().lr;
  for (const LrStep &s : lr_schedule) {
    if (s.epoch <= epoch) lr = s.lr;
  }
  return lr;
}

std::optional<Preset> ParsePreset(std::string_view name) {
  if (name == "baseline") return Preset::kBaseline;
  if (name == "baseline_nu") return Preset::kBaselineNu;
  if (name == "trp") return Preset::kTrp;
  if (name == "trp_nu") return Preset::kTrpNu;
  return std::nullopt;
}

std::string_view PresetName(Preset preset) {
  switch (preset) {
    case Preset::kBaseline:
      return "baseline";
    case Preset::kBaselineNu:
      return "baseline_nu";
    case Preset::kTrp:
      return "trp";
    case Preset::kTrpNu:
      return "trp_nu";
  }
  return "unknown";
}

void ApplyPreset(TrpConfig &config, Preset preset) {
  const bool nu = preset == Preset::kBaselineNu || preset == Preset::kTrpNu;
  const bool project = preset == Preset::kTrp || preset == Preset::kTrpNu;
  config.nuclear_lambda = nu ? kDefaultNuclearLambda : 0.0;
  config.period_m = project ? std::optional<std::size_t>(kDefaultPeriod)
                            : std::nullopt;
}

nlohmann::json ToJson(const TrpConfig &c) {
  nlohmann::json j;
  if (c.period_m) {
    j["period_m"] = *c.period_m;
  } else {
    j["period_m"] = "inf";
  }
  j["energy_e"] = c.energy_e;
  j["nuclear_lambda"] = c.nuclear_lambda;
  j["scheme"] = std::string(reshape::SchemeName(c.scheme));
  nlohmann::json sched = nlohmann::json::array();
  for (const LrStep &s : c.lr_schedule) {
    sched.push_back(nlohmann::json::array({s.epoch, s.lr}));
  }
  j["lr_schedule"] = sched;
  j["momentum"] = c.momentum;
  j["weight_decay"] = c.weight_decay;
  j["epochs"] = c.epochs;
  j["batch_size"] = c.batch_size;
  j["seed"] = c.seed;
  j["mode"] = c.mode == TrainMode::kScratch ? "scratch" : "finetune";
  return j;
}

TrpConfig TrpConfigFromJson(const nlohmann::json &j, TrpConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const char *const kKeys[] = {
      "period_m", "energy_e", "nuclear_lambda", "scheme",
      "lr_schedule", "momentum", "weight_decay", "epochs",
      "batch_size", "seed", "mode"};
  for (const auto &[key, value] : j.items()) {
    bool known = false;
    for (const char *k : kKeys) known = known || key == k;
    if (!known) throw ConfigError("unknown config key '" + key + "'");
  }

  if (j.contains("period_m")) {
    const nlohmann::json &p = j.at("period_m");
    if (p.is_null() || (p.is_string() && p.get<std::string>() == "inf")) {
      c.period_m.reset();
    } else {
      c.period_m = GetCount(j, "period_m");
    }
  }
  if (j.contains("energy_e")) c.energy_e = Get<double>(j, "energy_e");
  if (j.contains("nuclear_lambda")) {
    c.nuclear_lambda = Get<double>(j, "nuclear_lambda");
  }
  if (j.contains("scheme")) {
    const auto s = reshape::ParseScheme(Get<std::string>(j, "scheme"));
    if (!s) throw ConfigError("scheme must be 'channel' or 'spatial'");
    c.scheme = *s;
  }
  if (j.contains("lr_schedule")) {
    const nlohmann::json &arr = j.at("lr_schedule");
    if (!arr.is_array()) throw ConfigError("lr_schedule must be an array");
    c.lr_schedule.clear();
    for (const nlohmann::json &step : arr) {
      if (!step.is_array() || step.size() != 2 ||
          !step[0].is_number_integer() || !step[1].is_number() ||
          step[0].get<std::int64_t>() < 0) {
        throw ConfigError("lr_schedule entries must be [epoch, lr]");
      }
      c.lr_schedule.push_back(
          {step[0].get<std::size_t>(), step[1].get<double>()});
    }
  }
  if (j.contains("momentum")) c.momentum = Get<double>(j, "momentum");
  if (j.contains("weight_decay")) c.weight_decay = Get<double>(j, "weight_decay");
  if (j.contains("epochs")) c.epochs = GetCount(j, "epochs");
  if (j.contains("batch_size")) c.batch_size = GetCount(j, "batch_size");
  if (j.contains("seed")) c.seed = Get<std::uint64_t>(j, "seed");
  if (j.contains("mode")) {
    const std::string m = Get<std::string>(j, "mode");
    if (m == "scratch") {
      c.mode = TrainMode::kScratch;
    } else if (m == "finetune") {
      c.mode = TrainMode::kFinetune;
    } else {
      throw ConfigError("mode must be 'scratch' or 'finetune'");
    }
  }
  c.Validate();
  return c;
}

}  // namespace trp
}  // namespace trpkit
