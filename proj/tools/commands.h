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
#ifndef TRPKIT_TOOLS_COMMANDS_H_
#define TRPKIT_TOOLS_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trpkit/data/dataset.h"
#include "trpkit/data/synthetic.h"
#include "trpkit/reshape/flops.h"
#include "trpkit/reshape/reshape.h"
#include "trpkit/trp/config.h"

namespace trpkit {
namespace app {

// File names inside a run directory.
inline constexpr const char *kManifestFile = "manifest.json";
inline constexpr const char *kCheckpointFile = "checkpoint.trpk";
inline constexpr const char *kMetricsFile = "metrics.csv";
inline constexpr const char *kTrajectoryCsvFile = "trajectory.csv";
inline constexpr const char *kTrajectoryJsonlFile = "trajectory.jsonl";
inline constexpr const char *kSummaryFile = "summary.txt";

// "synthetic", "synthetic:SEED" or "idx:IMAGES,LABELS".
struct DatasetSpec {
  enum class Kind { kSynthetic, kIdx };
  Kind kind = Kind::kSynthetic;
  std::optional<std::uint64_t> synthetic_seed;
  std::string images;
  std::string labels;
};
DatasetSpec ParseDatasetSpec(const std::string &text);

// Run configuration file: {"train": {...}, "synthetic": {...},
// "init_checkpoint": PATH, "normalize": BOOL}. Every key is optional.
struct RunConfig {
  trp::TrpConfig train;
  data::SyntheticOptions synthetic;
  std::optional<std::string> init_checkpoint;
  bool normalize = false;
};
RunConfig RunConfigFromJson(const nlohmann::json &j);
nlohmann::json ToJson(const RunConfig &config);
RunConfig LoadRunConfig(const std::string &path);

// Every fifth IDX sample is held out for testing.
inline constexpr std::size_t kIdxTestEvery = 5;
data::SplitDataset LoadDataset(const DatasetSpec &spec,
                               const RunConfig &config);

struct RunManifest {
  nlohmann::json config;
  std::string preset;  // empty when none was given
  std::string dataset_spec;
  std::string dataset_fingerprint;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> artifacts;  // role -> file name
  std::string version;

  nlohmann::json ToJson() const;
  static RunManifest FromJson(const nlohmann::json &j);
};

struct TrainOptions {
  std::optional<std::string> config_path;
  std::string dataset = "synthetic";
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<trp::Preset> preset;
  std::optional<reshape::DecompScheme> scheme;
  std::optional<double> energy;
};
// Resolved configuration: file, then preset, then individual flags.
RunConfig ResolveTrainConfig(const TrainOptions &options);
RunManifest CmdTrain(const TrainOptions &options);

struct LayerFlops {
  std::size_t layer = 0;  // index in the source model
  std::size_t rank = 0;
  std::size_t full_rank = 0;
  reshape::FlopsReport flops;
};
struct DecomposeReport {
  std::vector<LayerFlops> layers;
  reshape::FlopsReport total;
};
DecomposeReport CmdDecompose(const std::string &checkpoint,
                             reshape::DecompScheme scheme, double energy,
                             const std::string &out_path);
void PrintDecomposeReport(const DecomposeReport &report, std::ostream &out);

struct EvalOptions {
  std::string checkpoint;
  std::string dataset = "synthetic";
  std::optional<std::string> config_path;
};
struct EvalReport {
  double accuracy = 0.0;
  double loss = 0.0;
  std::size_t correct = 0;
  std::size_t total = 0;
  std::string dataset_fingerprint;
};
EvalReport CmdEval(const EvalOptions &options);
// One human-readable line, then one JSON line.
void PrintEvalReport(const EvalReport &report, std::ostream &out);

struct ReportBundle {
  std::vector<std::string> files;  // written paths, in order
};
ReportBundle CmdReport(const std::string &run_dir);

}  // namespace app
}  // namespace trpkit

#endif  // TRPKIT_TOOLS_COMMANDS_H_
