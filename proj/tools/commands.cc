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
#include "commands.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include <spdlog/spdlog.h>

#include "trpkit/common/error.h"
#include "trpkit/data/idx.h"
#include "trpkit/net/model.h"
#include "trpkit/net/network.h"
#include "trpkit/net/serialize.h"
#include "trpkit/trp/monitor.h"
#include "trpkit/trp/trainer.h"
#include "trpkit/trp/trajectory_io.h"

namespace trpkit {
namespace app {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t ParseU64(const std::string &text, const char *what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception &) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text.front() == '-') {
    throw ConfigError(std::string("invalid ") + what + " '" + text + "'");
  }
  return v;
}

json ParseJsonText(const std::string &text, const std::string &path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError(path + ": " + e.what());
  }
}

template <typename T>
T GetAs(const json &j, const char *key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

data::SyntheticOptions SyntheticFromJson(const json &j,
                                         data::SyntheticOptions o) {
  if (!j.is_object()) throw ConfigError("'synthetic' must be an object");
  for (const auto &[key, value] : j.items()) {
    if (key == "seed") {
      o.seed = GetAs<std::uint64_t>(j, "seed");
    } else if (key == "classes") {
      o.classes = GetAs<std::size_t>(j, "classes");
    } else if (key == "per_class") {
      o.per_class = GetAs<std::size_t>(j, "per_class");
    } else if (key == "shape") {
      const auto s = GetAs<std::vector<std::size_t>>(j, "shape");
      if (s.size() != 3) throw ConfigError("'synthetic.shape' needs [c,h,w]");
      o.shape = {s[0], s[1], s[2]};
    } else if (key == "noise") {
      o.noise = GetAs<double>(j, "noise");
    } else if (key == "test_fraction") {
      o.test_fraction = GetAs<double>(j, "test_fraction");
    } else {
      throw ConfigError("unknown synthetic key '" + key + "'");
    }
  }
  return o;
}

std::string WriteCsvMetrics(const std::vector<trp::EpochMetrics> &history) {
  std::string out = "epoch,train_loss,test_acc\n";
  for (const trp::EpochMetrics &m : history) {
    out += std::to_string(m.epoch) + "," + Real(m.train_loss) + "," +
           Real(m.test_accuracy) + "\n";
  }
  return out;
}

void EnsureFreshOutDir(const std::string &out_dir) {
  if (out_dir.empty()) throw ConfigError("--out is required");
  std::error_code ec;
  const fs::path dir(out_dir);
  if (fs::exists(dir / kManifestFile, ec)) {
    throw ConfigError("output directory '" + out_dir +
                      "' already holds a run manifest");
  }
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + out_dir + "'");
  }
}

std::string JoinPath(const std::string &dir, const char *name) {
  return (fs::path(dir) / name).string();
}

}  // namespace

DatasetSpec ParseDatasetSpec(const std::string &text) {
  DatasetSpec spec;
  if (text == "synthetic") return spec;
  if (text.rfind("synthetic:", 0) == 0) {
    spec.synthetic_seed = ParseU64(text.substr(10), "synthetic seed");
    return spec;
  }
  if (text.rfind("idx:", 0) == 0) {
    const std::string rest = text.substr(4);
    const std::size_t comma = rest.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == rest.size()) {
      throw ConfigError("idx dataset needs 'idx:IMAGES,LABELS'");
    }
    spec.kind = DatasetSpec::Kind::kIdx;
    spec.images = rest.substr(0, comma);
    spec.labels = rest.substr(comma + 1);
    return spec;
  }
  throw ConfigError("unknown dataset '" + text +
                    "' (expected synthetic or idx:IMAGES,LABELS)");
}

RunConfig RunConfigFromJson(const json &j) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  RunConfig c;
  for (const auto &[key, value] : j.items()) {
    if (key == "train") {
      c.train = trp::TrpConfigFromJson(value);
    } else if (key == "synthetic") {
      c.synthetic = SyntheticFromJson(value, c.synthetic);
    } else if (key == "init_checkpoint") {
      if (!value.is_null()) c.init_checkpoint = GetAs<std::string>(j, key.c_str());
    } else if (key == "normalize") {
      c.normalize = GetAs<bool>(j, "normalize");
    } else {
      throw ConfigError("unknown run config key '" + key + "'");
    }
  }
  return c;
}

json ToJson(const RunConfig &c) {
  json j;
  j["train"] = trp::ToJson(c.train);
  const data::SyntheticOptions &s = c.synthetic;
  j["synthetic"] = {{"seed", s.seed},
                    {"classes", s.classes},
                    {"per_class", s.per_class},
                    {"shape", {s.shape.c, s.shape.h, s.shape.w}},
                    {"noise", s.noise},
                    {"test_fraction", s.test_fraction}};
  j["init_checkpoint"] =
      c.init_checkpoint ? json(*c.init_checkpoint) : json(nullptr);
  j["normalize"] = c.normalize;
  return j;
}

RunConfig LoadRunConfig(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return RunConfigFromJson(ParseJsonText(ss.str(), path));
}

data::SplitDataset LoadDataset(const DatasetSpec &spec,
                               const RunConfig &config) {
  data::SplitDataset split;
  if (spec.kind == DatasetSpec::Kind::kSynthetic) {
    data::SyntheticOptions o = config.synthetic;
    if (spec.synthetic_seed) o.seed = *spec.synthetic_seed;
    split = data::GenerateSynthetic(o);
  } else {
    split = data::SplitEvery(data::LoadIdx(spec.images, spec.labels),
                             kIdxTestEvery);
  }
  if (config.normalize) data::NormalizePerChannel(split);
  return split;
}

json RunManifest::ToJson() const {
  json j;
  j["version"] = version;
  j["seed"] = seed;
  j["preset"] = preset.empty() ? json(nullptr) : json(preset);
  j["dataset"] = {{"spec", dataset_spec}, {"fingerprint", dataset_fingerprint}};
  j["config"] = config;
  j["artifacts"] = artifacts;
  return j;
}

RunManifest RunManifest::FromJson(const json &j) {
  RunManifest m;
  try {
    m.version = j.at("version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("preset").is_null()) m.preset = j.at("preset").get<std::string>();
    m.dataset_spec = j.at("dataset").at("spec").get<std::string>();
    m.dataset_fingerprint = j.at("dataset").at("fingerprint").get<std::string>();
    m.config = j.at("config");
    m.artifacts = j.at("artifacts").get<std::map<std::string, std::string>>();
  } catch (const json::exception &e) {
    throw IoError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

RunConfig ResolveTrainConfig(const TrainOptions &options) {
  RunConfig c;
  if (options.config_path) c = LoadRunConfig(*options.config_path);
  if (options.preset) trp::ApplyPreset(c.train, *options.preset);
  if (options.seed) c.train.seed = *options.seed;
  if (options.scheme) c.train.scheme = *options.scheme;
  if (options.energy) c.train.energy_e = *options.energy;
  c.train.Validate();
  const bool finetune = c.train.mode == trp::TrainMode::kFinetune;
  if (finetune && !c.init_checkpoint) {
    throw ConfigError("finetune mode needs init_checkpoint");
  }
  if (!finetune && c.init_checkpoint) {
    throw ConfigError("init_checkpoint is only used in finetune mode");
  }
  return c;
}

RunManifest CmdTrain(const TrainOptions &options) {
  const RunConfig config = ResolveTrainConfig(options);
  const DatasetSpec spec = ParseDatasetSpec(options.dataset);
  EnsureFreshOutDir(options.out_dir);

  const data::SplitDataset split = LoadDataset(spec, config);
  net::NetworkModel model =
      config.init_checkpoint
          ? net::LoadModel(*config.init_checkpoint)
          : net::MakeTinyConvNet(split.train.shape(), split.train.class_count,
                                 config.train.seed);
  if (model.input != split.train.shape()) {
    throw ConfigError("checkpoint input " + model.input.ToString() +
                      " does not match dataset " +
                      split.train.shape().ToString());
  }
  if (model.ClassCount() < split.train.class_count) {
    throw ConfigError("checkpoint has fewer classes than the dataset");
  }

  spdlog::info("training {} samples, {} test, m={}, e={}, lambda={}",
               split.train.size(), split.test.size(),
               config.train.period_m ? std::to_string(*config.train.period_m)
                                     : std::string("inf"),
               config.train.energy_e, config.train.nuclear_lambda);
  const trp::TrainResult result = trp::Train(
      std::move(model), split, config.train, [](const trp::EpochMetrics &m) {
        spdlog::info("epoch {} train_loss {:.6f} test_acc {:.4f}", m.epoch,
                     m.train_loss, m.test_accuracy);
      });

  RunManifest manifest;
  manifest.config = ToJson(config);
  manifest.preset =
      options.preset ? std::string(trp::PresetName(*options.preset)) : "";
  manifest.dataset_spec = options.dataset;
  manifest.dataset_fingerprint = data::Fingerprint(split);
  manifest.seed = config.train.seed;
  manifest.version = TRPKIT_VERSION_STRING;

  const std::string &dir = options.out_dir;
  net::SaveModel(result.model, JoinPath(dir, kCheckpointFile));
  manifest.artifacts["checkpoint"] = kCheckpointFile;
  trp::WriteTextFile(JoinPath(dir, kMetricsFile),
                     WriteCsvMetrics(result.history));
  manifest.artifacts["metrics"] = kMetricsFile;
  if (config.train.ProjectionEnabled()) {
    trp::WriteTextFile(JoinPath(dir, kTrajectoryCsvFile),
                       trp::TrajectoryCsv(result.trajectory));
    trp::WriteTextFile(JoinPath(dir, kTrajectoryJsonlFile),
                       trp::TrajectoryJsonl(result.trajectory));
    manifest.artifacts["trajectory_csv"] = kTrajectoryCsvFile;
    manifest.artifacts["trajectory_jsonl"] = kTrajectoryJsonlFile;
  }
  trp::WriteTextFile(JoinPath(dir, kManifestFile),
                     manifest.ToJson().dump(2) + "\n");
  return manifest;
}

DecomposeReport CmdDecompose(const std::string &checkpoint,
                             reshape::DecompScheme scheme, double energy,
                             const std::string &out_path) {
  if (!(energy > 0.0 && energy < 1.0)) {
    throw ConfigError("energy must lie in (0, 1)");
  }
  if (out_path.empty()) throw ConfigError("--out is required");
  const net::NetworkModel model = net::LoadModel(checkpoint);
  const std::vector<ImageShape> shapes = model.ActivationShapes();

  net::NetworkModel out;
  out.input = model.input;
  out.rng_seed = model.rng_seed;
  DecomposeReport report;
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    const auto *conv = std::get_if<net::Conv2DLayer>(&model.layers[i]);
    if (conv == nullptr) {
      out.layers.push_back(model.layers[i]);
      continue;
    }
    reshape::DecomposedPair pair =
        reshape::DecomposeExport(conv->weights, scheme, energy);
    LayerFlops lf;
    lf.layer = i;
    lf.rank = pair.rank;
    const linalg::Matrix view = reshape::ToMatrix(conv->weights, scheme);
    lf.full_rank = std::min(view.rows(), view.cols());
    lf.flops = reshape::ComputeFlops(conv->weights.shape(), shapes[i].h,
                                     shapes[i].w, scheme, pair.rank);
    report.total.original += lf.flops.original;
    report.total.decomposed += lf.flops.decomposed;
    report.layers.push_back(lf);

    out.layers.push_back(net::Conv2DLayer{
        std::move(pair.first), std::vector<double>(pair.rank, 0.0)});
    out.layers.push_back(net::Conv2DLayer{std::move(pair.second), conv->bias});
  }
  report.total.speedup =
      report.total.decomposed == 0
          ? 0.0
          : static_cast<double>(report.total.original) /
                static_cast<double>(report.total.decomposed);
  out.Validate();
  net::SaveModel(out, out_path);
  return report;
}

void PrintDecomposeReport(const DecomposeReport &report, std::ostream &out) {
  char line[160];
  for (const LayerFlops &l : report.layers) {
    std::snprintf(line, sizeof(line),
                  "layer %zu: rank %zu/%zu original %llu decomposed %llu "
                  "speedup %.4f\n",
                  l.layer, l.rank, l.full_rank,
                  static_cast<unsigned long long>(l.flops.original),
                  static_cast<unsigned long long>(l.flops.decomposed),
                  l.flops.speedup);
    out << line;
  }
  std::snprintf(line, sizeof(line),
                "total: original %llu decomposed %llu speedup %.4f\n",
                static_cast<unsigned long long>(report.total.original),
                static_cast<unsigned long long>(report.total.decomposed),
                report.total.speedup);
  out << line;
}

EvalReport CmdEval(const EvalOptions &options) {
  const RunConfig config =
      options.config_path ? LoadRunConfig(*options.config_path) : RunConfig{};
  const DatasetSpec spec = ParseDatasetSpec(options.dataset);
  const net::NetworkModel model = net::LoadModel(options.checkpoint);
  const data::SplitDataset split = LoadDataset(spec, config);
  if (model.input != split.test.shape()) {
    throw ConfigError("checkpoint input " + model.input.ToString() +
                      " does not match dataset " +
                      split.test.shape().ToString());
  }
  const net::EvalResult r = net::Evaluate(model, split.test.samples);
  EvalReport report;
  report.accuracy = r.accuracy;
  report.loss = r.mean_loss;
  report.correct = r.correct;
  report.total = r.total;
  report.dataset_fingerprint = data::Fingerprint(split.test);
  return report;
}

void PrintEvalReport(const EvalReport &report, std::ostream &out) {
  out << "accuracy " << Real(report.accuracy) << " (" << report.correct << "/"
      << report.total << ") loss " << Real(report.loss) << "\n";
  // Hand-assembled so reals keep all 17 digits.
  out << "{\"accuracy\":" << Real(report.accuracy)
      << ",\"loss\":" << Real(report.loss) << ",\"correct\":" << report.correct
      << ",\"total\":" << report.total << ",\"dataset\":\""
      << report.dataset_fingerprint << "\"}\n";
}

ReportBundle CmdReport(const std::string &run_dir) {
  const std::string traj_path = JoinPath(run_dir, kTrajectoryJsonlFile);
  if (!fs::exists(traj_path)) {
    throw IoError("missing trajectory '" + traj_path + "'");
  }
  const trp::RankTrajectory traj =
      trp::ParseTrajectoryJsonl(trp::ReadTextFile(traj_path));
  if (traj.empty()) throw IoError("trajectory '" + traj_path + "' is empty");

  trp::TrpConfig train_config;
  const std::string manifest_path = JoinPath(run_dir, kManifestFile);
  if (fs::exists(manifest_path)) {
    const RunManifest m = RunManifest::FromJson(
        ParseJsonText(trp::ReadTextFile(manifest_path), manifest_path));
    if (m.config.contains("train")) {
      train_config = trp::TrpConfigFromJson(m.config.at("train"));
    }
  }

  ReportBundle bundle;
  std::string summary =
      "layer full_rank initial_rank final_rank events bound_holds_fraction\n";
  char line[200];
  for (std::size_t layer : traj.Layers()) {
    const std::vector<trp::RankEvent> events = traj.ForLayer(layer);
    std::string csv = "z,i,er\n";
    std::size_t later = 0, holds = 0;
    for (const trp::RankEvent &ev : events) {
      for (std::size_t i = 0; i < ev.full_rank; ++i) {
        const double er =
            i < ev.energy_ratios.size() ? ev.energy_ratios[i] : 0.0;
        csv += std::to_string(ev.z) + "," + std::to_string(i + 1) + "," +
               Real(er) + "\n";
      }
      if (ev.z >= 1) {
        ++later;
        if (ev.bound_holds) ++holds;
      }
    }
    const std::string name = "er_layer" + std::to_string(layer) + ".csv";
    const std::string path = JoinPath(run_dir, name.c_str());
    trp::WriteTextFile(path, csv);
    bundle.files.push_back(path);

    std::snprintf(line, sizeof(line), "%zu %zu %zu %zu %zu %.6f\n", layer,
                  events.front().full_rank, events.front().rank,
                  events.back().rank, events.size(),
                  later == 0 ? 1.0
                             : static_cast<double>(holds) /
                                   static_cast<double>(later));
    summary += line;
  }

  bool all_paired = true;
  for (std::size_t layer : traj.Layers()) {
    all_paired = all_paired && traj.ForLayer(layer).size() >= 2;
  }
  if (all_paired) {
    const trp::MonitorSummary s =
        trp::RankMonotonicityMonitor(traj, train_config).summary;
    std::snprintf(line, sizeof(line),
                  "pairs %zu hypothesis_pairs %zu violations %zu "
                  "rank_increases %zu max_bound_stat %.6g\n",
                  s.pairs, s.hypothesis_pairs, s.violations,
                  s.unconditional_increases, s.max_bound_stat);
    summary += line;
  }
  const std::string summary_path = JoinPath(run_dir, kSummaryFile);
  trp::WriteTextFile(summary_path, summary);
  bundle.files.push_back(summary_path);
  return bundle;
}

}  // namespace app
}  // namespace trpkit
