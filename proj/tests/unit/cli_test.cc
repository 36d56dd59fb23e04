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
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "commands.h"
#include "trpkit/common/error.h"
#include "trpkit/net/model.h"
#include "trpkit/net/network.h"
#include "trpkit/net/serialize.h"
#include "trpkit/reshape/reshape.h"
#include "trpkit/trp/trajectory_io.h"

namespace trpkit {
namespace app {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path &p) { return trp::ReadTextFile(p.string()); }

std::vector<std::string> Lines(const std::string &text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

std::vector<std::string> Fields(const std::string &line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

// Runs the trp binary; returns its exit status.
int RunTrp(const std::string &args, const std::string &env = "",
           std::string *stderr_text = nullptr) {
  const fs::path err = fs::temp_directory_path() / "trpkit_cli_stderr.txt";
  const std::string cmd = env + " " + TRP_BINARY + " " + args + " >/dev/null 2>" +
                          err.string();
  const int raw = std::system(cmd.c_str());
  if (stderr_text) *stderr_text = Slurp(err);
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = fs::temp_directory_path() / "trpkit_cli_test";
    fs::remove_all(root_);
    fs::create_directories(root_);
    // Short schedule for the wiring checks.
    short_config_ = (root_ / "short.json").string();
    trp::WriteTextFile(short_config_, R"({
      "train": {"epochs": 4, "batch_size": 20, "period_m": 3,
                "lr_schedule": [[0, 0.05], [3, 0.005]]},
      "synthetic": {"per_class": 40}
    })");
    // Default schedule, shared by the end-to-end checks.
    TrainOptions o;
    o.preset = trp::Preset::kTrpNu;
    o.out_dir = (root_ / "default_trp_nu").string();
    CmdTrain(o);
    default_run_ = o.out_dir;
  }
  static void TearDownTestSuite() { fs::remove_all(root_); }

  static TrainOptions Short(const std::string &name, trp::Preset p) {
    TrainOptions o;
    o.config_path = short_config_;
    o.preset = p;
    o.out_dir = (root_ / name).string();
    return o;
  }

  static double FinalTestAccuracy(const std::string &run) {
    const auto lines = Lines(Slurp(fs::path(run) / kMetricsFile));
    return std::stod(Fields(lines.back())[2]);
  }

  static inline fs::path root_;
  static inline std::string short_config_;
  static inline std::string default_run_;
};

TEST_F(CliTest, DatasetSpecParsing) {
  EXPECT_EQ(ParseDatasetSpec("synthetic").kind, DatasetSpec::Kind::kSynthetic);
  EXPECT_EQ(ParseDatasetSpec("synthetic:7").synthetic_seed,
            std::optional<std::uint64_t>(7));
  const DatasetSpec idx = ParseDatasetSpec("idx:a/b.idx,c.idx");
  EXPECT_EQ(idx.kind, DatasetSpec::Kind::kIdx);
  EXPECT_EQ(idx.images, "a/b.idx");
  EXPECT_EQ(idx.labels, "c.idx");
  for (const char *bad : {"cifar", "idx:only", "idx:,x", "synthetic:-1",
                          "synthetic:abc", "idx:a,"}) {
    EXPECT_THROW(ParseDatasetSpec(bad), ConfigError) << bad;
  }
}

TEST_F(CliTest, RunConfigStrictAndRoundTrips) {
  RunConfig c;
  c.synthetic.noise = 1.25;
  c.normalize = true;
  const RunConfig back = RunConfigFromJson(ToJson(c));
  EXPECT_EQ(back.train, c.train);
  EXPECT_EQ(back.synthetic.noise, 1.25);
  EXPECT_TRUE(back.normalize);
  EXPECT_THROW(RunConfigFromJson({{"trian", nlohmann::json::object()}}),
               ConfigError);
  EXPECT_THROW(RunConfigFromJson({{"synthetic", {{"colour", 1}}}}),
               ConfigError);
  EXPECT_THROW(LoadRunConfig((root_ / "missing.json").string()), IoError);
  const std::string broken = (root_ / "broken.json").string();
  trp::WriteTextFile(broken, "{ not json");
  EXPECT_THROW(LoadRunConfig(broken), ConfigError);
}

TEST_F(CliTest, FlagsOverrideConfigFile) {
  TrainOptions o = Short("unused", trp::Preset::kTrp);
  o.seed = 99;
  o.energy = 0.3;
  o.scheme = reshape::DecompScheme::kSpatialWise;
  const RunConfig c = ResolveTrainConfig(o);
  EXPECT_EQ(c.train.seed, 99u);
  EXPECT_EQ(c.train.energy_e, 0.3);
  EXPECT_EQ(c.train.scheme, reshape::DecompScheme::kSpatialWise);
  EXPECT_EQ(c.train.epochs, 4u);
  EXPECT_EQ(c.train.period_m, std::optional<std::size_t>(20));  // preset
  o.energy = 1.5;
  EXPECT_THROW(ResolveTrainConfig(o), ConfigError);
}

TEST_F(CliTest, BaselineAndTrpManifests) {
  const RunManifest base = CmdTrain(Short("base", trp::Preset::kBaseline));
  const RunManifest trp = CmdTrain(Short("trp", trp::Preset::kTrp));
  EXPECT_FALSE(fs::exists(root_ / "base" / kTrajectoryCsvFile));
  EXPECT_FALSE(fs::exists(root_ / "base" / kTrajectoryJsonlFile));
  EXPECT_EQ(base.artifacts.count("trajectory_csv"), 0u);
  EXPECT_GT(Lines(Slurp(root_ / "trp" / kTrajectoryCsvFile)).size(), 1u);
  EXPECT_EQ(base.dataset_fingerprint, trp.dataset_fingerprint);

  // Every listed artifact exists; manifest on disk matches.
  for (const auto &[role, file] : trp.artifacts) {
    EXPECT_TRUE(fs::exists(root_ / "trp" / file)) << role;
  }
  const auto on_disk = RunManifest::FromJson(
      nlohmann::json::parse(Slurp(root_ / "trp" / kManifestFile)));
  EXPECT_EQ(on_disk.ToJson(), trp.ToJson());
  EXPECT_EQ(on_disk.version, TRPKIT_VERSION_STRING);
  EXPECT_EQ(on_disk.preset, "trp");
}

TEST_F(CliTest, RerunIsByteIdentical) {
  CmdTrain(Short("det_a", trp::Preset::kTrpNu));
  CmdTrain(Short("det_b", trp::Preset::kTrpNu));
  for (const char *f : {kMetricsFile, kTrajectoryCsvFile, kTrajectoryJsonlFile,
                        kManifestFile, kCheckpointFile}) {
    EXPECT_EQ(Slurp(root_ / "det_a" / f), Slurp(root_ / "det_b" / f)) << f;
  }
}

TEST_F(CliTest, RefusesToOverwriteRun) {
  CmdTrain(Short("once", trp::Preset::kBaseline));
  EXPECT_THROW(CmdTrain(Short("once", trp::Preset::kBaseline)), ConfigError);
}

TEST_F(CliTest, FinetuneNeedsCheckpoint) {
  const std::string cfg = (root_ / "finetune.json").string();
  trp::WriteTextFile(cfg, R"({"train": {"mode": "finetune", "epochs": 1}})");
  TrainOptions o;
  o.config_path = cfg;
  o.out_dir = (root_ / "ft").string();
  EXPECT_THROW(CmdTrain(o), ConfigError);

  CmdTrain(Short("ft_src", trp::Preset::kBaseline));
  const std::string cfg2 = (root_ / "finetune2.json").string();
  trp::WriteTextFile(
      cfg2, R"({"train": {"mode": "finetune", "epochs": 2, "batch_size": 20},
               "synthetic": {"per_class": 40}, "init_checkpoint": ")" +
                (root_ / "ft_src" / kCheckpointFile).string() + "\"}");
  o.config_path = cfg2;
  o.preset = trp::Preset::kTrp;
  const RunManifest m = CmdTrain(o);
  EXPECT_EQ(m.artifacts.count("trajectory_jsonl"), 1u);
}

TEST_F(CliTest, DefaultTrpNuRunLowersEveryRank) {
  const trp::RankTrajectory t = trp::ParseTrajectoryJsonl(
      Slurp(fs::path(default_run_) / kTrajectoryJsonlFile));
  ASSERT_FALSE(t.empty());
  for (std::size_t layer : t.Layers()) {
    const auto ev = t.ForLayer(layer);
    EXPECT_EQ(ev.size(), 41u);
    EXPECT_LT(ev.back().rank, ev.front().full_rank) << "layer " << layer;
  }
}

TEST_F(CliTest, EvalMatchesFinalMetricsRow) {
  EvalOptions o;
  o.checkpoint = (fs::path(default_run_) / kCheckpointFile).string();
  const EvalReport r = CmdEval(o);
  EXPECT_EQ(r.accuracy, FinalTestAccuracy(default_run_));
  EXPECT_EQ(r.total, 200u);
  std::ostringstream out;
  PrintEvalReport(r, out);
  const auto lines = Lines(out.str());
  ASSERT_EQ(lines.size(), 2u);
  const nlohmann::json j = nlohmann::json::parse(lines[1]);
  EXPECT_EQ(j["accuracy"].get<double>(), r.accuracy);
  EXPECT_EQ(j["total"].get<std::size_t>(), 200u);
}

TEST_F(CliTest, EvalMissingCheckpointIsIoError) {
  EvalOptions o;
  o.checkpoint = (root_ / "nope.trpk").string();
  EXPECT_THROW(CmdEval(o), IoError);
}

TEST_F(CliTest, DecomposeTrpCheckpointKeepsAccuracy) {
  const std::string out = (root_ / "dec.trpk").string();
  const DecomposeReport rep =
      CmdDecompose((fs::path(default_run_) / kCheckpointFile).string(),
                   reshape::DecompScheme::kChannelWise, 0.02, out);
  ASSERT_EQ(rep.layers.size(), 2u);
  EvalOptions o;
  o.checkpoint = out;
  const double after = CmdEval(o).accuracy;
  const double before = FinalTestAccuracy(default_run_);
  EXPECT_LE(before - after, 0.001);
  const net::NetworkModel m = net::LoadModel(out);
  EXPECT_EQ(m.ConvLayerIndices().size(), 4u);
  std::uint64_t orig = 0, dec = 0;
  for (const LayerFlops &l : rep.layers) {
    orig += l.flops.original;
    dec += l.flops.decomposed;
  }
  EXPECT_EQ(rep.total.original, orig);
  EXPECT_EQ(rep.total.decomposed, dec);
}

TEST_F(CliTest, DecomposedAndProjectedAgree) {
  const std::string ckpt = (fs::path(default_run_) / kCheckpointFile).string();
  for (auto scheme : {reshape::DecompScheme::kChannelWise,
                      reshape::DecompScheme::kSpatialWise}) {
    const double e = 0.2;
    const std::string dec = (root_ / "agree_dec.trpk").string();
    CmdDecompose(ckpt, scheme, e, dec);
    net::NetworkModel proj = net::LoadModel(ckpt);
    for (std::size_t i : proj.ConvLayerIndices()) {
      auto &conv = std::get<net::Conv2DLayer>(proj.layers[i]);
      conv.weights = reshape::LowRankProject(conv.weights, scheme, e).weights;
    }
    const std::string projected = (root_ / "agree_proj.trpk").string();
    net::SaveModel(proj, projected);
    EvalOptions a, b;
    a.checkpoint = dec;
    b.checkpoint = projected;
    const EvalReport ra = CmdEval(a), rb = CmdEval(b);
    EXPECT_EQ(ra.accuracy, rb.accuracy);
    EXPECT_NEAR(ra.loss, rb.loss, 1e-9);
  }
}

TEST_F(CliTest, EnergyNearOneFloorsRankAtOne) {
  const std::string out = (root_ / "floor.trpk").string();
  const DecomposeReport rep =
      CmdDecompose((fs::path(default_run_) / kCheckpointFile).string(),
                   reshape::DecompScheme::kSpatialWise, 0.999, out);
  for (const LayerFlops &l : rep.layers) EXPECT_EQ(l.rank, 1u);
  EvalOptions o;
  o.checkpoint = out;
  const EvalReport r = CmdEval(o);
  EXPECT_EQ(r.total, 200u);
  std::ostringstream text;
  PrintDecomposeReport(rep, text);
  EXPECT_NE(text.str().find("total:"), std::string::npos);
}

TEST_F(CliTest, ReportIsPureAndShaped) {
  const ReportBundle a = CmdReport(default_run_);
  std::vector<std::string> first;
  for (const std::string &f : a.files) first.push_back(Slurp(f));
  const ReportBundle b = CmdReport(default_run_);
  ASSERT_EQ(a.files, b.files);
  for (std::size_t i = 0; i < b.files.size(); ++i) {
    EXPECT_EQ(Slurp(b.files[i]), first[i]);
  }
  ASSERT_EQ(a.files.size(), 3u);  // two layers + summary
  const auto er = Lines(first[1]);
  EXPECT_EQ(er.front(), "z,i,er");
  EXPECT_EQ(er.size(), 1u + 41u * 16u);  // layer 3 has full rank 16
  const auto summary = Lines(first[2]);
  EXPECT_EQ(summary[0],
            "layer full_rank initial_rank final_rank events "
            "bound_holds_fraction");
}

TEST_F(CliTest, ReportNonzeroColumnsShrinkWhereBoundHolds) {
  CmdReport(default_run_);
  const trp::RankTrajectory t = trp::ParseTrajectoryJsonl(
      Slurp(fs::path(default_run_) / kTrajectoryJsonlFile));
  for (std::size_t layer : t.Layers()) {
    const auto rows = Lines(
        Slurp(fs::path(default_run_) /
              ("er_layer" + std::to_string(layer) + ".csv")));
    std::map<std::uint64_t, std::size_t> nonzero;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto f = Fields(rows[i]);
      if (std::stod(f[2]) != 0.0) ++nonzero[std::stoull(f[0])];
    }
    const auto ev = t.ForLayer(layer);
    for (std::size_t z = 1; z < ev.size(); ++z) {
      if (ev[z].bound_holds) EXPECT_LE(nonzero[z], nonzero[z - 1]);
    }
  }
}

TEST_F(CliTest, ZeroLearningRateGivesConstantErMatrix) {
  const std::string cfg = (root_ / "frozen.json").string();
  trp::WriteTextFile(cfg, R"({
      "train": {"epochs": 3, "batch_size": 20, "period_m": 3,
                "lr_schedule": [[0, 0.0]]},
      "synthetic": {"per_class": 40}})");
  TrainOptions o;
  o.config_path = cfg;
  o.out_dir = (root_ / "frozen").string();
  CmdTrain(o);
  const ReportBundle b = CmdReport(o.out_dir);
  for (std::size_t f = 0; f + 1 < b.files.size(); ++f) {
    // Re-projection rebuilds the weights from their factors, so values agree
    // to rounding rather than bit for bit.
    std::map<std::uint64_t, std::vector<double>> by_z;
    for (const std::string &row : Lines(Slurp(b.files[f]))) {
      if (row == "z,i,er") continue;
      const auto fields = Fields(row);
      by_z[std::stoull(fields[0])].push_back(std::stod(fields[2]));
    }
    ASSERT_GT(by_z.size(), 1u);
    const std::vector<double> &first = by_z.begin()->second;
    for (const auto &[z, er] : by_z) {
      ASSERT_EQ(er.size(), first.size());
      for (std::size_t i = 0; i < er.size(); ++i) {
        EXPECT_EQ(er[i] == 0.0, first[i] == 0.0) << "z=" << z << " i=" << i;
        EXPECT_NEAR(er[i], first[i], 1e-12) << "z=" << z << " i=" << i;
      }
    }
  }
}

TEST_F(CliTest, ReportWithoutTrajectoryIsIoError) {
  CmdTrain(Short("no_traj", trp::Preset::kBaseline));
  EXPECT_THROW(CmdReport((root_ / "no_traj").string()), IoError);
}

TEST_F(CliTest, BinaryExitCodes) {
  EXPECT_EQ(RunTrp("--help"), 0);
  EXPECT_EQ(RunTrp("train --preset fancy --out " + (root_ / "x").string()), 2);
  EXPECT_EQ(RunTrp("train --out " + (root_ / "x").string() +
                   " --dataset cifar"),
            2);
  std::string err;
  EXPECT_EQ(RunTrp("eval " + (root_ / "nope.trpk").string(), "", &err), 3);
  EXPECT_NE(err.find("io error"), std::string::npos) << err;
  EXPECT_EQ(RunTrp("train --dataset idx:/nonexistent/a,/nonexistent/b --out " +
                   (root_ / "idx_missing").string()),
            3);
  EXPECT_EQ(RunTrp("report " + (root_ / "nowhere").string()), 3);

  const std::string cfg = (root_ / "explode.json").string();
  trp::WriteTextFile(cfg, R"({"train": {"epochs": 3, "momentum": 0.0,
      "lr_schedule": [[0, 1e12]]}, "synthetic": {"per_class": 20}})");
  EXPECT_EQ(RunTrp("train --config " + cfg + " --out " +
                   (root_ / "explode").string()),
            4);

  EXPECT_EQ(RunTrp("decompose " + (fs::path(default_run_) / kCheckpointFile)
                                      .string() +
                   " --energy 0.5 --scheme spatial --out " +
                   (root_ / "cli_dec.trpk").string()),
            0);
}

TEST_F(CliTest, LogLevelFromEnvironment) {
  std::string quiet, chatty;
  ASSERT_EQ(RunTrp("train --config " + short_config_ + " --out " +
                       (root_ / "log_off").string(),
                   "TRP_LOG_LEVEL=off", &quiet),
            0);
  ASSERT_EQ(RunTrp("train --config " + short_config_ + " --out " +
                       (root_ / "log_info").string(),
                   "TRP_LOG_LEVEL=info", &chatty),
            0);
  EXPECT_TRUE(quiet.empty()) << quiet;
  EXPECT_NE(chatty.find("epoch"), std::string::npos);
}

}  // namespace
}  // namespace app
}  // namespace trpkit
