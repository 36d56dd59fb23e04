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
// trp: train, decompose, evaluate and report on low-rank projected nets.
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.h"
#include "trpkit/common/error.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

void SetupLogging() {
  auto logger = spdlog::stderr_color_mt("trp");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  const char *env = std::getenv("TRP_LOG_LEVEL");
  if (env == nullptr || *env == '\0') return;
  const spdlog::level::level_enum level = spdlog::level::from_str(env);
  // from_str maps unknown names to "off"; only accept that when asked for.
  if (level == spdlog::level::off && std::string(env) != "off") {
    spdlog::warn("ignoring unknown TRP_LOG_LEVEL '{}'", env);
    return;
  }
  spdlog::set_level(level);
}

int ExitCodeFor(trpkit::ErrorKind kind) {
  switch (kind) {
    case trpkit::ErrorKind::kConfig:
      return kExitConfig;
    case trpkit::ErrorKind::kIo:
      return kExitIo;
    case trpkit::ErrorKind::kNumerical:
      return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char **argv) {
  using trpkit::reshape::DecompScheme;
  using trpkit::trp::Preset;
  SetupLogging();

  CLI::App app{"Trained rank pruning toolkit"};
  app.require_subcommand(1);

  const std::map<std::string, Preset> presets = {
      {"baseline", Preset::kBaseline},
      {"baseline_nu", Preset::kBaselineNu},
      {"trp", Preset::kTrp},
      {"trp_nu", Preset::kTrpNu}};
  const std::map<std::string, DecompScheme> schemes = {
      {"channel", DecompScheme::kChannelWise},
      {"spatial", DecompScheme::kSpatialWise}};

  trpkit::app::TrainOptions train;
  std::optional<std::string> train_config;
  std::optional<std::uint64_t> train_seed;
  std::optional<Preset> train_preset;
  std::optional<DecompScheme> train_scheme;
  std::optional<double> train_energy;
  CLI::App *train_cmd = app.add_subcommand("train", "Train a model");
  train_cmd->add_option("--config", train_config, "Run config (JSON)");
  train_cmd->add_option("--dataset", train.dataset,
                        "synthetic[:SEED] or idx:IMAGES,LABELS");
  train_cmd->add_option("--out", train.out_dir, "Output run directory")
      ->required();
  train_cmd->add_option("--seed", train_seed, "Training seed");
  train_cmd->add_option("--preset", train_preset, "Ablation preset")
      ->transform(CLI::CheckedTransformer(presets));
  train_cmd->add_option("--scheme", train_scheme, "Decomposition scheme")
      ->transform(CLI::CheckedTransformer(schemes));
  train_cmd->add_option("--energy", train_energy, "Energy threshold e");

  std::string dec_checkpoint, dec_out;
  DecompScheme dec_scheme = DecompScheme::kChannelWise;
  double dec_energy = 0.02;
  CLI::App *dec_cmd =
      app.add_subcommand("decompose", "Export a decomposed checkpoint");
  dec_cmd->add_option("checkpoint", dec_checkpoint, "Input checkpoint")
      ->required();
  dec_cmd->add_option("--out", dec_out, "Output checkpoint")->required();
  dec_cmd->add_option("--scheme", dec_scheme, "Decomposition scheme")
      ->transform(CLI::CheckedTransformer(schemes));
  dec_cmd->add_option("--energy", dec_energy, "Energy threshold e");

  trpkit::app::EvalOptions eval;
  std::optional<std::string> eval_config;
  CLI::App *eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint");
  eval_cmd->add_option("checkpoint", eval.checkpoint, "Checkpoint")
      ->required();
  eval_cmd->add_option("--dataset", eval.dataset,
                       "synthetic[:SEED] or idx:IMAGES,LABELS");
  eval_cmd->add_option("--config", eval_config,
                       "Run config used for training (data options)");

  std::string report_dir;
  CLI::App *report_cmd =
      app.add_subcommand("report", "Write plot data for a TRP run");
  report_cmd->add_option("run_dir", report_dir, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (train_cmd->parsed()) {
      train.config_path = train_config;
      train.seed = train_seed;
      train.preset = train_preset;
      train.scheme = train_scheme;
      train.energy = train_energy;
      const auto manifest = trpkit::app::CmdTrain(train);
      std::cout << "wrote " << manifest.artifacts.size() + 1 << " files to "
                << train.out_dir << "\n";
    } else if (dec_cmd->parsed()) {
      const auto report = trpkit::app::CmdDecompose(dec_checkpoint, dec_scheme,
                                                    dec_energy, dec_out);
      trpkit::app::PrintDecomposeReport(report, std::cout);
    } else if (eval_cmd->parsed()) {
      eval.config_path = eval_config;
      trpkit::app::PrintEvalReport(trpkit::app::CmdEval(eval), std::cout);
    } else if (report_cmd->parsed()) {
      for (const std::string &f : trpkit::app::CmdReport(report_dir).files) {
        std::cout << f << "\n";
      }
    }
  } catch (const trpkit::Error &e) {
    std::cerr << "trp: " << trpkit::ErrorKindName(e.kind())
              << " error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception &e) {
    std::cerr << "trp: error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
