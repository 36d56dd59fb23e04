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
// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// zero only when every criterion passes.
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "commands.h"
#include "spdlog/spdlog.h"
#include "oracles.h"
#include "trpkit/data/synthetic.h"
#include "trpkit/linalg/norms.h"
#include "trpkit/linalg/perturbation.h"
#include "trpkit/linalg/svd.h"
#include "trpkit/net/model.h"
#include "trpkit/net/network.h"
#include "trpkit/reshape/flops.h"
#include "trpkit/reshape/reshape.h"
#include "trpkit/trp/monitor.h"
#include "trpkit/trp/trainer.h"
#include "trpkit/trp/trajectory_io.h"

namespace trpkit {
namespace {

namespace fs = std::filesystem;
using linalg::Matrix;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char *fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

fs::path ScratchDir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("trpkit_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Outcome TsvdRankSelection() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> dim(1, 32);
  std::size_t checks = 0, bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix a = testing::RandomMatrix(dim(rng), dim(rng), rng);
    const std::vector<double> oracle = testing::EigenOracleSingularValues(a);
    for (double e : {0.005, 0.02, 0.05, 0.5}) {
      const linalg::TsvdResult r = linalg::Tsvd(a, e);
      const std::vector<double> &s = r.full_sigma;
      const double total = testing::TailEnergy(s, 0);
      const std::size_t k = r.rank;
      bool ok = testing::TailEnergy(s, k) <= e * total;
      if (k > 1) ok = ok && testing::TailEnergy(s, k - 1) > e * total;
      ok = ok && k == testing::BruteForceRank(oracle, e);
      ++checks;
      if (!ok) ++bad;
    }
  }
  return {bad == 0, Format("%zu/%zu selections agree", checks - bad, checks)};
}

Outcome SvdOracleEquivalence() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<int> dim(1, 32);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = testing::RandomMatrix(dim(rng), dim(rng), rng);
    const std::vector<double> got = linalg::Svd(a).sigma;
    const std::vector<double> want = testing::EigenOracleSingularValues(a);
    if (got.size() != want.size()) return {false, "spectrum length differs"};
    for (std::size_t i = 0; i < got.size(); ++i) {
      worst = std::max(worst, std::abs(got[i] - want[i]) / want[i]);
    }
  }
  return {worst <= 1e-8, Format("max relative error %.3g (tol 1e-8)", worst)};
}

Outcome NuclearSubgradient() {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<int> dim(1, 12);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = testing::RandomMatrix(dim(rng), dim(rng), rng);
    const Matrix d = testing::RandomMatrix(a.rows(), a.cols(), rng);
    const double h = 1e-6;
    const double fd = (linalg::NuclearNorm(linalg::Add(a, linalg::Scaled(d, h))) -
                       linalg::NuclearNorm(linalg::Subtract(a, linalg::Scaled(d, h)))) /
                      (2 * h);
    const double an = linalg::InnerProduct(linalg::NuclearSubgradient(a), d);
    worst = std::max(worst, std::abs(fd - an) /
                                std::max({std::abs(fd), std::abs(an), 1e-6}));
  }
  return {worst <= 1e-4, Format("max relative error %.3g (tol 1e-4)", worst)};
}

Outcome PerturbationBounds() {
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<int> dim(1, 12);
  std::uniform_real_distribution<double> log_scale(-3.0, 1.0);
  std::size_t mirsky_bad = 0, residual_bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix a = testing::RandomMatrix(dim(rng), dim(rng), rng);
    const Matrix noise = linalg::Scaled(
        testing::RandomMatrix(a.rows(), a.cols(), rng),
        std::pow(10.0, log_scale(rng)));
    if (!linalg::CheckMirsky(a, noise).holds) ++mirsky_bad;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix a = testing::RandomMatrix(dim(rng), dim(rng), rng);
    const std::size_t full = std::min(a.rows(), a.cols());
    const std::size_t k =
        std::uniform_int_distribution<std::size_t>(1, full)(rng);
    // Alternate random rank-k matrices with the optimal truncation.
    const Matrix b =
        trial % 2 == 0
            ? testing::RandomRankK(a.rows(), a.cols(), k, rng)
            : linalg::Reconstruct(linalg::Tsvd(a, 0.5).factors);
    const std::size_t kb = trial % 2 == 0 ? k : linalg::Tsvd(a, 0.5).rank;
    if (!linalg::CheckLowRankResidual(a, b, kb).holds) ++residual_bad;
  }
  return {mirsky_bad == 0 && residual_bad == 0,
          Format("violations: singular-value %zu/1000, low-rank residual "
                 "%zu/1000",
                 mirsky_bad, residual_bad)};
}

Outcome CascadeEquivalence() {
  std::mt19937_64 rng(1005);
  std::uniform_int_distribution<std::size_t> small(1, 6);
  std::uniform_int_distribution<std::size_t> half(0, 2);
  std::uniform_real_distribution<double> energy(0.01, 0.5);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (auto scheme : {reshape::DecompScheme::kChannelWise,
                      reshape::DecompScheme::kSpatialWise}) {
    for (int trial = 0; trial < 50; ++trial) {
      const reshape::FilterShape s{small(rng), small(rng), 2 * half(rng) + 1,
                                   2 * half(rng) + 1};
      const std::size_t h = small(rng) + 2, w = small(rng) + 2;
      const reshape::WeightTensor t = testing::RandomTensor(s, rng);
      std::vector<double> x(s.c * h * w);
      for (double &v : x) v = normal(rng);
      const double e = energy(rng);
      const auto pair = reshape::DecomposeExport(t, scheme, e);
      const auto proj = reshape::LowRankProject(t, scheme, e);
      const auto got = testing::DirectConv(
          pair.second, testing::DirectConv(pair.first, x, h, w), h, w);
      const auto want = testing::DirectConv(proj.weights, x, h, w);
      for (std::size_t i = 0; i < got.size(); ++i) {
        worst = std::max(worst, std::abs(got[i] - want[i]));
      }
    }
  }
  return {worst <= 1e-8, Format("100 pairs, max abs diff %.3g (tol 1e-8)", worst)};
}

Outcome NetworkGradients() {
  double worst = 0.0;
  std::size_t params = 0;
  for (std::uint64_t seed : {1u, 2u}) {
    net::NetworkModel m = net::MakeTinyConvNet({1, 8, 8}, 4, seed);
    std::mt19937_64 rng(seed + 1006);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> bias(-0.1, 0.1);
    for (net::Layer &layer : m.layers) {
      for (double &b : net::BiasStorage(layer)) b = bias(rng);
    }
    Batch batch;
    batch.shape = m.input;
    for (int i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < m.input.count(); ++j) {
        batch.images.push_back(normal(rng));
      }
      batch.labels.push_back(i % 4);
    }
    const net::GradientSet g = net::Backward(m, batch);
    const double h = 1e-6;
    for (std::size_t li = 0; li < m.layers.size(); ++li) {
      for (int which = 0; which < 2; ++which) {
        std::span<double> p = which == 0 ? net::WeightStorage(m.layers[li])
                                         : net::BiasStorage(m.layers[li]);
        const auto &an = which == 0 ? g.layers[li].weights : g.layers[li].bias;
        for (std::size_t i = 0; i < p.size(); ++i) {
          const double saved = p[i];
          p[i] = saved + h;
          const double up = testing::LoopNestLoss(m, batch);
          p[i] = saved - h;
          const double down = testing::LoopNestLoss(m, batch);
          p[i] = saved;
          const double fd = (up - down) / (2 * h);
          worst = std::max(worst, std::abs(fd - an[i]) /
                                      std::max({std::abs(fd), std::abs(an[i]),
                                                1e-6}));
          ++params;
        }
      }
    }
  }
  return {worst <= 1e-4,
          Format("%zu parameter checks over 2 nets, max relative error %.3g "
                 "(tol 1e-4)",
                 params, worst)};
}

Outcome RankMonotonicity() {
  std::size_t pairs = 0, hypothesis = 0, violations = 0;
  double max_stat = 0.0;
  bool shape_ok = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    data::SyntheticOptions o;
    o.seed = seed;
    const data::SplitDataset d = data::GenerateSynthetic(o);
    trp::TrpConfig c;
    trp::ApplyPreset(c, trp::Preset::kTrp);
    c.energy_e = 0.05;
    c.seed = seed;
    const trp::TrainResult r = trp::Train(
        net::MakeTinyConvNet(d.train.shape(), o.classes, seed), d, c);
    for (std::size_t layer : r.trajectory.Layers()) {
      // z = 0..40: forty consecutive pairs per layer.
      shape_ok = shape_ok && r.trajectory.ForLayer(layer).size() == 41;
    }
    const trp::MonitorSummary s =
        trp::RankMonotonicityMonitor(r.trajectory, c).summary;
    pairs += s.pairs;
    hypothesis += s.hypothesis_pairs;
    violations += s.violations;
    max_stat = std::max(max_stat, s.max_bound_stat);
  }
  return {shape_ok && violations == 0 && hypothesis > 0,
          Format("5 seeds, %zu pairs, %zu with bound_stat < sqrt(e)=%.4f, "
                 "%zu violations",
                 pairs, hypothesis, std::sqrt(0.05), violations)};
}

struct Drop {
  double before = 0.0;
  double after = 0.0;
  double value() const { return before - after; }
};

Drop TrainAndDecompose(trp::Preset preset, std::uint64_t seed, double e) {
  const fs::path dir = ScratchDir() / Format("abl_%s_%llu",
                                             std::string(trp::PresetName(preset)).c_str(),
                                             static_cast<unsigned long long>(seed));
  app::TrainOptions o;
  o.preset = preset;
  o.seed = seed;
  o.energy = e;
  o.dataset = "synthetic:" + std::to_string(seed);
  o.out_dir = dir.string();
  app::CmdTrain(o);
  const std::string ckpt = (dir / app::kCheckpointFile).string();
  const std::string dec = (dir / "decomposed.trpk").string();
  app::CmdDecompose(ckpt, reshape::DecompScheme::kChannelWise, e, dec);
  app::EvalOptions eval;
  eval.dataset = o.dataset;
  eval.checkpoint = ckpt;
  Drop d;
  d.before = app::CmdEval(eval).accuracy;
  eval.checkpoint = dec;
  d.after = app::CmdEval(eval).accuracy;
  return d;
}

Outcome AblationDirection() {
  // Matched energy for TRP training and for decomposing every model.
  const double e = 0.4;
  std::string detail = Format("e=%.2f drops (pp) base/trp/trp_nu:", e);
  std::size_t ok = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Drop base = TrainAndDecompose(trp::Preset::kBaseline, seed, e);
    const Drop plain = TrainAndDecompose(trp::Preset::kTrp, seed, e);
    const Drop nu = TrainAndDecompose(trp::Preset::kTrpNu, seed, e);
    if (plain.value() < base.value() && nu.value() <= plain.value()) ++ok;
    detail += Format(" [%.1f/%.1f/%.1f]", 100 * base.value(),
                     100 * plain.value(), 100 * nu.value());
  }
  return {ok == 3, detail + Format(", %zu/3 seeds ordered", ok)};
}

Outcome FlopsCounter() {
  std::mt19937_64 rng(1009);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  std::size_t matched = 0;
  bool monotone = true;
  for (int trial = 0; trial < 100; ++trial) {
    const reshape::FilterShape s{dim(rng), dim(rng), dim(rng), dim(rng)};
    const std::size_t oh = dim(rng), ow = dim(rng);
    const auto scheme = trial % 2 == 0 ? reshape::DecompScheme::kChannelWise
                                       : reshape::DecompScheme::kSpatialWise;
    const std::size_t full = scheme == reshape::DecompScheme::kChannelWise
                                 ? std::min(s.n, s.c * s.kh * s.kw)
                                 : std::min(s.c * s.kh, s.n * s.kw);
    const std::size_t k =
        std::uniform_int_distribution<std::size_t>(1, full)(rng);
    const reshape::FlopsReport r = reshape::ComputeFlops(s, oh, ow, scheme, k);
    const std::uint64_t want =
        scheme == reshape::DecompScheme::kChannelWise
            ? testing::CountConvMacs({k, s.c, s.kh, s.kw}, oh, ow) +
                  testing::CountConvMacs({s.n, k, 1, 1}, oh, ow)
            : testing::CountConvMacs({k, s.c, s.kh, 1}, oh, ow) +
                  testing::CountConvMacs({s.n, k, 1, s.kw}, oh, ow);
    if (r.original == testing::CountConvMacs(s, oh, ow) && r.decomposed == want) {
      ++matched;
    }
    if (k > 1) {
      const auto lower = reshape::ComputeFlops(s, oh, ow, scheme, k - 1);
      monotone = monotone && lower.decomposed < r.decomposed &&
                 lower.speedup > r.speedup;
    }
  }
  // Hand check: (8,4,3,3) at 8x8, spatial, k = 2.
  const auto hand = reshape::ComputeFlops({8, 4, 3, 3}, 8, 8,
                                          reshape::DecompScheme::kSpatialWise, 2);
  const bool hand_ok = hand.original == 18432 && hand.decomposed == 4608 &&
                       hand.speedup == 4.0;
  return {matched == 100 && monotone && hand_ok,
          Format("%zu/100 exact, monotone in k: %s, hand check: %s", matched,
                 monotone ? "yes" : "no", hand_ok ? "yes" : "no")};
}

Outcome Determinism() {
  std::vector<std::string> texts;
  for (const char *name : {"det_a", "det_b"}) {
    app::TrainOptions o;
    o.preset = trp::Preset::kTrpNu;
    o.out_dir = (ScratchDir() / name).string();
    app::CmdTrain(o);
    for (const char *f : {app::kMetricsFile, app::kTrajectoryCsvFile,
                          app::kTrajectoryJsonlFile}) {
      texts.push_back(trp::ReadTextFile((fs::path(o.out_dir) / f).string()));
    }
  }
  bool same = true;
  for (std::size_t i = 0; i < 3; ++i) same = same && texts[i] == texts[i + 3];
  return {same && !texts[1].empty(),
          same ? "metrics and trajectory files byte-identical"
               : "outputs differ between runs"};
}

struct Criterion {
  const char *name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace trpkit

int main() {
  using namespace trpkit;
  // Training progress goes through the app logger; keep the report clean.
  spdlog::set_level(spdlog::level::off);
  const std::vector<Criterion> criteria = {
      {"tsvd_rank_selection", 10, TsvdRankSelection},
      {"svd_oracle_equivalence", 10, SvdOracleEquivalence},
      {"nuclear_subgradient", 10, NuclearSubgradient},
      {"perturbation_bounds", 30, PerturbationBounds},
      {"cascade_equivalence", 30, CascadeEquivalence},
      {"network_gradients", 60, NetworkGradients},
      {"rank_monotonicity", 300, RankMonotonicity},
      {"ablation_direction", 600, AblationDirection},
      {"flops_counter", 5, FlopsCounter},
      {"determinism", 0, Determinism},
  };
  int failures = 0;
  for (const Criterion &c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception &e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::string limit = c.limit_seconds == 0
                            ? std::string("no limit")
                            : Format("limit %.0fs", c.limit_seconds);
    std::printf("%s %-24s %s [%.2fs, %s]\n", pass ? "PASS" : "FAIL", c.name,
                out.detail.c_str(), secs, limit.c_str());
    std::fflush(stdout);
  }
  std::filesystem::remove_all(ScratchDir());
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
