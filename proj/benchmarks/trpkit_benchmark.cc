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
#include <benchmark/benchmark.h>

#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "trpkit/common/batch.h"
#include "trpkit/linalg/matrix.h"
#include "trpkit/linalg/svd.h"
#include "trpkit/net/model.h"
#include "trpkit/net/network.h"
#include "trpkit/reshape/reshape.h"

namespace trpkit {
namespace {

linalg::Matrix Gaussian(std::size_t rows, std::size_t cols,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  linalg::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = normal(rng);
  }
  return m;
}

Batch RandomBatch(const ImageShape &shape, std::size_t n, std::size_t classes) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Batch b;
  b.shape = shape;
  b.images.resize(n * shape.count());
  for (double &v : b.images) v = normal(rng);
  for (std::size_t i = 0; i < n; ++i) b.labels.push_back(i % classes);
  return b;
}

// Conv layers replaced by factor pairs, the way the decompose verb does it.
net::NetworkModel Decomposed(const net::NetworkModel &model,
                             reshape::DecompScheme scheme, double energy) {
  net::NetworkModel out;
  out.input = model.input;
  for (const net::Layer &layer : model.layers) {
    const auto *conv = std::get_if<net::Conv2DLayer>(&layer);
    if (conv == nullptr) {
      out.layers.push_back(layer);
      continue;
    }
    reshape::DecomposedPair pair =
        reshape::DecomposeExport(conv->weights, scheme, energy);
    out.layers.push_back(net::Conv2DLayer{
        std::move(pair.first), std::vector<double>(pair.rank, 0.0)});
    out.layers.push_back(net::Conv2DLayer{std::move(pair.second), conv->bias});
  }
  return out;
}

void BM_Svd(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const linalg::Matrix a = Gaussian(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::Svd(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(4, 64)->Complexity();

// Typical conv views: (n, c*kh*kw) for the two layers of the tiny net.
void BM_Tsvd(benchmark::State &state) {
  const linalg::Matrix a = Gaussian(state.range(0), state.range(1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::Tsvd(a, 0.05));
}
BENCHMARK(BM_Tsvd)->Args({8, 9})->Args({16, 72})->Args({24, 48});

void BM_LowRankProject(benchmark::State &state) {
  const auto scheme = static_cast<reshape::DecompScheme>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  reshape::WeightTensor w({16, 8, 3, 3});
  for (double &v : w.data()) v = normal(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reshape::LowRankProject(w, scheme, 0.05));
  }
}
BENCHMARK(BM_LowRankProject)
    ->Arg(static_cast<int>(reshape::DecompScheme::kChannelWise))
    ->Arg(static_cast<int>(reshape::DecompScheme::kSpatialWise));

void BM_Forward(benchmark::State &state) {
  const net::NetworkModel m = net::MakeTinyConvNet({1, 16, 16}, 4, 1);
  const Batch b = RandomBatch(m.input, state.range(0), 4);
  for (auto _ : state) benchmark::DoNotOptimize(net::Forward(m, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Forward)->Arg(1)->Arg(32);

void BM_Backward(benchmark::State &state) {
  const net::NetworkModel m = net::MakeTinyConvNet({1, 16, 16}, 4, 1);
  const Batch b = RandomBatch(m.input, state.range(0), 4);
  for (auto _ : state) benchmark::DoNotOptimize(net::Backward(m, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Backward)->Arg(1)->Arg(32);

// Arguments: scheme, energy in percent. Compare against BM_Forward/32.
void BM_DecomposedForward(benchmark::State &state) {
  const auto scheme = static_cast<reshape::DecompScheme>(state.range(0));
  const double energy = static_cast<double>(state.range(1)) / 100.0;
  const net::NetworkModel m =
      Decomposed(net::MakeTinyConvNet({1, 16, 16}, 4, 1), scheme, energy);
  const Batch b = RandomBatch(m.input, 32, 4);
  for (auto _ : state) benchmark::DoNotOptimize(net::Forward(m, b));
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_DecomposedForward)
    ->ArgsProduct({{static_cast<int>(reshape::DecompScheme::kChannelWise),
                    static_cast<int>(reshape::DecompScheme::kSpatialWise)},
                   {5, 30, 60}});

}  // namespace
}  // namespace trpkit

BENCHMARK_MAIN();
