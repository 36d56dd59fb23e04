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
// Independent reference implementations used only by tests. None of these
// call into the library code paths they are used to check.
#ifndef TRPKIT_TESTS_SUPPORT_ORACLES_H_
#define TRPKIT_TESTS_SUPPORT_ORACLES_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "trpkit/common/batch.h"
#include "trpkit/linalg/matrix.h"
#include "trpkit/net/model.h"
#include "trpkit/reshape/tensor.h"

namespace trpkit {
namespace testing {

// Matrix with i.i.d. standard normal entries.
linalg::Matrix RandomMatrix(std::size_t rows, std::size_t cols,
                            std::mt19937_64 &rng);
// Product of random rows x k and k x cols factors.
linalg::Matrix RandomRankK(std::size_t rows, std::size_t cols, std::size_t k,
                           std::mt19937_64 &rng);
reshape::WeightTensor RandomTensor(const reshape::FilterShape &shape,
                                   std::mt19937_64 &rng);

// Singular values as square roots of the eigenvalues of A^T A (or A A^T,
// whichever is smaller), computed by Eigen's self-adjoint eigensolver.
// Descending order.
std::vector<double> EigenOracleSingularValues(const linalg::Matrix &a);

// Brute-force rank scan: smallest k >= 1 whose discarded tail energy is at
// most e times the total, evaluating every k from scratch.
std::size_t BruteForceRank(const std::vector<double> &sigma, double e);
double TailEnergy(const std::vector<double> &sigma, std::size_t k);

// Zero-padded "same" cross-correlation, stride 1, no bias. Input and output
// are [c][h][w].
std::vector<double> DirectConv(const reshape::WeightTensor &w,
                               const std::vector<double> &input,
                               std::size_t h, std::size_t width);

// Counts multiply-accumulates by walking the convolution loop nests.
std::uint64_t CountConvMacs(const reshape::FilterShape &shape, std::size_t out_h,
                            std::size_t out_w);

// Straightforward per-sample forward pass over the model's layers; returns
// the mean softmax cross-entropy and fills per-sample logits.
double LoopNestLoss(const net::NetworkModel &model, const Batch &batch,
                    std::vector<std::vector<double>> *logits = nullptr);

}  // namespace testing
}  // namespace trpkit

#endif  // TRPKIT_TESTS_SUPPORT_ORACLES_H_
