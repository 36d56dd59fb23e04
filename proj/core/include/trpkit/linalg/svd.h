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
#ifndef TRPKIT_LINALG_SVD_H_
#define TRPKIT_LINALG_SVD_H_

#include <cstddef>
#include <span>
#include <vector>

#include "trpkit/linalg/matrix.h"

namespace trpkit {
namespace linalg {

// A = u * diag(sigma) * v^T with u: rows x r, v: cols x r,
// r = min(rows, cols), sigma non-increasing and non-negative.
struct SvdFactors {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;

  std::size_t rank_capacity() const { return sigma.size(); }
};

// Energy-truncated decomposition. `factors` keeps the leading `rank`
// singular triplets.
struct TsvdResult {
  std::size_t rank = 0;
  SvdFactors factors;
  double retained_energy = 0.0;
  double discarded_energy = 0.0;
  // Full spectrum of the input, before truncation.
  std::vector<double> full_sigma;
};

struct SvdOptions {
  int max_sweeps = 60;
  // Sweeps stop once the residual off-diagonal mass drops below
  // off_diagonal_tol * ||A||_F (per pair, relative to column norms).
  double off_diagonal_tol = 1e-12;
};

// One-sided Jacobi SVD. Wide inputs are decomposed through their transpose.
// Deterministic: fixed cyclic sweep order, stable descending sort, and the
// first non-negligible entry of every u column is made non-negative.
// Throws NumericalError (carrying the residual off-diagonal norm) when the
// sweep cap is hit.
SvdFactors Svd(const Matrix &a, const SvdOptions &options = {});

// Smallest k >= 1 such that sum_{j>=k} sigma_j^2 <= energy * sum_j sigma_j^2
// (0-based j). sigma must be non-increasing.
std::size_t SelectRank(std::span<const double> sigma, double energy);

// Truncated SVD at the smallest rank whose discarded squared-singular-value
// mass is at most `energy` of the total. energy must lie in (0, 1).
TsvdResult Tsvd(const Matrix &a, double energy);

// u * diag(sigma) * v^T
Matrix Reconstruct(const SvdFactors &factors);

// Count of singular values above rel_tol * sigma_max (0 for a zero matrix).
std::size_t NumericalRank(std::span<const double> sigma,
                          double rel_tol = 1e-10);

}  // namespace linalg
}  // namespace trpkit

#endif  // TRPKIT_LINALG_SVD_H_
