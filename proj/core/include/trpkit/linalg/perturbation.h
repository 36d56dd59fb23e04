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
#ifndef TRPKIT_LINALG_PERTURBATION_H_
#define TRPKIT_LINALG_PERTURBATION_H_

#include <cstddef>

#include "trpkit/linalg/matrix.h"

namespace trpkit {
namespace linalg {

struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline constexpr double kBoundSlack = 1e-10;

// Mirsky: sqrt(sum_i |sigma_i(a + noise) - sigma_i(a)|^2) <= ||noise||_F.
BoundReport CheckMirsky(const Matrix &a, const Matrix &noise);

// For any b of rank <= k: ||b - a||_F >= sqrt(sum_{j>k} sigma_j(a)^2).
// Throws ConfigError if the numerical rank of b exceeds k.
BoundReport CheckLowRankResidual(const Matrix &a, const Matrix &b,
                                 std::size_t k);

}  // namespace linalg
}  // namespace trpkit

#endif  // TRPKIT_LINALG_PERTURBATION_H_
