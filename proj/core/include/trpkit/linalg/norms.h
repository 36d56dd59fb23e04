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
#ifndef TRPKIT_LINALG_NORMS_H_
#define TRPKIT_LINALG_NORMS_H_

#include "trpkit/linalg/matrix.h"

namespace trpkit {
namespace linalg {

double FrobeniusNorm(const Matrix &a);

// Sum of singular values.
double NuclearNorm(const Matrix &a);

// U_r * V_r^T where r is the numerical rank of `a` (singular values above
// 1e-10 * sigma_max). This is a sub-gradient of the nuclear norm at `a`,
// and the gradient whenever `a` has full rank.
Matrix NuclearSubgradient(const Matrix &a);

}  // namespace linalg
}  // namespace trpkit

#endif  // TRPKIT_LINALG_NORMS_H_
