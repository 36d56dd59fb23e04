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
#include "trpkit/linalg/perturbation.h"

#include <cmath>
#include <string>

#include "trpkit/common/error.h"
#include "trpkit/linalg/norms.h"
#include "trpkit/linalg/svd.h"

namespace trpkit {
namespace linalg {

BoundReport CheckMirsky(const Matrix &a, const Matrix &noise) {
  CheckSameShape(a, noise, "CheckMirsky");
  const SvdFactors clean = Svd(a);
  const SvdFactors perturbed = Svd(Add(a, noise));
  double acc = 0.0;
  for (std::size_t i = 0; i < clean.sigma.size(); ++i) {
    const double d = perturbed.sigma[i] - clean.sigma[i];
    acc += d * d;
  }
  BoundReport r;
  r.lhs = std::sqrt(acc);
  r.rhs = FrobeniusNorm(noise);
  r.holds = r.lhs <= r.rhs + kBoundSlack;
  return r;
}

BoundReport CheckLowRankResidual(const Matrix &a, const Matrix &b,
                                 std::size_t k) {
  CheckSameShape(a, b, "CheckLowRankResidual");
  const std::size_t b_rank = NumericalRank(Svd(b).sigma);
  if (b_rank > k) {
    throw ConfigError("CheckLowRankResidual: b has numerical rank " +
                      std::to_string(b_rank) + " > k = " + std::to_string(k));
  }
  const SvdFactors fa = Svd(a);
  double tail = 0.0;
  for (std::size_t j = k; j < fa.sigma.size(); ++j) {
    tail += fa.sigma[j] * fa.sigma[j];
  }
  BoundReport r;
  r.lhs = FrobeniusNorm(Subtract(b, a));
  r.rhs = std::sqrt(tail);
  r.holds = r.lhs >= r.rhs - kBoundSlack;
  return r;
}

}  // namespace linalg
}  // namespace trpkit
