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
#include "trpkit/linalg/norms.h"

#include <cmath>
#include <numeric>

#include "trpkit/linalg/svd.h"

namespace trpkit {
namespace linalg {

double FrobeniusNorm(const Matrix &a) {
  double acc = 0.0;
  for (double x : a.data()) acc += x * x;
  return std::sqrt(acc);
}

double NuclearNorm(const Matrix &a) {
  const SvdFactors f = Svd(a);
  return std::accumulate(f.sigma.begin(), f.sigma.end(), 0.0);
}

Matrix NuclearSubgradient(const Matrix &a) {
  const SvdFactors f = Svd(a);
  const std::size_t r = NumericalRank(f.sigma);
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t l = 0; l < r; ++l) acc += f.u(i, l) * f.v(j, l);
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace linalg
}  // namespace trpkit
