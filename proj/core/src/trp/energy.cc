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
#include "trpkit/trp/energy.h"

#include "trpkit/common/error.h"

namespace trpkit {
namespace trp {

std::vector<double> EnergyRatios(std::span<const double> sigma, std::size_t k) {
  if (k > sigma.size()) {
    throw ConfigError("EnergyRatios: k exceeds the spectrum length");
  }
  double total = 0.0;
  for (double s : sigma) total += s * s;
  if (!(total > 0.0)) {
    throw ConfigError("EnergyRatios: spectrum is all zero");
  }
  std::vector<double> er(k);
  for (std::size_t i = 0; i < k; ++i) er[i] = sigma[i] * sigma[i] / total;
  return er;
}

}  // namespace trp
}  // namespace trpkit
