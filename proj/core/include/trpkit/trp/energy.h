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
#ifndef TRPKIT_TRP_ENERGY_H_
#define TRPKIT_TRP_ENERGY_H_

#include <cstddef>
#include <span>
#include <vector>

namespace trpkit {
namespace trp {

// ER(i) = sigma_i^2 / sum_j sigma_j^2 for the first `k` values, where the sum
// runs over the whole of `sigma`. Throws ConfigError for an all-zero
// spectrum or k > sigma.size().
std::vector<double> EnergyRatios(std::span<const double> sigma, std::size_t k);

}  // namespace trp
}  // namespace trpkit

#endif  // TRPKIT_TRP_ENERGY_H_
