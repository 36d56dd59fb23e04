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
#ifndef TRPKIT_DATA_SYNTHETIC_H_
#define TRPKIT_DATA_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>

#include "trpkit/common/batch.h"
#include "trpkit/data/dataset.h"

namespace trpkit {
namespace data {

struct SyntheticOptions {
  std::uint64_t seed = 1;
  std::size_t classes = 4;
  std::size_t per_class = 200;
  ImageShape shape{1, 8, 8};
  // Standard deviation of the per-pixel Gaussian noise.
  double noise = 2.5;
  // Per class, the last round(per_class * test_fraction) samples (at least
  // one, at most per_class - 1) form the test split.
  double test_fraction = 0.25;
};

// Each class has a template built from a seeded combination of low-frequency
// cosine patterns (unit RMS contrast around 0.5); samples add i.i.d. Gaussian
// pixel noise.
SplitDataset GenerateSynthetic(const SyntheticOptions &options);

}  // namespace data
}  // namespace trpkit

#endif  // TRPKIT_DATA_SYNTHETIC_H_
