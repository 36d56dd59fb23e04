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
#ifndef TRPKIT_DATA_DATASET_H_
#define TRPKIT_DATA_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "trpkit/common/batch.h"

namespace trpkit {
namespace data {

// Immutable labelled image collection.
struct Dataset {
  Batch samples;
  std::size_t class_count = 0;

  std::size_t size() const { return samples.size(); }
  const ImageShape &shape() const { return samples.shape; }

  // Throws ConfigError on inconsistent buffers or out-of-range labels.
  void Validate() const;
  Batch MakeBatch(std::span<const std::size_t> indices) const;
  std::size_t CountOfClass(std::int32_t label) const;
};

struct SplitDataset {
  Dataset train;
  Dataset test;
};

// Puts every `test_every`-th sample (index % test_every == test_every - 1)
// into the test split. Requires every class to keep at least one training
// sample.
SplitDataset SplitEvery(const Dataset &all, std::size_t test_every);

// Scales every channel to zero mean / unit variance using training-split
// statistics; the same affine map is applied to the test split.
void NormalizePerChannel(SplitDataset &split);

// 64-bit FNV-1a over shape, class count, labels and raw image bits, as 16
// lowercase hex digits.
std::string Fingerprint(const Dataset &dataset);
std::string Fingerprint(const SplitDataset &split);

}  // namespace data
}  // namespace trpkit

#endif  // TRPKIT_DATA_DATASET_H_
