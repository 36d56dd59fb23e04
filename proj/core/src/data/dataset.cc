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
#include "trpkit/data/dataset.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <vector>

#include "trpkit/common/error.h"

namespace trpkit {
namespace data {
namespace {

class Fnv1a {
 public:
  void Add(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      hash_ ^= (v >> (8 * i)) & 0xffu;
      hash_ *= 0x100000001b3ull;
    }
  }
  void Add(const Dataset &d) {
    Add(d.shape().c, 8);
    Add(d.shape().h, 8);
    Add(d.shape().w, 8);
    Add(d.class_count, 8);
    Add(d.size(), 8);
    for (std::int32_t l : d.samples.labels) Add(static_cast<std::uint32_t>(l), 4);
    for (double x : d.samples.images) Add(std::bit_cast<std::uint64_t>(x), 8);
  }
  std::string Hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash_));
    return buf;
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

}  // namespace

void Dataset::Validate() const {
  if (shape().count() == 0) throw ConfigError("dataset image shape is empty");
  if (samples.images.size() != size() * shape().count()) {
    throw ConfigError("dataset image buffer does not match sample count");
  }
  if (class_count < 2) throw ConfigError("dataset needs at least two classes");
  for (std::int32_t l : samples.labels) {
    if (l < 0 || static_cast<std::size_t>(l) >= class_count) {
      throw ConfigError("dataset label " + std::to_string(l) +
                        " out of range");
    }
  }
}

Batch Dataset::MakeBatch(std::span<const std::size_t> indices) const {
  Batch b;
  b.shape = shape();
  const std::size_t stride = shape().count();
  b.images.reserve(indices.size() * stride);
  b.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) throw ConfigError("batch index out of range");
    const double *img = samples.image(i);
    b.images.insert(b.images.end(), img, img + stride);
    b.labels.push_back(samples.labels[i]);
  }
  return b;
}

std::size_t Dataset::CountOfClass(std::int32_t label) const {
  return static_cast<std::size_t>(
      std::count(samples.labels.begin(), samples.labels.end(), label));
}

SplitDataset SplitEvery(const Dataset &all, std::size_t test_every) {
  if (test_every < 2) throw ConfigError("SplitEvery: test_every must be >= 2");
  all.Validate();
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (std::size_t i = 0; i < all.size(); ++i) {
    (i % test_every == test_every - 1 ? test_idx : train_idx).push_back(i);
  }
  SplitDataset split;
  split.train = Dataset{all.MakeBatch(train_idx), all.class_count};
  split.test = Dataset{all.MakeBatch(test_idx), all.class_count};
  for (std::size_t c = 0; c < all.class_count; ++c) {
    if (split.train.CountOfClass(static_cast<std::int32_t>(c)) == 0) {
      throw ConfigError("class " + std::to_string(c) +
                        " has no training samples after the split");
    }
  }
  return split;
}

void NormalizePerChannel(SplitDataset &split) {
  const ImageShape s = split.train.shape();
  const std::size_t plane = s.h * s.w;
  for (std::size_t c = 0; c < s.c; ++c) {
    double sum = 0.0;
    double sq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < split.train.size(); ++i) {
      const double *p = split.train.samples.image(i) + c * plane;
      for (std::size_t j = 0; j < plane; ++j) {
        sum += p[j];
        sq += p[j] * p[j];
      }
      count += plane;
    }
    if (count == 0) continue;
    const double mean = sum / static_cast<double>(count);
    const double var = std::max(sq / static_cast<double>(count) - mean * mean, 0.0);
    const double inv = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
    for (Dataset *d : {&split.train, &split.test}) {
      for (std::size_t i = 0; i < d->size(); ++i) {
        double *p = d->samples.images.data() + i * s.count() + c * plane;
        for (std::size_t j = 0; j < plane; ++j) p[j] = (p[j] - mean) * inv;
      }
    }
  }
}

std::string Fingerprint(const Dataset &dataset) {
  Fnv1a h;
  h.Add(dataset);
  return h.Hex();
}

std::string Fingerprint(const SplitDataset &split) {
  Fnv1a h;
  h.Add(split.train);
  h.Add(split.test);
  return h.Hex();
}

}  // namespace data
}  // namespace trpkit
