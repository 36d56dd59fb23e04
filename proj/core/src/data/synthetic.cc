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
#include "trpkit/data/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "trpkit/common/error.h"

namespace trpkit {
namespace data {
namespace {

constexpr std::size_t kMaxFrequency = 2;

std::vector<double> MakeTemplate(const ImageShape &s, std::mt19937_64 &rng) {
  std::normal_distribution<double> coeff(0.0, 1.0);
  std::vector<double> t(s.count(), 0.0);
  for (std::size_t c = 0; c < s.c; ++c) {
    for (std::size_t fy = 0; fy <= kMaxFrequency; ++fy) {
      for (std::size_t fx = 0; fx <= kMaxFrequency; ++fx) {
        if (fy == 0 && fx == 0) continue;
        const double a = coeff(rng);
        for (std::size_t y = 0; y < s.h; ++y) {
          const double cy = std::cos(std::numbers::pi * fy * (y + 0.5) / s.h);
          for (std::size_t x = 0; x < s.w; ++x) {
            const double cx = std::cos(std::numbers::pi * fx * (x + 0.5) / s.w);
            t[(c * s.h + y) * s.w + x] += a * cy * cx;
          }
        }
      }
    }
  }
  double sq = 0.0;
  for (double v : t) sq += v * v;
  const double rms = std::sqrt(sq / static_cast<double>(t.size()));
  for (double &v : t) v = 0.5 + (rms > 0.0 ? v / rms : 0.0);
  return t;
}

}  // namespace

SplitDataset GenerateSynthetic(const SyntheticOptions &o) {
  if (o.classes < 2) throw ConfigError("synthetic data needs >= 2 classes");
  if (o.per_class < 2) {
    throw ConfigError("synthetic data needs >= 2 samples per class");
  }
  if (o.shape.count() == 0) throw ConfigError("synthetic image shape is empty");
  if (!(o.noise >= 0.0) || !std::isfinite(o.noise)) {
    throw ConfigError("synthetic noise must be finite and non-negative");
  }
  if (!(o.test_fraction > 0.0 && o.test_fraction < 1.0)) {
    throw ConfigError("synthetic test_fraction must lie in (0, 1)");
  }

  std::mt19937_64 rng(o.seed);
  std::vector<std::vector<double>> templates;
  for (std::size_t k = 0; k < o.classes; ++k) {
    templates.push_back(MakeTemplate(o.shape, rng));
  }

  const auto n_test = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(o.per_class * o.test_fraction)),
      1, o.per_class - 1);

  SplitDataset split;
  for (Dataset *d : {&split.train, &split.test}) {
    d->samples.shape = o.shape;
    d->class_count = o.classes;
  }
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t k = 0; k < o.classes; ++k) {
    for (std::size_t i = 0; i < o.per_class; ++i) {
      Dataset &dst = i + n_test < o.per_class ? split.train : split.test;
      for (double t : templates[k]) {
        dst.samples.images.push_back(t + o.noise * noise(rng));
      }
      dst.samples.labels.push_back(static_cast<std::int32_t>(k));
    }
  }
  return split;
}

}  // namespace data
}  // namespace trpkit
