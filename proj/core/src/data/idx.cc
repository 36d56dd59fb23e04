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
#include "trpkit/data/idx.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <vector>

namespace trpkit {
namespace data {
namespace {

std::vector<std::uint8_t> ReadAll(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IdxError(IdxError::Code::kOpenFailed, "cannot open IDX file " + path);
  }
  return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
}

std::uint32_t BigEndian32(const std::vector<std::uint8_t> &b, std::size_t at,
                          const std::string &path) {
  if (b.size() < at + 4) {
    throw IdxError(IdxError::Code::kTruncated,
                   "IDX header truncated in " + path);
  }
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

void CheckMagic(std::uint32_t got, std::uint32_t want,
                const std::string &path) {
  if (got != want) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "bad IDX magic 0x%08x (expected 0x%08x) in ",
                  got, want);
    throw IdxError(IdxError::Code::kBadMagic, buf + path);
  }
}

}  // namespace

Dataset LoadIdx(const std::string &images_path,
                const std::string &labels_path) {
  const std::vector<std::uint8_t> img = ReadAll(images_path);
  const std::vector<std::uint8_t> lab = ReadAll(labels_path);

  CheckMagic(BigEndian32(img, 0, images_path), kIdxImageMagic, images_path);
  CheckMagic(BigEndian32(lab, 0, labels_path), kIdxLabelMagic, labels_path);

  const std::uint64_t n_images = BigEndian32(img, 4, images_path);
  const std::uint64_t rows = BigEndian32(img, 8, images_path);
  const std::uint64_t cols = BigEndian32(img, 12, images_path);
  const std::uint64_t n_labels = BigEndian32(lab, 4, labels_path);

  if (rows == 0 || cols == 0) {
    throw IdxError(IdxError::Code::kTruncated,
                   "IDX image dimensions are zero in " + images_path);
  }
  // Division form: n_images * rows * cols can overflow 64 bits.
  if (n_images > (img.size() - 16) / (rows * cols)) {
    throw IdxError(IdxError::Code::kTruncated,
                   "IDX image payload truncated in " + images_path);
  }
  if (lab.size() - 8 < n_labels) {
    throw IdxError(IdxError::Code::kTruncated,
                   "IDX label payload truncated in " + labels_path);
  }
  if (n_images != n_labels) {
    throw IdxError(IdxError::Code::kCountMismatch,
                   "IDX count mismatch: " + std::to_string(n_images) +
                       " images vs " + std::to_string(n_labels) + " labels");
  }

  Dataset d;
  d.samples.shape = ImageShape{1, static_cast<std::size_t>(rows),
                               static_cast<std::size_t>(cols)};
  d.samples.images.resize(n_images * rows * cols);
  for (std::size_t i = 0; i < d.samples.images.size(); ++i) {
    d.samples.images[i] = static_cast<double>(img[16 + i]) / 255.0;
  }
  d.samples.labels.resize(n_labels);
  std::uint8_t max_label = 0;
  for (std::size_t i = 0; i < n_labels; ++i) {
    d.samples.labels[i] = lab[8 + i];
    max_label = std::max(max_label, lab[8 + i]);
  }
  d.class_count = static_cast<std::size_t>(max_label) + 1;
  return d;
}

}  // namespace data
}  // namespace trpkit
