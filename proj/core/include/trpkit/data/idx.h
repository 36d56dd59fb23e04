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
#ifndef TRPKIT_DATA_IDX_H_
#define TRPKIT_DATA_IDX_H_

#include <string>

#include "trpkit/common/error.h"
#include "trpkit/data/dataset.h"

namespace trpkit {
namespace data {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

class IdxError : public IoError {
 public:
  enum class Code { kOpenFailed, kBadMagic, kTruncated, kCountMismatch };

  IdxError(Code code, const std::string &message)
      : IoError(message), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// Loads an unsigned-byte IDX image file (n x rows x cols) and its label file.
// Pixels are scaled to [0, 1]; images get a single channel. The class count
// is max(label) + 1.
Dataset LoadIdx(const std::string &images_path,
                const std::string &labels_path);

}  // namespace data
}  // namespace trpkit

#endif  // TRPKIT_DATA_IDX_H_
