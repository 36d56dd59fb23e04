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
#ifndef TRPKIT_NET_SERIALIZE_H_
#define TRPKIT_NET_SERIALIZE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trpkit/net/model.h"

namespace trpkit {
namespace net {

// Checkpoint container, all integers and floats little-endian:
//
//   "TRPK"                       4-byte magic
//   u32 format_version           kCheckpointVersion
//   u32 layer_count
//   u64 rng_seed
//   u32 input_c, input_h, input_w
//   per layer:
//     u32 kind                   LayerKind
//     conv2d: u32 n, c, kh, kw; f64[n*c*kh*kw] weights; f64[n] bias
//     dense:  u32 out, in;      f64[out*in] weights;    f64[out] bias
//     relu / avgpool2x2 / softmax_ce: no payload
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::vector<std::uint8_t> EncodeModel(const NetworkModel &model);
// Throws IoError on any structural corruption.
NetworkModel DecodeModel(std::span<const std::uint8_t> bytes);

void SaveModel(const NetworkModel &model, const std::string &path);
NetworkModel LoadModel(const std::string &path);

}  // namespace net
}  // namespace trpkit

#endif  // TRPKIT_NET_SERIALIZE_H_
