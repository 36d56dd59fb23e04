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
#include "trpkit/net/serialize.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "trpkit/common/error.h"

namespace trpkit {
namespace net {
namespace {

constexpr char kMagic[4] = {'T', 'R', 'P', 'K'};
// Generous cap that still rejects garbage dimension fields.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 28;

class Writer {
 public:
  void U32(std::uint32_t v) { Le(v, 4); }
  void U64(std::uint64_t v) { Le(v, 8); }
  void F64(double v) { Le(std::bit_cast<std::uint64_t>(v), 8); }
  void F64s(std::span<const double> v) {
    for (double x : v) F64(x);
  }
  void Bytes(const char *p, std::size_t n) {
    out_.insert(out_.end(), p, p + n);
  }
  std::vector<std::uint8_t> Take() { return std::move(out_); }

 private:
  void Le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) {
      out_.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xffu));
    }
  }
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint32_t U32() { return static_cast<std::uint32_t>(Le(4)); }
  std::uint64_t U64() { return Le(8); }
  double F64() {
    const double v = std::bit_cast<double>(Le(8));
    if (!std::isfinite(v)) Fail("non-finite parameter");
    return v;
  }
  std::vector<double> F64s(std::uint64_t n) {
    if (n > kMaxElements || n * 8 > in_.size() - pos_) Fail("truncated payload");
    std::vector<double> v(n);
    for (double &x : v) x = F64();
    return v;
  }
  void Expect(const char *p, std::size_t n) {
    Need(n);
    if (std::memcmp(in_.data() + pos_, p, n) != 0) Fail("bad magic");
    pos_ += n;
  }
  bool AtEnd() const { return pos_ == in_.size(); }
  [[noreturn]] static void Fail(const std::string &why) {
    throw IoError("corrupt checkpoint: " + why);
  }

 private:
  void Need(std::size_t n) {
    if (in_.size() - pos_ < n) Fail("unexpected end of data");
  }
  std::uint64_t Le(int n) {
    Need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> EncodeModel(const NetworkModel &model) {
  Writer w;
  w.Bytes(kMagic, 4);
  w.U32(kCheckpointVersion);
  w.U32(static_cast<std::uint32_t>(model.layers.size()));
  w.U64(model.rng_seed);
  w.U32(static_cast<std::uint32_t>(model.input.c));
  w.U32(static_cast<std::uint32_t>(model.input.h));
  w.U32(static_cast<std::uint32_t>(model.input.w));
  for (const Layer &layer : model.layers) {
    w.U32(static_cast<std::uint32_t>(KindOf(layer)));
    if (const auto *conv = std::get_if<Conv2DLayer>(&layer)) {
      const auto &s = conv->weights.shape();
      w.U32(static_cast<std::uint32_t>(s.n));
      w.U32(static_cast<std::uint32_t>(s.c));
      w.U32(static_cast<std::uint32_t>(s.kh));
      w.U32(static_cast<std::uint32_t>(s.kw));
      w.F64s(conv->weights.data());
      w.F64s(conv->bias);
    } else if (const auto *dense = std::get_if<DenseLayer>(&layer)) {
      w.U32(static_cast<std::uint32_t>(dense->weights.rows()));
      w.U32(static_cast<std::uint32_t>(dense->weights.cols()));
      w.F64s(dense->weights.data());
      w.F64s(dense->bias);
    }
  }
  return w.Take();
}

NetworkModel DecodeModel(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.Expect(kMagic, 4);
  const std::uint32_t version = r.U32();
  if (version != kCheckpointVersion) {
    Reader::Fail("unsupported format version " + std::to_string(version));
  }
  const std::uint32_t count = r.U32();
  NetworkModel model;
  model.rng_seed = r.U64();
  model.input.c = r.U32();
  model.input.h = r.U32();
  model.input.w = r.U32();
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto kind = static_cast<LayerKind>(r.U32());
    switch (kind) {
      case LayerKind::kConv2D: {
        reshape::FilterShape s;
        s.n = r.U32();
        s.c = r.U32();
        s.kh = r.U32();
        s.kw = r.U32();
        if (s.n == 0 || s.c == 0 || s.kh == 0 || s.kw == 0) {
          Reader::Fail("zero conv2d dimension");
        }
        std::uint64_t elements = 1;
        for (std::uint64_t d : {s.n, s.c, s.kh, s.kw}) {
          if (d > kMaxElements || elements * d > kMaxElements) {
            Reader::Fail("conv2d tensor too large");
          }
          elements *= d;
        }
        std::vector<double> weights = r.F64s(elements);
        std::vector<double> bias = r.F64s(s.n);
        model.layers.emplace_back(
            Conv2DLayer{reshape::WeightTensor(s, std::move(weights)),
                        std::move(bias)});
        break;
      }
      case LayerKind::kDense: {
        const std::uint32_t out = r.U32();
        const std::uint32_t in = r.U32();
        std::vector<double> weights = r.F64s(std::uint64_t{out} * in);
        std::vector<double> bias = r.F64s(out);
        model.layers.emplace_back(
            DenseLayer{linalg::Matrix(out, in, std::move(weights)),
                       std::move(bias)});
        break;
      }
      case LayerKind::kRelu:
        model.layers.emplace_back(ReluLayer{});
        break;
      case LayerKind::kAvgPool:
        model.layers.emplace_back(AvgPoolLayer{});
        break;
      case LayerKind::kSoftmaxCrossEntropy:
        model.layers.emplace_back(SoftmaxCrossEntropyLayer{});
        break;
      default:
        Reader::Fail("unknown layer kind tag " +
                     std::to_string(static_cast<std::uint32_t>(kind)));
    }
  }
  if (!r.AtEnd()) Reader::Fail("trailing bytes after last layer");
  try {
    model.Validate();
  } catch (const ConfigError &e) {
    Reader::Fail(e.what());
  }
  return model;
}

void SaveModel(const NetworkModel &model, const std::string &path) {
  const std::vector<std::uint8_t> bytes = EncodeModel(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing checkpoint " + path);
}

NetworkModel LoadModel(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return DecodeModel(bytes);
  } catch (const IoError &e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace net
}  // namespace trpkit
