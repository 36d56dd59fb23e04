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
#include "trpkit/reshape/reshape.h"

#include <string>

#include "trpkit/common/error.h"

namespace trpkit {
namespace reshape {

using linalg::Matrix;

std::string_view SchemeName(DecompScheme scheme) {
  switch (scheme) {
    case DecompScheme::kChannelWise:
      return "channel";
    case DecompScheme::kSpatialWise:
      return "spatial";
  }
  return "unknown";
}

std::optional<DecompScheme> ParseScheme(std::string_view name) {
  if (name == "channel") return DecompScheme::kChannelWise;
  if (name == "spatial") return DecompScheme::kSpatialWise;
  return std::nullopt;
}

Matrix ToMatrix(const WeightTensor &w, DecompScheme scheme) {
  const FilterShape &s = w.shape();
  if (scheme == DecompScheme::kChannelWise) {
    // [n][c][kh][kw] row-major is already the n x (c*kh*kw) layout.
    return Matrix(s.n, s.c * s.kh * s.kw,
                  std::vector<double>(w.data().begin(), w.data().end()));
  }
  Matrix m(s.c * s.kh, s.n * s.kw);
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t c = 0; c < s.c; ++c) {
      for (std::size_t h = 0; h < s.kh; ++h) {
        for (std::size_t x = 0; x < s.kw; ++x) {
          m(c * s.kh + h, n * s.kw + x) = w.at(n, c, h, x);
        }
      }
    }
  }
  return m;
}

WeightTensor FromMatrix(const Matrix &m, DecompScheme scheme,
                        const FilterShape &shape) {
  const bool channel = scheme == DecompScheme::kChannelWise;
  const std::size_t rows = channel ? shape.n : shape.c * shape.kh;
  const std::size_t cols = channel ? shape.c * shape.kh * shape.kw
                                   : shape.n * shape.kw;
  if (m.rows() != rows || m.cols() != cols) {
    throw ConfigError("FromMatrix: matrix " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + " incompatible with " +
                      std::string(SchemeName(scheme)) + " layout of " +
                      shape.ToString());
  }
  if (channel) {
    return WeightTensor(shape,
                        std::vector<double>(m.data().begin(), m.data().end()));
  }
  WeightTensor w(shape);
  for (std::size_t n = 0; n < shape.n; ++n) {
    for (std::size_t c = 0; c < shape.c; ++c) {
      for (std::size_t h = 0; h < shape.kh; ++h) {
        for (std::size_t x = 0; x < shape.kw; ++x) {
          w.at(n, c, h, x) = m(c * shape.kh + h, n * shape.kw + x);
        }
      }
    }
  }
  return w;
}

Projection LowRankProject(const WeightTensor &w, DecompScheme scheme,
                          double energy) {
  linalg::TsvdResult tsvd = linalg::Tsvd(ToMatrix(w, scheme), energy);
  // Nothing truncated: the exact projection is the identity, so skip the
  // round-off of rebuilding the matrix from its factors.
  if (tsvd.rank == tsvd.full_sigma.size()) return Projection{w, std::move(tsvd)};
  WeightTensor projected =
      FromMatrix(linalg::Reconstruct(tsvd.factors), scheme, w.shape());
  return Projection{std::move(projected), std::move(tsvd)};
}

DecomposedPair DecomposeExport(const WeightTensor &w, DecompScheme scheme,
                               double energy) {
  const FilterShape &s = w.shape();
  const linalg::TsvdResult tsvd = linalg::Tsvd(ToMatrix(w, scheme), energy);
  const linalg::SvdFactors &f = tsvd.factors;
  const std::size_t k = tsvd.rank;

  DecomposedPair pair;
  pair.scheme = scheme;
  pair.rank = k;
  if (scheme == DecompScheme::kChannelWise) {
    WeightTensor first({k, s.c, s.kh, s.kw});
    const std::size_t flat = s.c * s.kh * s.kw;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < flat; ++i) {
        first.data()[j * flat + i] = f.v(i, j);
      }
    }
    WeightTensor second({s.n, k, 1, 1});
    for (std::size_t n = 0; n < s.n; ++n) {
      for (std::size_t j = 0; j < k; ++j) {
        second.at(n, j, 0, 0) = f.u(n, j) * f.sigma[j];
      }
    }
    pair.first = std::move(first);
    pair.second = std::move(second);
  } else {
    WeightTensor first({k, s.c, s.kh, 1});
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t c = 0; c < s.c; ++c) {
        for (std::size_t h = 0; h < s.kh; ++h) {
          first.at(j, c, h, 0) = f.u(c * s.kh + h, j);
        }
      }
    }
    WeightTensor second({s.n, k, 1, s.kw});
    for (std::size_t n = 0; n < s.n; ++n) {
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t x = 0; x < s.kw; ++x) {
          second.at(n, j, 0, x) = f.sigma[j] * f.v(n * s.kw + x, j);
        }
      }
    }
    pair.first = std::move(first);
    pair.second = std::move(second);
  }
  return pair;
}

}  // namespace reshape
}  // namespace trpkit
