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
#ifndef TRPKIT_TRP_TRAJECTORY_H_
#define TRPKIT_TRP_TRAJECTORY_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace trpkit {
namespace trp {

// One low-rank projection of one conv layer.
struct RankEvent {
  std::size_t layer = 0;       // index into NetworkModel::layers
  std::uint64_t t = 0;         // iteration at which the projection happened
  std::uint64_t z = 0;         // projection counter, t = z * m
  std::size_t rank = 0;        // selected k
  std::size_t full_rank = 0;   // min(rows, cols) of the matrix view
  // Normalized energy of each retained singular value of the projected
  // weights; sums to 1.
  std::vector<double> energy_ratios;
  double discarded_energy = 0.0;
  double fro_norm = 0.0;       // ||W^t||_F before projection
  // m * G / ||W^t||_F, G the largest per-step weight change since the
  // previous event. Zero for z = 0, which has no preceding window.
  double bound_stat = 0.0;
  bool bound_holds = true;     // bound_stat < sqrt(e)

  bool operator==(const RankEvent &) const = default;
};

struct RankTrajectory {
  std::vector<RankEvent> events;  // ordered by (t, layer)

  std::vector<std::size_t> Layers() const;
  std::vector<RankEvent> ForLayer(std::size_t layer) const;
  bool empty() const { return events.empty(); }

  bool operator==(const RankTrajectory &) const = default;
};

}  // namespace trp
}  // namespace trpkit

#endif  // TRPKIT_TRP_TRAJECTORY_H_
