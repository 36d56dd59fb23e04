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
#ifndef TRPKIT_TRP_MONITOR_H_
#define TRPKIT_TRP_MONITOR_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trpkit/trp/config.h"
#include "trpkit/trp/trajectory.h"

namespace trpkit {
namespace trp {

// Rank-monotonicity check for one consecutive pair of projections of a layer.
// The hypothesis is m * G / ||W^{t+m}||_F < sqrt(e); under it the later rank
// may not exceed the earlier one.
struct MonitorEntry {
  std::size_t layer = 0;
  std::uint64_t z = 0;  // index of the later projection
  std::size_t previous_rank = 0;
  std::size_t rank = 0;
  double bound_stat = 0.0;
  double sqrt_e = 0.0;
  bool bound_holds = false;
  bool rank_nonincrease = false;
};

struct MonitorSummary {
  std::size_t pairs = 0;
  std::size_t hypothesis_pairs = 0;  // pairs with bound_holds
  std::size_t violations = 0;        // hypothesis held, rank still grew
  std::size_t unconditional_increases = 0;
  double max_bound_stat = 0.0;
};

struct MonitorReport {
  std::vector<MonitorEntry> entries;
  MonitorSummary summary;
};

// Throws ConfigError if the trajectory has fewer than two events for any
// layer (or none at all).
MonitorReport RankMonotonicityMonitor(const RankTrajectory &trajectory,
                              const TrpConfig &config);

}  // namespace trp
}  // namespace trpkit

#endif  // TRPKIT_TRP_MONITOR_H_
