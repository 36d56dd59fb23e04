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
#include "trpkit/trp/monitor.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "trpkit/common/error.h"

namespace trpkit {
namespace trp {

MonitorReport RankMonotonicityMonitor(const RankTrajectory &trajectory,
                              const TrpConfig &config) {
  const std::vector<std::size_t> layers = trajectory.Layers();
  if (layers.empty()) throw ConfigError("monitor: trajectory is empty");
  const double sqrt_e = std::sqrt(config.energy_e);

  MonitorReport report;
  for (std::size_t layer : layers) {
    const std::vector<RankEvent> events = trajectory.ForLayer(layer);
    if (events.size() < 2) {
      throw ConfigError("monitor: layer " + std::to_string(layer) +
                        " has fewer than two projection events");
    }
    for (std::size_t i = 1; i < events.size(); ++i) {
      MonitorEntry e;
      e.layer = layer;
      e.z = events[i].z;
      e.previous_rank = events[i - 1].rank;
      e.rank = events[i].rank;
      e.bound_stat = events[i].bound_stat;
      e.sqrt_e = sqrt_e;
      e.bound_holds = e.bound_stat < sqrt_e;
      e.rank_nonincrease = e.rank <= e.previous_rank;

      MonitorSummary &s = report.summary;
      ++s.pairs;
      s.max_bound_stat = std::max(s.max_bound_stat, e.bound_stat);
      if (!e.rank_nonincrease) ++s.unconditional_increases;
      if (e.bound_holds) {
        ++s.hypothesis_pairs;
        if (!e.rank_nonincrease) ++s.violations;
      }
      report.entries.push_back(e);
    }
  }
  return report;
}

}  // namespace trp
}  // namespace trpkit
