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
#ifndef TRPKIT_TRP_TRAJECTORY_IO_H_
#define TRPKIT_TRP_TRAJECTORY_IO_H_

#include <string>

#include "trpkit/trp/trajectory.h"

namespace trpkit {
namespace trp {

// CSV with header "layer,t,z,k,fro_norm,bound_stat,bound_holds", one row per
// event; reals printed with 17 significant digits.
std::string TrajectoryCsv(const RankTrajectory &trajectory);

// One JSON object per line carrying every RankEvent field, including the
// full "er" array.
std::string TrajectoryJsonl(const RankTrajectory &trajectory);
RankTrajectory ParseTrajectoryJsonl(const std::string &text);

void WriteTextFile(const std::string &path, const std::string &contents);
std::string ReadTextFile(const std::string &path);

}  // namespace trp
}  // namespace trpkit

#endif  // TRPKIT_TRP_TRAJECTORY_IO_H_
