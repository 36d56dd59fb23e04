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
#include "trpkit/trp/trajectory_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "trpkit/common/error.h"

namespace trpkit {
namespace trp {

std::vector<std::size_t> RankTrajectory::Layers() const {
  std::set<std::size_t> seen;
  for (const RankEvent &e : events) seen.insert(e.layer);
  return {seen.begin(), seen.end()};
}

std::vector<RankEvent> RankTrajectory::ForLayer(std::size_t layer) const {
  std::vector<RankEvent> out;
  std::copy_if(events.begin(), events.end(), std::back_inserter(out),
               [&](const RankEvent &e) { return e.layer == layer; });
  return out;
}

std::string TrajectoryCsv(const RankTrajectory &trajectory) {
  std::string out = "layer,t,z,k,fro_norm,bound_stat,bound_holds\n";
  char buf[256];
  for (const RankEvent &e : trajectory.events) {
    std::snprintf(buf, sizeof(buf), "%zu,%llu,%llu,%zu,%.17g,%.17g,%d\n",
                  e.layer, static_cast<unsigned long long>(e.t),
                  static_cast<unsigned long long>(e.z), e.rank, e.fro_norm,
                  e.bound_stat, e.bound_holds ? 1 : 0);
    out += buf;
  }
  return out;
}

std::string TrajectoryJsonl(const RankTrajectory &trajectory) {
  std::string out;
  for (const RankEvent &e : trajectory.events) {
    nlohmann::json j;
    j["layer"] = e.layer;
    j["t"] = e.t;
    j["z"] = e.z;
    j["k"] = e.rank;
    j["full_rank"] = e.full_rank;
    j["er"] = e.energy_ratios;
    j["discarded_energy"] = e.discarded_energy;
    j["fro_norm"] = e.fro_norm;
    // JSON has no infinity; a diverged window is written as null.
    if (std::isfinite(e.bound_stat)) {
      j["bound_stat"] = e.bound_stat;
    } else {
      j["bound_stat"] = nullptr;
    }
    j["bound_holds"] = e.bound_holds;
    out += j.dump();
    out += '\n';
  }
  return out;
}

RankTrajectory ParseTrajectoryJsonl(const std::string &text) {
  RankTrajectory traj;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      RankEvent e;
      e.layer = j.at("layer").get<std::size_t>();
      e.t = j.at("t").get<std::uint64_t>();
      e.z = j.at("z").get<std::uint64_t>();
      e.rank = j.at("k").get<std::size_t>();
      e.full_rank = j.at("full_rank").get<std::size_t>();
      e.energy_ratios = j.at("er").get<std::vector<double>>();
      e.discarded_energy = j.at("discarded_energy").get<double>();
      e.fro_norm = j.at("fro_norm").get<double>();
      e.bound_stat = j.at("bound_stat").is_null()
                         ? std::numeric_limits<double>::infinity()
                         : j.at("bound_stat").get<double>();
      e.bound_holds = j.at("bound_holds").get<bool>();
      traj.events.push_back(std::move(e));
    } catch (const nlohmann::json::exception &ex) {
      throw IoError("trajectory line " + std::to_string(line_no) + ": " +
                    ex.what());
    }
  }
  return traj;
}

void WriteTextFile(const std::string &path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw IoError("failed writing " + path);
}

std::string ReadTextFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace trp
}  // namespace trpkit
