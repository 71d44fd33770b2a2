// Copyright 2026 The gaitbo Authors
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

// JSON and CSV formats for tables, safe sets, optimizer logs, benchmark
// reports, trajectories and the pipeline configuration.

#ifndef GAITBO_SERIALIZATION_HPP_
#define GAITBO_SERIALIZATION_HPP_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gaitbo/bo.hpp"
#include "gaitbo/pipeline.hpp"
#include "gaitbo/plant.hpp"
#include "gaitbo/safeset.hpp"
#include "gaitbo/scheduler.hpp"

namespace gaitbo {

using Json = nlohmann::json;

// {"axes":{"vx":[...],"vy":[...],"h":[...]},
//  "entries":[{"p":[vx,vy,h],"kP":[...],"kD":[...],"deltaP":[...]},...]}
// Entries are vx-major, then vy, then h. Loading checks that every node is
// present exactly once and in order.
Json table_to_json(const GainTable& table);
GainTable table_from_json(const Json& j);

// {"gamma":g,"vertices":[[...],...],"faces":[{"v":[i,j,k],"n":[...],"anchor":i},...]}
Json polyhedron_to_json(const SafePolyhedron& poly);
SafePolyhedron polyhedron_from_json(const Json& j);

// [{"iter":i,"x":[...],"cost":c,"h":h|null,"fell":b,"best":b},...]
// x is in unit-cube coordinates of the run's box.
Json bo_log_to_json(const BOResult& result);

Json benchmark_to_json(const BenchmarkReport& report);
BenchmarkReport benchmark_from_json(const Json& j);

Json sweep_to_json(const SweepResult& sweep);

Json corrections_to_json(const std::vector<std::pair<GaitParameter, Correction>>& corrections);

// Header: t,vx_d,vy_d,h_d,vx,vy,h,dg1,dg2,dg3
std::string trajectory_to_csv(const Trajectory& traj);

// Keys mirror PipelineConfig fields in lower_snake_case. Missing keys take
// the desk-scale or full-scale defaults selected by "desk_scale" (default
// true); unknown keys are rejected. Throws ConfigError.
PipelineConfig config_from_json(const Json& j);
Json config_to_json(const PipelineConfig& cfg);

Json read_json_file(const std::filesystem::path& path);
// Writes dump(2) plus a trailing newline; creates parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const Json& j);

// Directory name for a gait, e.g. "vx+0.40_vy+0.00_h1.00".
std::string gait_dirname(const GaitParameter& p);

}  // namespace gaitbo

#endif  // GAITBO_SERIALIZATION_HPP_
