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

// Pipeline stages that persist their artifacts under an output directory:
//   gaintable_sim.json, safeset.json, sweep_sim.json, gaintable_real.json,
//   corrections.json, real_summary.json, benchmark.json and
//   runs/<phase>/<gait>/log.json.
// Each stage writes only after its computation succeeded.

#ifndef GAITBO_WORKFLOW_HPP_
#define GAITBO_WORKFLOW_HPP_

#include <filesystem>
#include <string>

#include "gaitbo/pipeline.hpp"

namespace gaitbo {

enum class PlantKind { kSim, kReal, kIdeal };

// Sim plant with disturbances and noise removed.
PlantConfig ideal_config();
PlantConfig plant_config(PlantKind kind);
PlantKind parse_plant(const std::string& name);
std::string plant_name(PlantKind kind);

namespace artifacts {
inline constexpr const char* kSimTable = "gaintable_sim.json";
inline constexpr const char* kRealTable = "gaintable_real.json";
inline constexpr const char* kSafeSet = "safeset.json";
inline constexpr const char* kSweep = "sweep_sim.json";
inline constexpr const char* kCorrections = "corrections.json";
inline constexpr const char* kRealSummary = "real_summary.json";
inline constexpr const char* kBenchmark = "benchmark.json";
}  // namespace artifacts

SimLearning stage_learn_sim(const PipelineConfig& cfg, const std::filesystem::path& out);

SafePolyhedron stage_extract_safeset(const PipelineConfig& cfg, const GainTable& table,
                                     const std::filesystem::path& out);

RealLearning stage_learn_real(const PipelineConfig& cfg, const GainTable& table,
                              const SafePolyhedron& poly, const std::filesystem::path& out);

BenchmarkReport stage_benchmark(const PipelineConfig& cfg, const GainTable& a, const GainTable& b,
                                PlantKind plant, const std::string& nameA,
                                const std::string& nameB, const std::filesystem::path& out);

}  // namespace gaitbo

#endif  // GAITBO_WORKFLOW_HPP_
