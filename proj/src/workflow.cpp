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

#include "gaitbo/workflow.hpp"

#include "gaitbo/errors.hpp"
#include "gaitbo/serialization.hpp"

namespace gaitbo {

PlantConfig ideal_config() {
  PlantConfig c = sim_config();
  c.D.setZero();
  c.d0.setZero();
  c.noiseStd.setZero();
  return c;
}

PlantConfig plant_config(PlantKind kind) {
  switch (kind) {
    case PlantKind::kSim:
      return sim_config();
    case PlantKind::kReal:
      return real_config();
    case PlantKind::kIdeal:
      return ideal_config();
  }
  return sim_config();
}

PlantKind parse_plant(const std::string& name) {
  if (name == "sim") return PlantKind::kSim;
  if (name == "real") return PlantKind::kReal;
  if (name == "ideal") return PlantKind::kIdeal;
  throw ConfigError("unknown plant '" + name + "' (expected sim, real or ideal)");
}

std::string plant_name(PlantKind kind) {
  switch (kind) {
    case PlantKind::kSim:
      return "sim";
    case PlantKind::kReal:
      return "real";
    case PlantKind::kIdeal:
      return "ideal";
  }
  return "sim";
}

namespace {

void write_run_logs(const std::vector<GaitRun>& runs, const std::filesystem::path& out) {
  for (const auto& run : runs) {
    write_json_file(out / "runs" / run.phase / gait_dirname(run.gait) / "log.json",
                    bo_log_to_json(run.result));
  }
}

}  // namespace

SimLearning stage_learn_sim(const PipelineConfig& cfg, const std::filesystem::path& out) {
  SimLearning r = learn_sim(cfg);
  write_run_logs(r.runs, out);
  write_json_file(out / artifacts::kSimTable, table_to_json(r.table));
  return r;
}

SafePolyhedron stage_extract_safeset(const PipelineConfig& cfg, const GainTable& table,
                                     const std::filesystem::path& out) {
  auto [sweep, poly] = extract_safe_set(table, cfg);
  write_json_file(out / artifacts::kSweep, sweep_to_json(sweep));
  write_json_file(out / artifacts::kSafeSet, polyhedron_to_json(poly));
  return poly;
}

RealLearning stage_learn_real(const PipelineConfig& cfg, const GainTable& table,
                              const SafePolyhedron& poly, const std::filesystem::path& out) {
  RealLearning r = learn_real(table, poly, cfg);
  write_run_logs(r.runs, out);

  Json gaits = Json::array();
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    const BOResult& br = r.runs[i].result;
    gaits.push_back({{"p", {r.runs[i].gait.vx, r.runs[i].gait.vy, r.runs[i].gait.h}},
                     {"incumbent_cost", br.history.front().cost},
                     {"best_cost", br.bestCost},
                     {"fallback_proposals", br.fallbackProposals}});
  }
  write_json_file(out / artifacts::kRealSummary,
                  {{"evaluations", cfg.real_evaluations()},
                   {"unsafe_fraction", r.unsafe_fraction()},
                   {"gaits", std::move(gaits)}});
  write_json_file(out / artifacts::kCorrections, corrections_to_json(r.corrections));
  write_json_file(out / artifacts::kRealTable, table_to_json(r.table));
  return r;
}

BenchmarkReport stage_benchmark(const PipelineConfig& cfg, const GainTable& a, const GainTable& b,
                                PlantKind plant, const std::string& nameA,
                                const std::string& nameB, const std::filesystem::path& out) {
  BenchmarkReport r = benchmark(a, b, cfg, plant_config(plant), plant_name(plant), nameA, nameB);
  write_json_file(out / artifacts::kBenchmark, benchmark_to_json(r));
  return r;
}

}  // namespace gaitbo
