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

// Three-phase learning schedule: gain learning in simulation (nominal gaits
// first, then the remaining gaits warm-started from their nearest finished
// neighbour), safe-set extraction, and constrained correction learning on the
// perturbed plant; plus benchmarking of two tables.

#ifndef GAITBO_PIPELINE_HPP_
#define GAITBO_PIPELINE_HPP_

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "gaitbo/bo.hpp"
#include "gaitbo/domain.hpp"
#include "gaitbo/objective.hpp"
#include "gaitbo/plant.hpp"
#include "gaitbo/safeset.hpp"
#include "gaitbo/scheduler.hpp"

namespace gaitbo {

struct GainBox {
  Eigen::Vector3d kpLower = Eigen::Vector3d::Zero();
  Eigen::Vector3d kpUpper = Eigen::Vector3d::Constant(3.0);
  Eigen::Vector3d kdLower = Eigen::Vector3d::Zero();
  Eigen::Vector3d kdUpper = Eigen::Vector3d::Constant(1.5);

  // 6-D box over [kP, kD].
  Box box() const;
};

// Bounds of the six free correction coordinates around an incumbent:
// each of the four planar gains moves by at most max(gainFraction * gain,
// gainFloor), each planar offset by at most offsetBound.
struct CorrectionBoxSpec {
  double gainFraction = 0.5;
  double gainFloor = 0.2;
  double offsetBound = 0.2;

  Box box_for(const ControlParams& incumbent) const;
};

struct PipelineConfig {
  GridAxes grid;
  std::vector<GaitParameter> pSim1;
  std::vector<GaitParameter> pSim2;
  std::vector<GaitParameter> pReal;
  int i1 = 40;
  int i2 = 15;
  int i3 = 10;
  std::array<int, 3> initCounts{8, 5, 3};
  GainBox gainBox;
  CorrectionBoxSpec correctionBox;
  ObjectiveConfig objective;
  ConstraintSpec constraint;
  SweepGridSpec sweepGrid;
  double gamma = 0.9;
  // Replaces the automatic hull input when set (manual vertex selection).
  std::optional<std::vector<Eigen::Vector3d>> safeVertices;
  std::uint64_t seed = 0;
  bool deskScale = true;
  int jobs = 1;

  static PipelineConfig desk();
  static PipelineConfig full();

  void validate() const;

  long sim_evaluations() const {
    return static_cast<long>(pSim1.size()) * i1 + static_cast<long>(pSim2.size()) * i2;
  }
  long real_evaluations() const { return static_cast<long>(pReal.size()) * i3; }
};

// One gait-level optimization, kept for logging.
struct GaitRun {
  std::string phase;  // "sim1", "sim2" or "real"
  GaitParameter gait;
  BOResult result;
};

struct SimLearning {
  GainTable table;
  std::vector<GaitRun> runs;
};

struct RealLearning {
  GainTable table;
  std::vector<std::pair<GaitParameter, Correction>> corrections;
  std::vector<GaitRun> runs;

  // Fraction of real-domain evaluations whose h observation is positive.
  double unsafe_fraction() const;
};

struct GaitEvaluation {
  double cost = 0.0;
  bool fell = false;
  std::optional<ConvergedStats> stats;
};

// Plant-noise stream used for every evaluation of a gait within a phase
// (common random numbers); shared by the learning loop and by before/after
// comparisons.
SeedSpec gait_noise_seed(const PipelineConfig& cfg, const std::string& phase,
                         std::size_t gait_index);

// Evaluation episode for a single gait using the table's scheduled parameters.
GaitEvaluation evaluate_gait(const GainTable& table, const PlantConfig& plant,
                             const GaitParameter& gait, const ObjectiveConfig& objective,
                             const SeedSpec& noise);

SimLearning learn_sim(const PipelineConfig& cfg);

std::pair<SweepResult, SafePolyhedron> extract_safe_set(const GainTable& table,
                                                        const PipelineConfig& cfg);

RealLearning learn_real(const GainTable& table, const SafePolyhedron& poly,
                        const PipelineConfig& cfg);

struct BenchmarkSide {
  std::string name;
  int feasibleCount = 0;
  Eigen::Vector3d meanTrackingError = Eigen::Vector3d::Zero();  // mean |p^d - pC|
  Eigen::Vector3d meanOscillation = Eigen::Vector3d::Zero();    // mean pCMax - pCMin
};

struct BenchmarkReport {
  int gridSize = 0;
  std::string plant;
  BenchmarkSide a;
  BenchmarkSide b;
  // Commands feasible under both tables, split by which table tracks better
  // (Euclidean norm of p^d - pC).
  int commonFeasible = 0;
  int winsA = 0;
  int winsB = 0;
  int ties = 0;
};

BenchmarkReport benchmark(const GainTable& tableA, const GainTable& tableB,
                          const PipelineConfig& cfg, const PlantConfig& plant,
                          const std::string& plantName = "sim",
                          const std::string& nameA = "a", const std::string& nameB = "b");

// Baseline table: every node draws gains uniformly from the central half of
// the gain box, with zero offsets.
GainTable random_gain_table(const GridAxes& grid, const GainBox& box, const SeedSpec& seed);

}  // namespace gaitbo

#endif  // GAITBO_PIPELINE_HPP_
