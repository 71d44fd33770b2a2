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

// Feasible command sweep, convex safe polyhedron and the containment
// constraint h(p) = max_j <anchor_j - p, n_j> with inward unit normals n_j.
// A gait p is inside the polyhedron iff h(p) <= 0.

#ifndef GAITBO_SAFESET_HPP_
#define GAITBO_SAFESET_HPP_

#include <array>
#include <vector>

#include <Eigen/Core>

#include "gaitbo/domain.hpp"
#include "gaitbo/objective.hpp"
#include "gaitbo/plant.hpp"
#include "gaitbo/scheduler.hpp"

namespace gaitbo {

// Inclusive range lo, lo + step, ..., hi on each axis.
struct SweepAxis {
  double lo;
  double hi;
  double step;

  std::vector<double> values() const;
};

struct SweepGridSpec {
  SweepAxis vx{-1.2, 1.2, 0.2};
  SweepAxis vy{-0.4, 0.4, 0.1};
  SweepAxis h{0.65, 1.05, 0.05};

  std::vector<GaitParameter> commands() const;
};

SweepGridSpec default_sweep_grid();

struct SweepResult {
  std::vector<GaitParameter> grid;
  std::vector<GaitParameter> feasibleCommands;
  std::vector<GaitParameter> safePoints;   // converged pHat of each feasible command
  std::vector<ConvergedStats> stats;       // aligned with feasibleCommands
};

// Runs a 20 s evaluation episode per command (stream seed.child(i) for the
// i-th command). `jobs` > 1 spreads episodes over threads; results do not
// depend on it.
SweepResult sweep_commands(const GainTable& table, const PlantConfig& cfg,
                           const std::vector<GaitParameter>& grid, const SeedSpec& seed,
                           double segmentDuration = 5.0, int jobs = 1);

struct PolyFace {
  std::array<int, 3> v;
  Eigen::Vector3d normal;  // inward, unit length
  int anchor;              // index into vertices; first face vertex
};

class SafePolyhedron {
 public:
  SafePolyhedron(std::vector<Eigen::Vector3d> vertices, std::vector<PolyFace> faces,
                 double gamma);

  const std::vector<Eigen::Vector3d>& vertices() const { return vertices_; }
  const std::vector<PolyFace>& faces() const { return faces_; }
  double gamma() const { return gamma_; }
  Eigen::Vector3d centroid() const;

  // Throws SafeSetError if a structural invariant fails.
  void validate() const;

 private:
  std::vector<Eigen::Vector3d> vertices_;
  std::vector<PolyFace> faces_;
  double gamma_;
};

// Triangulated hull of at least four affinely independent points, scaled by
// gamma about the vertex centroid. Throws SafeSetError on degenerate input.
SafePolyhedron convex_hull(const std::vector<Eigen::Vector3d>& points, double gamma = 1.0);

double constraint_value(const SafePolyhedron& poly, const GaitParameter& pC);
double constraint_value(const SafePolyhedron& poly, const Eigen::Vector3d& pC);
bool contains(const SafePolyhedron& poly, const GaitParameter& pC);

}  // namespace gaitbo

#endif  // GAITBO_SAFESET_HPP_
