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

// Episode cost: weighted squared tracking error of the converged gait plus
// weighted squared oscillation range, both over the trailing segment.

#ifndef GAITBO_OBJECTIVE_HPP_
#define GAITBO_OBJECTIVE_HPP_

#include <Eigen/Core>

#include "gaitbo/domain.hpp"
#include "gaitbo/plant.hpp"

namespace gaitbo {

struct ObjectiveConfig {
  Eigen::Vector3d w1 = Eigen::Vector3d::Ones();         // diagonal of the tracking weight
  Eigen::Vector3d w2 = Eigen::Vector3d::Constant(0.5);  // diagonal of the oscillation weight
  double segmentDuration = 5.0;
  double fallPenalty = 100.0;

  void validate() const;
};

struct ConvergedStats {
  GaitParameter pC;
  GaitParameter pCMin;
  GaitParameter pCMax;
};

// Number of trailing samples in a segment of the given duration.
int segment_samples(double segmentDuration, double dt);

// Mean, min and max of pHat over the trailing segment. Throws RangeError for a
// fallen trajectory or one shorter than the segment.
ConvergedStats converged_stats(const Trajectory& traj, double segmentDuration);

// fallPenalty for a fallen trajectory, otherwise
// |pC - pDesired|^2_w1 + |pCMax - pCMin|^2_w2.
double evaluate_cost(const Trajectory& traj, const GaitParameter& pDesired,
                     const ObjectiveConfig& cfg);

}  // namespace gaitbo

#endif  // GAITBO_OBJECTIVE_HPP_
