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

#include "gaitbo/objective.hpp"

#include <algorithm>
#include <cmath>

#include "gaitbo/errors.hpp"

namespace gaitbo {

void ObjectiveConfig::validate() const {
  if ((w1.array() < 0.0).any() || (w2.array() < 0.0).any() || !w1.allFinite() ||
      !w2.allFinite()) {
    throw ConfigError("objective weights must be finite and non-negative");
  }
  if (!(segmentDuration > 0.0)) throw ConfigError("objective segment duration must be positive");
  if (!std::isfinite(fallPenalty)) throw ConfigError("fall penalty must be finite");
}

int segment_samples(double segmentDuration, double dt) {
  // 5 / 0.4 evaluates to 12.499..., the tolerance only guards exact multiples.
  return static_cast<int>(std::floor(segmentDuration / dt + 1e-9));
}

ConvergedStats converged_stats(const Trajectory& traj, double segmentDuration) {
  if (traj.fell) throw RangeError("converged_stats: trajectory fell; use the fall penalty");
  const int n = segment_samples(segmentDuration, traj.dt);
  if (n < 1 || static_cast<std::size_t>(n) > traj.samples.size()) {
    throw RangeError("converged_stats: trajectory has " + std::to_string(traj.samples.size()) +
                     " samples, segment needs " + std::to_string(n));
  }
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
  Eigen::Vector3d hi = -lo;
  for (auto it = traj.samples.end() - n; it != traj.samples.end(); ++it) {
    const Eigen::Vector3d p = it->pHat.vec();
    sum += p;
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  Eigen::Vector3d mean = sum / n;
  // Keep min <= mean <= max under round-off.
  mean = mean.cwiseMax(lo).cwiseMin(hi);
  return {GaitParameter::from_vec(mean), GaitParameter::from_vec(lo), GaitParameter::from_vec(hi)};
}

double evaluate_cost(const Trajectory& traj, const GaitParameter& pDesired,
                     const ObjectiveConfig& cfg) {
  if (traj.fell) return cfg.fallPenalty;
  const ConvergedStats s = converged_stats(traj, cfg.segmentDuration);
  const Eigen::Vector3d e = s.pC.vec() - pDesired.vec();
  const Eigen::Vector3d r = s.pCMax.vec() - s.pCMin.vec();
  return e.cwiseProduct(cfg.w1).dot(e) + r.cwiseProduct(cfg.w2).dot(r);
}

}  // namespace gaitbo
