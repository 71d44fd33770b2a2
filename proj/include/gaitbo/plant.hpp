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

// Reduced-order surrogate of the closed-loop gait-parameter dynamics and the
// PD gait regulator that drives it.
//
// Per step of period dt, with regulator output dg:
//   u'    = (1 - beta) u + beta dg              (actuator lag)
//   v'    = a .* v + B u' + D pDesired + d0 + w (w ~ N(0, diag(noiseStd^2)))
//   pHat' = pHat + v'
// v is the gait-parameter change per step.

#ifndef GAITBO_PLANT_HPP_
#define GAITBO_PLANT_HPP_

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "gaitbo/domain.hpp"
#include "gaitbo/random.hpp"
#include "gaitbo/scheduler.hpp"

namespace gaitbo {

struct PlantConfig {
  Eigen::Matrix3d B = Eigen::Matrix3d::Identity();
  Eigen::Vector3d a = Eigen::Vector3d::Constant(0.5);
  double beta = 1.0;
  Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
  Eigen::Vector3d d0 = Eigen::Vector3d::Zero();
  Eigen::Vector3d noiseStd = Eigen::Vector3d::Zero();
  double dt = 0.4;
  double fallBandWidth = 2.0;
  double minHeight = 0.3;

  // Throws ConfigError when an invariant is violated.
  void validate() const;
};

// Nominal ("simulation") and perturbed ("real") plant constants.
PlantConfig sim_config();
PlantConfig real_config();

struct PlantState {
  GaitParameter pHat;
  Eigen::Vector3d vHat = Eigen::Vector3d::Zero();
  Eigen::Vector3d u = Eigen::Vector3d::Zero();

  static PlantState at_rest(const GaitParameter& p) {
    return {p, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()};
  }
};

// Piecewise-constant command p^d(t); its time derivative is zero everywhere
// (including at switch instants).
class CommandProfile {
 public:
  struct Segment {
    double tStart;
    GaitParameter pDesired;
  };

  CommandProfile(std::vector<Segment> segments, double totalDuration);

  // Hold `from` until `switchTime`, then `to` until `totalDuration`.
  static CommandProfile step(const GaitParameter& from, const GaitParameter& to,
                             double switchTime, double totalDuration);

  GaitParameter at(double t) const;
  const std::vector<Segment>& segments() const { return segments_; }
  double totalDuration() const { return totalDuration_; }
  const GaitParameter& final_command() const { return segments_.back().pDesired; }

 private:
  std::vector<Segment> segments_;
  double totalDuration_;
};

// Episode shape used by learning and sweeps: a 20 s run from stepping in place
// at the command's height, switching to the command at t = 8 s.
CommandProfile evaluation_profile(const GaitParameter& command);
inline constexpr double kEpisodeDuration = 20.0;
inline constexpr double kSwitchTime = 8.0;

struct TrajectorySample {
  double time;
  GaitParameter pDesired;
  GaitParameter pHat;
  Eigen::Vector3d deltaG;
};

struct Trajectory {
  double dt = 0.0;
  std::vector<TrajectorySample> samples;
  bool fell = false;
  std::optional<double> fallTime;
};

// dg = kP .* (pDesired + deltaP - pHat) + kD .* (pDotDesired - vHat / dt).
Eigen::Vector3d regulator_output(const ControlParams& params, const GaitParameter& pDesired,
                                 const Eigen::Vector3d& pDotDesired, const PlantState& state,
                                 double dt);

// One plant step. `rng` is only drawn from when noise is enabled on a channel.
// Throws SimulationError (carrying step_index) on non-finite propagation.
PlantState step(const PlantState& state, const Eigen::Vector3d& deltaG, const PlantConfig& cfg,
                const GaitParameter& pDesired, Rng& rng, int step_index = 0);

// Samples are taken at t = k dt before each step, so a 20 s profile with
// dt = 0.4 yields 50 samples. The run stops early once the fall predicate
// holds: some |pHat_i - pDesired_i| > fallBandWidth for 3 consecutive samples,
// or pHat height below minHeight.
Trajectory run_episode(const PlantConfig& cfg, const GainTable& table,
                       const CommandProfile& profile, const PlantState& initial,
                       const SeedSpec& seed);

// 9x9 map of the error state (pHat - pDesired, vHat, u) under constant gains,
// zero offsets, zero disturbance and zero noise.
Eigen::Matrix<double, 9, 9> linearized_map(const PlantConfig& cfg, const ControlParams& params);
double spectral_radius(const Eigen::MatrixXd& m);

}  // namespace gaitbo

#endif  // GAITBO_PLANT_HPP_
