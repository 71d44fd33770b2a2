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

#include "gaitbo/plant.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gaitbo/errors.hpp"

namespace gaitbo {

void PlantConfig::validate() const {
  if (!B.allFinite() || !a.allFinite() || !D.allFinite() || !d0.allFinite() ||
      !noiseStd.allFinite()) {
    throw ConfigError("plant config has a non-finite entry");
  }
  for (int i = 0; i < 3; ++i) {
    if (!(B(i, i) > 0.0)) throw ConfigError("plant B must have a positive diagonal");
    if (!(std::abs(a[i]) < 1.0)) throw ConfigError("plant rate damping must satisfy |a_i| < 1");
    if (noiseStd[i] < 0.0) throw ConfigError("plant noise std must be non-negative");
  }
  if (!(dt > 0.0)) throw ConfigError("plant dt must be positive");
  if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("plant beta must lie in (0, 1]");
  if (!(fallBandWidth > 0.0)) throw ConfigError("plant fall band must be positive");
}

PlantConfig sim_config() {
  PlantConfig c;
  c.dt = 0.4;
  c.a << 0.6, 0.6, 0.5;
  c.B << 0.30, 0.03, 0.01,
         0.03, 0.25, 0.01,
         0.00, 0.00, 0.35;
  c.beta = 1.0;
  c.D = Eigen::Vector3d(-0.05, -0.05, -0.02).asDiagonal();
  c.d0 << 0.0, 0.0, -0.03;
  c.noiseStd << 0.002, 0.002, 0.002;
  c.fallBandWidth = 2.0;
  c.minHeight = 0.3;
  return c;
}

PlantConfig real_config() {
  PlantConfig c = sim_config();
  Eigen::Matrix3d coupling;
  coupling << 0.00, 0.05, 0.00,
              0.05, 0.00, 0.00,
              0.00, 0.00, 0.00;
  c.B = 0.75 * c.B + coupling;
  c.beta = 0.6;
  c.D = 1.5 * c.D;
  c.d0 << 0.02, -0.01, -0.05;
  c.noiseStd << 0.01, 0.01, 0.01;
  return c;
}

CommandProfile::CommandProfile(std::vector<Segment> segments, double totalDuration)
    : segments_(std::move(segments)), totalDuration_(totalDuration) {
  if (segments_.empty()) throw ConfigError("command profile needs at least one segment");
  if (segments_.front().tStart != 0.0) throw ConfigError("command profile must start at t = 0");
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    if (!(segments_[i].tStart > segments_[i - 1].tStart)) {
      throw ConfigError("command profile switch times must be strictly increasing");
    }
  }
  if (!(totalDuration_ >= segments_.back().tStart)) {
    throw ConfigError("command profile duration ends before its last switch");
  }
}

CommandProfile CommandProfile::step(const GaitParameter& from, const GaitParameter& to,
                                    double switchTime, double totalDuration) {
  return CommandProfile({{0.0, from}, {switchTime, to}}, totalDuration);
}

GaitParameter CommandProfile::at(double t) const {
  const GaitParameter* current = &segments_.front().pDesired;
  for (const auto& s : segments_) {
    if (s.tStart <= t + 1e-9) current = &s.pDesired;
  }
  return *current;
}

CommandProfile evaluation_profile(const GaitParameter& command) {
  return CommandProfile::step({0.0, 0.0, command.h}, command, kSwitchTime, kEpisodeDuration);
}

Eigen::Vector3d regulator_output(const ControlParams& params, const GaitParameter& pDesired,
                                 const Eigen::Vector3d& pDotDesired, const PlantState& state,
                                 double dt) {
  const Eigen::Vector3d error = pDesired.vec() + params.deltaP - state.pHat.vec();
  const Eigen::Vector3d rate_error = pDotDesired - state.vHat / dt;
  return params.kP.cwiseProduct(error) + params.kD.cwiseProduct(rate_error);
}

PlantState step(const PlantState& state, const Eigen::Vector3d& deltaG, const PlantConfig& cfg,
                const GaitParameter& pDesired, Rng& rng, int step_index) {
  PlantState next;
  next.u = (1.0 - cfg.beta) * state.u + cfg.beta * deltaG;
  Eigen::Vector3d w = Eigen::Vector3d::Zero();
  for (int i = 0; i < 3; ++i) {
    if (cfg.noiseStd[i] > 0.0) w[i] = cfg.noiseStd[i] * rng.normal();
  }
  next.vHat = cfg.a.cwiseProduct(state.vHat) + cfg.B * next.u + cfg.D * pDesired.vec() + cfg.d0 + w;
  next.pHat = GaitParameter::from_vec(state.pHat.vec() + next.vHat);
  if (!next.u.allFinite() || !next.vHat.allFinite() || !next.pHat.vec().allFinite()) {
    throw SimulationError("plant state became non-finite", step_index);
  }
  return next;
}

Trajectory run_episode(const PlantConfig& cfg, const GainTable& table,
                       const CommandProfile& profile, const PlantState& initial,
                       const SeedSpec& seed) {
  const double steps_real = profile.totalDuration() / cfg.dt;
  const long steps = std::lround(steps_real);
  if (steps < 1 || std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * steps_real) {
    throw ConfigError("profile duration " + std::to_string(profile.totalDuration()) +
                      " s is not a positive multiple of dt = " + std::to_string(cfg.dt));
  }

  Rng rng(seed);
  Trajectory traj;
  traj.dt = cfg.dt;
  traj.samples.reserve(static_cast<std::size_t>(steps));
  PlantState state = initial;
  int outside_band = 0;
  const Eigen::Vector3d pDotDesired = Eigen::Vector3d::Zero();

  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    const GaitParameter pDesired = profile.at(t);
    const Eigen::Vector3d err = state.pHat.vec() - pDesired.vec();
    outside_band = (err.cwiseAbs().array() > cfg.fallBandWidth).any() ? outside_band + 1 : 0;

    const ControlParams params = table.lookup(pDesired);
    const Eigen::Vector3d dg = regulator_output(params, pDesired, pDotDesired, state, cfg.dt);
    traj.samples.push_back({t, pDesired, state.pHat, dg});

    if (outside_band >= 3 || state.pHat.h < cfg.minHeight) {
      traj.fell = true;
      traj.fallTime = t;
      break;
    }
    state = step(state, dg, cfg, pDesired, rng, static_cast<int>(k));
  }
  return traj;
}

Eigen::Matrix<double, 9, 9> linearized_map(const PlantConfig& cfg, const ControlParams& params) {
  // State ordering (e, v, u) with e = pHat - pDesired.
  const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
  const Eigen::Matrix3d KP = params.kP.asDiagonal();
  const Eigen::Matrix3d KD = (params.kD / cfg.dt).asDiagonal();
  const Eigen::Matrix3d A = cfg.a.asDiagonal();

  Eigen::Matrix<double, 3, 9> u_row;
  u_row << -cfg.beta * KP, -cfg.beta * KD, (1.0 - cfg.beta) * I;
  Eigen::Matrix<double, 3, 9> v_row = cfg.B * u_row;
  v_row.block<3, 3>(0, 3) += A;
  Eigen::Matrix<double, 3, 9> e_row = v_row;
  e_row.block<3, 3>(0, 0) += I;

  Eigen::Matrix<double, 9, 9> m;
  m << e_row, v_row, u_row;
  return m;
}

double spectral_radius(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace gaitbo
