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

// Value types shared by every module: gait parameters, scheduled control
// parameters, real-domain corrections, the optimization box and seeds.

#ifndef GAITBO_DOMAIN_HPP_
#define GAITBO_DOMAIN_HPP_

#include <array>
#include <cstdint>
#include <string>

#include <Eigen/Core>

namespace gaitbo {

// p = [sagittal speed, lateral speed, walking height]. Used both for
// commands (validated through checked()) and for observed gaits, which may
// leave the valid range once a run diverges.
struct GaitParameter {
  double vx = 0.0;
  double vy = 0.0;
  double h = 1.0;

  static GaitParameter checked(double vx, double vy, double h);
  static GaitParameter from_vec(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }
  Eigen::Vector3d vec() const { return {vx, vy, h}; }
  double operator[](int i) const { return i == 0 ? vx : (i == 1 ? vy : h); }

  bool operator==(const GaitParameter&) const = default;
};

std::string to_string(const GaitParameter& p);

// PD gains and command tracking offset scheduled per gait parameter.
struct ControlParams {
  Eigen::Vector3d kP = Eigen::Vector3d::Zero();
  Eigen::Vector3d kD = Eigen::Vector3d::Zero();
  Eigen::Vector3d deltaP = Eigen::Vector3d::Zero();

  // Throws RangeError on negative gains or non-finite entries.
  void validate() const;

  // 6-vector [kP, kD].
  Eigen::Matrix<double, 6, 1> gains() const;
  static ControlParams from_gains(const Eigen::Matrix<double, 6, 1>& k,
                                  const Eigen::Vector3d& deltaP = Eigen::Vector3d::Zero());

  bool operator==(const ControlParams& o) const {
    return kP == o.kP && kD == o.kD && deltaP == o.deltaP;
  }
};

// Real-domain additive correction. deltaK is laid out as
// [dkP_vx, dkD_vx, dkP_vy, dkD_vy, 0, 0]; the height channel is never touched.
class Correction {
 public:
  Correction() = default;
  Correction(double dkP_vx, double dkD_vx, double dkP_vy, double dkD_vy,
             double dp_vx, double dp_vy);

  // Free coordinates in the order above followed by the two offsets.
  static Correction from_free(const Eigen::Matrix<double, 6, 1>& free);
  Eigen::Matrix<double, 6, 1> free() const;

  const Eigen::Matrix<double, 6, 1>& deltaK() const { return deltaK_; }
  const Eigen::Vector3d& deltaP() const { return deltaP_; }

  bool is_zero() const { return deltaK_.isZero(0.0) && deltaP_.isZero(0.0); }

  // k + dk clamped at zero, dp + correction dp.
  ControlParams apply(const ControlParams& base) const;

 private:
  Eigen::Matrix<double, 6, 1> deltaK_ = Eigen::Matrix<double, 6, 1>::Zero();
  Eigen::Vector3d deltaP_ = Eigen::Vector3d::Zero();
};

// Axis-aligned optimization box; the GP always works on its unit cube.
class Box {
 public:
  Box(Eigen::VectorXd lower, Eigen::VectorXd upper);

  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  int dim() const { return static_cast<int>(lower_.size()); }

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

Eigen::VectorXd to_unit(const Eigen::VectorXd& x, const Box& box);
Eigen::VectorXd from_unit(const Eigen::VectorXd& u, const Box& box);

struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  // Deterministically derived sub-stream; independent of call order.
  SeedSpec child(std::uint64_t index) const;

  bool operator==(const SeedSpec&) const = default;
};

}  // namespace gaitbo

#endif  // GAITBO_DOMAIN_HPP_
