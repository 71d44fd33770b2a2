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

#include "gaitbo/domain.hpp"

#include <cmath>
#include <cstdio>

#include "gaitbo/errors.hpp"
#include "gaitbo/random.hpp"

namespace gaitbo {

GaitParameter GaitParameter::checked(double vx, double vy, double h) {
  if (!std::isfinite(vx) || !std::isfinite(vy) || !std::isfinite(h)) {
    throw RangeError("gait parameter has a non-finite component");
  }
  if (!(h > 0.0)) {
    throw RangeError("gait parameter height must be positive, got " + std::to_string(h));
  }
  return {vx, vy, h};
}

std::string to_string(const GaitParameter& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.4g, %.4g, %.4g)", p.vx, p.vy, p.h);
  return buf;
}

void ControlParams::validate() const {
  if (!kP.allFinite() || !kD.allFinite() || !deltaP.allFinite()) {
    throw RangeError("control parameters contain a non-finite entry");
  }
  if ((kP.array() < 0.0).any() || (kD.array() < 0.0).any()) {
    throw RangeError("PD gains must be non-negative");
  }
}

Eigen::Matrix<double, 6, 1> ControlParams::gains() const {
  Eigen::Matrix<double, 6, 1> k;
  k << kP, kD;
  return k;
}

ControlParams ControlParams::from_gains(const Eigen::Matrix<double, 6, 1>& k,
                                        const Eigen::Vector3d& deltaP) {
  ControlParams c;
  c.kP = k.head<3>();
  c.kD = k.tail<3>();
  c.deltaP = deltaP;
  return c;
}

Correction::Correction(double dkP_vx, double dkD_vx, double dkP_vy, double dkD_vy,
                       double dp_vx, double dp_vy) {
  deltaK_ << dkP_vx, dkD_vx, dkP_vy, dkD_vy, 0.0, 0.0;
  deltaP_ << dp_vx, dp_vy, 0.0;
  if (!deltaK_.allFinite() || !deltaP_.allFinite()) {
    throw RangeError("correction contains a non-finite entry");
  }
}

Correction Correction::from_free(const Eigen::Matrix<double, 6, 1>& f) {
  return Correction(f[0], f[1], f[2], f[3], f[4], f[5]);
}

Eigen::Matrix<double, 6, 1> Correction::free() const {
  Eigen::Matrix<double, 6, 1> f;
  f << deltaK_.head<4>(), deltaP_.head<2>();
  return f;
}

ControlParams Correction::apply(const ControlParams& base) const {
  ControlParams out = base;
  out.kP[0] = std::max(0.0, base.kP[0] + deltaK_[0]);
  out.kD[0] = std::max(0.0, base.kD[0] + deltaK_[1]);
  out.kP[1] = std::max(0.0, base.kP[1] + deltaK_[2]);
  out.kD[1] = std::max(0.0, base.kD[1] + deltaK_[3]);
  out.deltaP[0] = base.deltaP[0] + deltaP_[0];
  out.deltaP[1] = base.deltaP[1] + deltaP_[1];
  return out;
}

Box::Box(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.size() == 0) {
    throw RangeError("box bounds must be non-empty and of equal dimension");
  }
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i])) {
      throw RangeError("box component " + std::to_string(i) + " needs finite lower < upper");
    }
  }
}

Eigen::VectorXd to_unit(const Eigen::VectorXd& x, const Box& box) {
  if (x.size() != box.dim()) throw RangeError("to_unit: dimension mismatch");
  Eigen::VectorXd u(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= box.lower()[i] && x[i] <= box.upper()[i])) {
      throw RangeError("to_unit: component " + std::to_string(i) + " = " +
                       std::to_string(x[i]) + " lies outside the box");
    }
    u[i] = (x[i] - box.lower()[i]) / (box.upper()[i] - box.lower()[i]);
  }
  return u;
}

Eigen::VectorXd from_unit(const Eigen::VectorXd& u, const Box& box) {
  if (u.size() != box.dim()) throw RangeError("from_unit: dimension mismatch");
  Eigen::VectorXd x(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!(u[i] >= 0.0 && u[i] <= 1.0)) {
      throw RangeError("from_unit: component " + std::to_string(i) + " = " +
                       std::to_string(u[i]) + " lies outside the unit cube");
    }
    // Endpoints map exactly onto the bounds.
    x[i] = u[i] == 1.0 ? box.upper()[i]
                       : box.lower()[i] + u[i] * (box.upper()[i] - box.lower()[i]);
  }
  return x;
}

SeedSpec SeedSpec::child(std::uint64_t index) const {
  return {seed, mix64(mix64(stream + 0x632be59bd9b4e019ULL) ^ (index + 1))};
}

}  // namespace gaitbo
