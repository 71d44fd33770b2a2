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

// Bayesian optimization over the unit cube: expected improvement,
// latent-constraint feasibility, candidate proposal and the budgeted
// minimization driver.

#ifndef GAITBO_BO_HPP_
#define GAITBO_BO_HPP_

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "gaitbo/domain.hpp"
#include "gaitbo/errors.hpp"
#include "gaitbo/gp.hpp"
#include "gaitbo/random.hpp"

namespace gaitbo {

double normal_pdf(double z);
double normal_cdf(double z);

// Minimization convention: E[max(best - f, 0)] for f ~ N(mean, std^2).
double expected_improvement(double mean, double std, double best);

// Pr(h <= 0) for h ~ N(mean, std^2); std = 0 is an indicator.
double feasibility_probability(double mean, double std);

// Pr(h(x) <= 0) under the constraint posterior.
double feasibility_probability(const GPModel& hModel, const Eigen::VectorXd& x);

struct ConstraintSpec {
  double tolerance = 0.05;
  bool hObservations = true;

  void validate() const;
};

// Observation recorded by the optimizer; x is in unit-cube coordinates.
struct Evaluation {
  Eigen::VectorXd x;
  double cost = 0.0;
  std::optional<double> hValue;
  bool fell = false;
};

struct BOResult {
  Eigen::VectorXd bestX;  // unit cube
  double bestCost = 0.0;
  std::vector<Evaluation> history;
  std::vector<double> bestCostTrace;
  int fallbackProposals = 0;  // constrained proposals with no tol-feasible candidate
};

// h observation substituted for a fallen episode.
inline constexpr double kFallConstraintValue = 0.5;

struct ProposeOptions {
  int candidates = 1024;
  int refineSteps = 20;
  double refineStep = 0.05;
};

struct Proposal {
  Eigen::VectorXd x;
  bool fallback = false;
};

// Samples uniform candidates, scales every objective posterior std by
// adaptive_std_scale, and maximizes EI (unconstrained) or EI * Pr(C) over
// candidates with Pr(C) >= 1 - tol (constrained), followed by coordinate-wise
// local refinement of the winner. When no candidate is tol-feasible the
// candidate with the largest Pr(C) is returned and flagged.
Proposal propose(const GPModel& objModel, const GPModel* hModel, const ConstraintSpec* spec,
                 double best, Rng& rng, const ProposeOptions& options = {});

struct BlackBoxResult {
  double cost = 0.0;
  std::optional<double> hValue;
  bool fell = false;
};

// Receives points in box coordinates.
using BlackBox = std::function<BlackBoxResult(const Eigen::VectorXd&)>;

struct OptimizeOptions {
  int iterations = 30;  // total black-box evaluations, initial design included
  int initCount = 5;
  std::optional<ConstraintSpec> constraint;
  std::vector<Eigen::VectorXd> initialDesign;  // unit cube; replaces the random design
  SeedSpec seed;
  int hyperRefitPeriod = 5;
  ProposeOptions propose;
  // Model log(cost + logOffset) instead of the raw cost. Useful when rare
  // penalties dwarf the spread of ordinary costs. The argmin is unchanged.
  bool logCost = false;
  double logOffset = 1e-6;
};

// Thrown when the black box fails; carries the evaluations made so far.
class OptimizeAborted : public Error {
 public:
  OptimizeAborted(const Error& cause, std::vector<Evaluation> partial)
      : Error(cause.kind(), std::string("black box failed: ") + cause.what()),
        partial_(std::move(partial)) {}
  const std::vector<Evaluation>& partial_history() const { return partial_; }

 private:
  std::vector<Evaluation> partial_;
};

// Returns the best observed (not model-predicted) point.
BOResult optimize(const BlackBox& blackBox, const Box& box, const OptimizeOptions& options);

}  // namespace gaitbo

#endif  // GAITBO_BO_HPP_
