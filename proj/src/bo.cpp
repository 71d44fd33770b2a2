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

#include "gaitbo/bo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gaitbo {

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double expected_improvement(double mean, double std, double best) {
  const double improvement = best - mean;
  if (!(std > 0.0)) return std::max(improvement, 0.0);
  const double z = improvement / std;
  return std::max(improvement * normal_cdf(z) + std * normal_pdf(z), 0.0);
}

double feasibility_probability(double mean, double std) {
  if (!(std > 0.0)) return mean <= 0.0 ? 1.0 : 0.0;
  return std::clamp(normal_cdf(-mean / std), 0.0, 1.0);
}

double feasibility_probability(const GPModel& hModel, const Eigen::VectorXd& x) {
  const Prediction p = hModel.posterior(x);
  return feasibility_probability(p.mean, p.std);
}

void ConstraintSpec::validate() const {
  if (!(tolerance > 0.0 && tolerance < 1.0)) {
    throw ConfigError("constraint tolerance must lie in (0, 1)");
  }
}

namespace {

struct Scored {
  double acquisition;
  double feasibility;
};

class Acquisition {
 public:
  Acquisition(const GPModel& obj, const GPModel* h, double best, double ratio)
      : obj_(obj), h_(h), best_(best), ratio_(ratio) {}

  Scored operator()(const Eigen::VectorXd& x) const {
    const Prediction p = obj_.posterior(x);
    const double ei = expected_improvement(p.mean, ratio_ * p.std, best_);
    if (h_ == nullptr) return {ei, 1.0};
    const Prediction ph = h_->posterior(x);
    const double pc = feasibility_probability(ph.mean, ratio_ * ph.std);
    return {ei * pc, pc};
  }

 private:
  const GPModel& obj_;
  const GPModel* h_;
  double best_;
  double ratio_;
};

// Coordinate-wise hill climb on the acquisition inside the unit cube. A step
// is one pass over all coordinates; the step length halves after a pass
// without improvement.
Eigen::VectorXd refine(const Acquisition& acq, Eigen::VectorXd x, Scored fx, double min_feasibility,
                       const ProposeOptions& opt) {
  double step = opt.refineStep;
  for (int s = 0; s < opt.refineSteps; ++s) {
    bool improved = false;
    for (Eigen::Index d = 0; d < x.size(); ++d) {
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd y = x;
        y[d] = std::clamp(y[d] + sign * step, 0.0, 1.0);
        if (y[d] == x[d]) continue;
        const Scored fy = acq(y);
        if (fy.acquisition > fx.acquisition && fy.feasibility >= min_feasibility) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

}  // namespace

Proposal propose(const GPModel& objModel, const GPModel* hModel, const ConstraintSpec* spec,
                 double best, Rng& rng, const ProposeOptions& options) {
  const int n = objModel.dim();
  std::vector<Eigen::VectorXd> candidates;
  candidates.reserve(static_cast<std::size_t>(options.candidates));
  for (int i = 0; i < options.candidates; ++i) candidates.push_back(rng.uniform_vector(n));

  const double ratio = adaptive_std_scale(objModel, candidates);
  const bool constrained = hModel != nullptr && spec != nullptr;
  const Acquisition acq(objModel, constrained ? hModel : nullptr, best, ratio);
  const double min_feasibility = constrained ? 1.0 - spec->tolerance : 0.0;

  std::vector<Scored> scores;
  scores.reserve(candidates.size());
  for (const auto& c : candidates) scores.push_back(acq(c));

  std::size_t arg = candidates.size();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (scores[i].feasibility < min_feasibility) continue;
    if (arg == candidates.size() || scores[i].acquisition > scores[arg].acquisition) arg = i;
  }
  if (arg == candidates.size()) {
    std::size_t safest = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (scores[i].feasibility > scores[safest].feasibility) safest = i;
    }
    return {candidates[safest], true};
  }
  return {refine(acq, candidates[arg], scores[arg], min_feasibility, options), false};
}

BOResult optimize(const BlackBox& blackBox, const Box& box, const OptimizeOptions& options) {
  if (options.initCount < 1 || options.iterations < options.initCount) {
    throw ConfigError("optimize needs iterations >= initCount >= 1");
  }
  if (options.constraint) options.constraint->validate();
  if (options.logCost && !(options.logOffset > 0.0)) {
    throw ConfigError("optimize: logOffset must be positive");
  }
  const auto model_target = [&](double cost) {
    return options.logCost ? std::log(std::max(cost, 0.0) + options.logOffset) : cost;
  };
  const int n = box.dim();
  Rng rng(options.seed);

  BOResult result;
  result.bestCost = std::numeric_limits<double>::infinity();

  auto evaluate = [&](const Eigen::VectorXd& u) {
    BlackBoxResult r;
    try {
      r = blackBox(from_unit(u, box));
    } catch (const Error& e) {
      throw OptimizeAborted(e, result.history);
    }
    if (!std::isfinite(r.cost)) {
      throw OptimizeAborted(NumericalError("non-finite cost"), result.history);
    }
    if (r.fell && !r.hValue) r.hValue = kFallConstraintValue;
    result.history.push_back({u, r.cost, r.hValue, r.fell});
    if (r.cost < result.bestCost) {
      result.bestCost = r.cost;
      result.bestX = u;
    }
    result.bestCostTrace.push_back(result.bestCost);
  };

  std::vector<Eigen::VectorXd> design = options.initialDesign;
  if (design.empty()) {
    for (int i = 0; i < options.initCount; ++i) design.push_back(rng.uniform_vector(n));
  }
  for (const auto& u : design) {
    if (static_cast<int>(result.history.size()) >= options.iterations) break;
    if (u.size() != n) throw RangeError("initial design point has the wrong dimension");
    evaluate(u);
  }

  const bool constrained = options.constraint.has_value();
  const auto grid = default_hyper_grid(n);
  std::optional<Hyperparams> obj_hyper;
  std::optional<Hyperparams> h_hyper;
  for (int bo_iter = 0; static_cast<int>(result.history.size()) < options.iterations; ++bo_iter) {
    const Eigen::Index m = static_cast<Eigen::Index>(result.history.size());
    Eigen::MatrixXd X(m, n);
    Eigen::VectorXd y(m);
    Eigen::VectorXd hy(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Evaluation& e = result.history[static_cast<std::size_t>(i)];
      X.row(i) = e.x.transpose();
      y[i] = model_target(e.cost);
      if (constrained) {
        if (!e.hValue) throw RangeError("constrained optimize: evaluation lacks an h observation");
        hy[i] = *e.hValue;
      }
    }
    const bool refit = bo_iter % options.hyperRefitPeriod == 0;
    if (refit || !obj_hyper) obj_hyper = fit_hyper(X, y, grid);
    const GPModel obj = GPModel::fit(X, y, *obj_hyper);

    Proposal next;
    if (constrained) {
      if (refit || !h_hyper) h_hyper = fit_hyper(X, hy, grid);
      const GPModel hm = GPModel::fit(X, hy, *h_hyper);
      next = propose(obj, &hm, &*options.constraint, model_target(result.bestCost), rng,
                     options.propose);
    } else {
      next = propose(obj, nullptr, nullptr, model_target(result.bestCost), rng,
                     options.propose);
    }
    if (next.fallback) ++result.fallbackProposals;
    evaluate(next.x);
  }
  return result;
}

}  // namespace gaitbo
