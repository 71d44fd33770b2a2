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

#include "gaitbo/gp.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gaitbo/errors.hpp"

namespace gaitbo {

void Hyperparams::validate() const {
  if (!(signalStd > 0.0) || !std::isfinite(signalStd)) {
    throw RangeError("GP signal std must be positive");
  }
  if (lengthscales.size() == 0 || !(lengthscales.array() > 0.0).all() ||
      !lengthscales.allFinite()) {
    throw RangeError("GP lengthscales must be positive");
  }
  if (!(noiseStd >= 0.0) || !std::isfinite(noiseStd)) {
    throw RangeError("GP noise std must be non-negative");
  }
}

Hyperparams Hyperparams::isotropic(int dim, double lengthscale, double noiseStd,
                                   double signalStd) {
  return {signalStd, Eigen::VectorXd::Constant(dim, lengthscale), noiseStd};
}

double kernel(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2, const Hyperparams& hyper) {
  if (x1.size() != x2.size() || x1.size() != hyper.lengthscales.size()) {
    throw RangeError("kernel: input dimension does not match the lengthscales");
  }
  const double r2 = ((x1 - x2).array() / hyper.lengthscales.array()).square().sum();
  return hyper.signalStd * hyper.signalStd * std::exp(-0.5 * r2);
}

GPModel GPModel::fit(Eigen::MatrixXd X, const Eigen::VectorXd& y, const Hyperparams& hyper) {
  hyper.validate();
  const Eigen::Index m = X.rows();
  if (m < 1 || y.size() != m) throw RangeError("GP fit needs matching, non-empty X and y");
  if (X.cols() != hyper.lengthscales.size()) {
    throw RangeError("GP fit: input dimension does not match the lengthscales");
  }
  if (!X.allFinite() || !y.allFinite()) throw RangeError("GP fit: non-finite training data");

  GPModel model;
  model.hyper_ = hyper;
  model.y_mean_ = y.mean();
  const double sd = std::sqrt((y.array() - model.y_mean_).square().mean());
  model.y_scale_ = sd < 1e-12 ? 1.0 : sd;
  model.y_ = (y.array() - model.y_mean_) / model.y_scale_;

  Eigen::MatrixXd K(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      K(i, j) = K(j, i) = kernel(X.row(i).transpose(), X.row(j).transpose(), hyper);
    }
  }
  const double s2 = hyper.signalStd * hyper.signalStd;
  const double max_jitter = 1e-4 * s2 * (1.0 + 1e-12);
  for (double jitter = 1e-10 * s2; jitter <= max_jitter; jitter *= 2.0) {
    Eigen::MatrixXd Kn = K;
    Kn.diagonal().array() += hyper.noiseStd * hyper.noiseStd + jitter;
    model.llt_.compute(Kn);
    if (model.llt_.info() == Eigen::Success) {
      model.jitter_ = jitter;
      model.alpha_ = model.llt_.solve(model.y_);
      // Iterative refinement with extended-precision residuals; K is often
      // ill-conditioned.
      using Extended = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
      const Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> Ke = Kn.cast<long double>();
      for (int pass = 0; pass < 2; ++pass) {
        const Extended r = model.y_.cast<long double>() - Ke * model.alpha_.cast<long double>();
        model.alpha_ += model.llt_.solve(Eigen::VectorXd(r.cast<double>()));
      }
      model.X_ = std::move(X);
      return model;
    }
  }
  throw NumericalError("GP fit: Cholesky factorization failed at maximum jitter");
}

Prediction GPModel::posterior(const Eigen::VectorXd& x) const {
  const Eigen::Index m = X_.rows();
  Eigen::VectorXd ks(m);
  for (Eigen::Index i = 0; i < m; ++i) ks[i] = kernel(X_.row(i).transpose(), x, hyper_);
  const double mean = ks.dot(alpha_);
  const Eigen::VectorXd v = llt_.matrixL().solve(ks);
  const double var = hyper_.signalStd * hyper_.signalStd - v.squaredNorm();
  return {y_mean_ + y_scale_ * mean, y_scale_ * std::sqrt(std::max(var, 0.0))};
}

double GPModel::log_marginal_likelihood() const {
  double log_det_half = 0.0;
  for (Eigen::Index i = 0; i < X_.rows(); ++i) {
    log_det_half += std::log(llt_.matrixLLT()(i, i));
  }
  return -0.5 * y_.dot(alpha_) - log_det_half -
         0.5 * static_cast<double>(X_.rows()) * std::log(2.0 * std::numbers::pi);
}

Hyperparams fit_hyper(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                      const std::vector<Hyperparams>& grid) {
  if (grid.empty()) throw RangeError("fit_hyper: empty hyperparameter grid");
  const Hyperparams* best = nullptr;
  double best_lml = -std::numeric_limits<double>::infinity();
  double best_prod = 0.0;
  for (const auto& h : grid) {
    double lml = 0.0;
    try {
      lml = GPModel::fit(X, y, h).log_marginal_likelihood();
    } catch (const NumericalError&) {
      continue;
    }
    if (!std::isfinite(lml)) continue;
    const double prod = h.lengthscales.prod();
    if (best == nullptr || lml > best_lml || (lml == best_lml && prod < best_prod)) {
      best = &h;
      best_lml = lml;
      best_prod = prod;
    }
  }
  if (best == nullptr) throw NumericalError("fit_hyper: every grid member failed to factorize");
  return *best;
}

std::vector<Hyperparams> default_hyper_grid(int dim) {
  std::vector<Hyperparams> grid;
  for (double l : {0.1, 0.2, 0.3, 0.5, 1.0}) {
    for (double noise : {1e-3, 1e-2, 1e-1}) grid.push_back(Hyperparams::isotropic(dim, l, noise));
  }
  return grid;
}

double adaptive_std_scale(const GPModel& model, const std::vector<Eigen::VectorXd>& candidates) {
  if (candidates.empty()) throw RangeError("adaptive_std_scale: no candidates");
  double s_max = 0.0;
  for (const auto& c : candidates) s_max = std::max(s_max, model.posterior(c).std);
  const double floor = 0.1 * model.prior_std();
  if (s_max >= floor) return 1.0;
  return floor / std::max(s_max, std::numeric_limits<double>::min());
}

}  // namespace gaitbo
