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

// Gaussian-process regression with a squared-exponential ARD kernel on
// unit-cube inputs. Targets are standardized internally; hyperparameters
// (signal std, noise std) therefore live in standardized units and
// predictions are mapped back to the caller's units.

#ifndef GAITBO_GP_HPP_
#define GAITBO_GP_HPP_

#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace gaitbo {

struct Hyperparams {
  double signalStd = 1.0;
  Eigen::VectorXd lengthscales;
  double noiseStd = 1e-3;

  void validate() const;
  static Hyperparams isotropic(int dim, double lengthscale, double noiseStd,
                               double signalStd = 1.0);
};

// signalStd^2 exp(-1/2 sum(((x1 - x2) / l)^2)).
double kernel(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2, const Hyperparams& hyper);

struct Prediction {
  double mean;
  double std;
};

class GPModel {
 public:
  // Throws NumericalError when K + (noise^2 + jitter) I cannot be factorized
  // with jitter up to 1e-4 signalStd^2.
  static GPModel fit(Eigen::MatrixXd X, const Eigen::VectorXd& y, const Hyperparams& hyper);

  Prediction posterior(const Eigen::VectorXd& x) const;
  double log_marginal_likelihood() const;

  const Eigen::MatrixXd& X() const { return X_; }
  const Eigen::VectorXd& y_standardized() const { return y_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  const Hyperparams& hyper() const { return hyper_; }
  double y_mean() const { return y_mean_; }
  double y_scale() const { return y_scale_; }
  double jitter() const { return jitter_; }
  int size() const { return static_cast<int>(X_.rows()); }
  int dim() const { return static_cast<int>(X_.cols()); }
  // Prior std in caller units.
  double prior_std() const { return hyper_.signalStd * y_scale_; }

 private:
  GPModel() = default;

  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
  Hyperparams hyper_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
  double jitter_ = 0.0;
};

// Grid member with the largest log marginal likelihood; exact ties go to the
// smallest lengthscale product, then to the earlier grid entry.
Hyperparams fit_hyper(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                      const std::vector<Hyperparams>& grid);

// l in {0.1, 0.2, 0.3, 0.5, 1.0} shared across dimensions, noise in
// {1e-3, 1e-2, 1e-1}, unit signal std.
std::vector<Hyperparams> default_hyper_grid(int dim);

// Ratio applied to every posterior std during acquisition: lifts the largest
// std over `candidates` to 0.1 signal std when it falls below that floor.
double adaptive_std_scale(const GPModel& model, const std::vector<Eigen::VectorXd>& candidates);

}  // namespace gaitbo

#endif  // GAITBO_GP_HPP_
