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

#include <cmath>

#include <gtest/gtest.h>

#include "gaitbo/bo.hpp"
#include "gaitbo/errors.hpp"
#include "gaitbo/gp.hpp"
#include "gaitbo/random.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace gaitbo {
namespace {

using gaitbo_test::oracle_ei;

using gaitbo_test::branin;
using gaitbo_test::branin_box;

BlackBox plain(double (*f)(const Eigen::VectorXd&)) {
  return [f](const Eigen::VectorXd& x) { return BlackBoxResult{f(x), std::nullopt, false}; };
}

TEST(ExpectedImprovementTest, DocumentedValues) {
  EXPECT_NEAR(expected_improvement(0.8, 0.0, 1.0), 0.2, 1e-15);
  EXPECT_EQ(expected_improvement(1.2, 0.0, 1.0), 0.0);
  EXPECT_NEAR(expected_improvement(2.0, 1.0, 2.0), 0.3989422804014327, 1e-12);
  EXPECT_LT(expected_improvement(11.0, 0.01, 1.0), 1e-12);
  EXPECT_NEAR(normal_pdf(0.0), 0.3989422804014327, 1e-15);
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-15);
}

TEST(ExpectedImprovementTest, MatchesIndependentFormula) {
  Rng rng(SeedSpec{1, 0});
  for (int i = 0; i < 1000; ++i) {
    const double mean = rng.uniform(-5, 5);
    const double std = rng.uniform(0.0, 3.0);
    const double best = rng.uniform(-5, 5);
    const double ei = expected_improvement(mean, std, best);
    EXPECT_NEAR(ei, oracle_ei(mean, std, best), 1e-10);
    EXPECT_GE(ei, 0.0);
  }
}

TEST(ExpectedImprovementTest, NondecreasingInStd) {
  Rng rng(SeedSpec{2, 0});
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const double mean = rng.uniform(-3, 3);
    const double std = rng.uniform(0.01, 2.0);
    const double best = rng.uniform(-3, 3);
    const double d = (expected_improvement(mean, std + h, best) -
                      expected_improvement(mean, std - h, best)) /
                     (2.0 * h);
    EXPECT_GE(d, -1e-6);
  }
}

TEST(FeasibilityTest, Values) {
  EXPECT_NEAR(feasibility_probability(0.0, 1.0), 0.5, 1e-12);
  EXPECT_EQ(feasibility_probability(-3.0, 0.0), 1.0);
  EXPECT_EQ(feasibility_probability(3.0, 0.0), 0.0);
  EXPECT_GT(feasibility_probability(-1.0, 0.5), feasibility_probability(0.0, 0.5));
  EXPECT_GT(feasibility_probability(0.0, 0.5), feasibility_probability(1.0, 0.5));
}

TEST(FeasibilityTest, ModelQueriesInUnitInterval) {
  Rng rng(SeedSpec{3, 0});
  Eigen::MatrixXd X(6, 2);
  Eigen::VectorXd h(6);
  for (int i = 0; i < 6; ++i) {
    X.row(i) = rng.uniform_vector(2).transpose();
    h[i] = rng.normal();
  }
  const GPModel m = GPModel::fit(X, h, Hyperparams::isotropic(2, 0.3, 1e-2));
  for (int i = 0; i < 1000; ++i) {
    const Eigen::VectorXd x = rng.uniform_vector(2) * 1.4 - Eigen::VectorXd::Constant(2, 0.2);
    const double p = feasibility_probability(m, x);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    const Prediction q = m.posterior(x);
    EXPECT_NEAR(p, feasibility_probability(q.mean, q.std), 1e-15);
  }
}

TEST(ProposeTest, SymmetricModelBeatsCenter) {
  Eigen::MatrixXd X(1, 2);
  X << 0.5, 0.5;
  const GPModel m = GPModel::fit(X, Eigen::VectorXd::Constant(1, 1.0),
                                 Hyperparams::isotropic(2, 0.3, 1e-3));
  Rng rng(SeedSpec{4, 0});
  const Proposal p = propose(m, nullptr, nullptr, 1.0, rng);
  EXPECT_FALSE(p.fallback);
  const auto ei = [&](const Eigen::VectorXd& x) {
    const Prediction q = m.posterior(x);
    return expected_improvement(q.mean, q.std, 1.0);
  };
  EXPECT_GE(ei(p.x), ei(X.row(0).transpose()));
  EXPECT_TRUE((p.x.array() >= 0.0).all() && (p.x.array() <= 1.0).all());
}

TEST(ProposeTest, Deterministic) {
  Rng data(SeedSpec{5, 0});
  Eigen::MatrixXd X(5, 3);
  Eigen::VectorXd y(5);
  for (int i = 0; i < 5; ++i) {
    X.row(i) = data.uniform_vector(3).transpose();
    y[i] = data.normal();
  }
  const GPModel m = GPModel::fit(X, y, Hyperparams::isotropic(3, 0.3, 1e-2));
  Rng a(SeedSpec{6, 1});
  Rng b(SeedSpec{6, 1});
  EXPECT_EQ(propose(m, nullptr, nullptr, y.minCoeff(), a).x,
            propose(m, nullptr, nullptr, y.minCoeff(), b).x);
}

TEST(ProposeTest, ConstraintSteersToSafeRegion) {
  Eigen::MatrixXd X(6, 2);
  X << 0.2, 0.2, 0.25, 0.2, 0.2, 0.25, 0.8, 0.8, 0.75, 0.8, 0.8, 0.75;
  Eigen::VectorXd h(6);
  h << 1, 1, 1, -1, -1, -1;
  // Cost is flat, so only the constraint separates the regions.
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(6, 1.0);
  const GPModel obj = GPModel::fit(X, y, Hyperparams::isotropic(2, 0.3, 1e-2));
  const GPModel hm = GPModel::fit(X, h, Hyperparams::isotropic(2, 0.15, 1e-2));
  const ConstraintSpec spec{0.05, true};
  for (std::uint64_t s = 0; s < 5; ++s) {
    Rng rng(SeedSpec{s, 0});
    const Proposal p = propose(obj, &hm, &spec, 1.0, rng);
    EXPECT_FALSE(p.fallback);
    EXPECT_LE((p.x - Eigen::Vector2d(0.8, 0.8)).norm(), 0.2) << p.x.transpose();
    EXPECT_GE(feasibility_probability(hm, p.x), 0.95);
  }
}

TEST(ProposeTest, FallbackWhenNothingQualifies) {
  Eigen::MatrixXd X(4, 1);
  X << 0.0, 0.3, 0.6, 1.0;
  const Eigen::Vector4d h(2.0, 1.0, 0.5, 1.5);
  const Eigen::Vector4d y(1.0, 2.0, 3.0, 4.0);
  const GPModel obj = GPModel::fit(X, y, Hyperparams::isotropic(1, 0.3, 1e-2));
  const GPModel hm = GPModel::fit(X, h, Hyperparams::isotropic(1, 1.0, 1e-3));
  const ConstraintSpec spec{0.05, true};
  Rng rng(SeedSpec{7, 0});
  const Proposal p = propose(obj, &hm, &spec, 1.0, rng);
  EXPECT_TRUE(p.fallback);
  // The fallback is the safest candidate; 1024 uniform draws cover [0, 1].
  double safest = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    safest = std::max(safest, feasibility_probability(hm, Eigen::VectorXd::Constant(1, i / 1000.0)));
  }
  EXPECT_GE(feasibility_probability(hm, p.x), safest - 1e-3);
  EXPECT_LT(safest, 0.95);
}

TEST(OptimizeTest, QuadraticConverges) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    OptimizeOptions opt;
    opt.iterations = 30;
    opt.seed = SeedSpec{seed, 0};
    const BOResult r = optimize(
        plain([](const Eigen::VectorXd& x) { return gaitbo_test::quadratic_1d(x[0]); }),
        Box(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)), opt);
    EXPECT_EQ(r.history.size(), 30u);
    EXPECT_LE(std::abs(r.bestX[0] - 0.3), 0.05) << "seed " << seed;
  }
}

TEST(OptimizeTest, ConstantFunction) {
  OptimizeOptions opt;
  opt.iterations = 12;
  const BOResult r = optimize(plain([](const Eigen::VectorXd&) { return 2.5; }),
                              Box(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2)), opt);
  EXPECT_EQ(r.bestCost, 2.5);
  for (double b : r.bestCostTrace) EXPECT_EQ(b, 2.5);
}

TEST(OptimizeTest, BraninNearGridMinimum) {
  const double oracle = gaitbo_test::branin_grid_minimum();
  EXPECT_NEAR(oracle, 0.397887, 1e-3);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    OptimizeOptions opt;
    opt.iterations = 60;
    opt.initCount = 8;
    opt.seed = SeedSpec{seed, 0};
    const BOResult r = optimize(
        plain([](const Eigen::VectorXd& x) { return branin(x[0], x[1]); }), branin_box(), opt);
    if (r.bestCost <= 1.05 * oracle) ++hits;
  }
  EXPECT_GE(hits, 9);
}

TEST(OptimizeTest, TraceAndBookkeeping) {
  OptimizeOptions opt;
  opt.iterations = 20;
  opt.seed = SeedSpec{3, 0};
  const Box box(Eigen::Vector2d(-5.0, 0.0), Eigen::Vector2d(10.0, 15.0));
  const BOResult r = optimize(
      plain([](const Eigen::VectorXd& x) { return branin(x[0], x[1]); }), box, opt);
  ASSERT_EQ(r.bestCostTrace.size(), r.history.size());
  double lowest = INFINITY;
  for (std::size_t i = 0; i < r.history.size(); ++i) {
    lowest = std::min(lowest, r.history[i].cost);
    EXPECT_EQ(r.bestCostTrace[i], lowest);
    if (i > 0) {
      EXPECT_LE(r.bestCostTrace[i], r.bestCostTrace[i - 1]);
    }
  }
  EXPECT_EQ(r.bestCost, lowest);
  const Eigen::VectorXd bx = from_unit(r.bestX, box);
  EXPECT_NEAR(branin(bx[0], bx[1]), r.bestCost, 1e-9);
}

TEST(OptimizeTest, NeverWorseThanIncumbent) {
  const auto f = [](const Eigen::VectorXd& x) {
    return std::sin(7.0 * x[0]) + std::cos(5.0 * x[1]) + x[2];
  };
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    OptimizeOptions opt;
    opt.iterations = 10;
    opt.initCount = 3;
    Rng rng(SeedSpec{seed, 5});
    opt.initialDesign = {Eigen::Vector3d::Constant(0.5), rng.uniform_vector(3), rng.uniform_vector(3)};
    opt.seed = SeedSpec{seed, 0};
    const Box box(Eigen::Vector3d::Constant(-1), Eigen::Vector3d::Constant(1));
    const BOResult r = optimize(
        [&](const Eigen::VectorXd& x) { return BlackBoxResult{f(x), std::nullopt, false}; }, box,
        opt);
    EXPECT_LE(r.bestCost, f(Eigen::Vector3d::Zero()));
    EXPECT_EQ(r.history.front().x, Eigen::VectorXd(Eigen::Vector3d::Constant(0.5)));
  }
}

TEST(OptimizeTest, ConstrainedProposalsStayFeasible) {
  const BOResult r = gaitbo_test::run_constrained_problem(0);
  const std::size_t init = gaitbo_test::constrained_initial_design().size();
  int feasible = 0;
  int proposed = 0;
  for (std::size_t i = init; i < r.history.size(); ++i) {
    ++proposed;
    if (gaitbo_test::constrained_h(r.history[i].x) <= 0.0) ++feasible;
  }
  ASSERT_GT(proposed, 0);
  EXPECT_GE(feasible, static_cast<int>(std::ceil(0.9 * proposed)));
  // The best point approaches the constrained optimum (0.6, 0.6).
  EXPECT_LE(gaitbo_test::constrained_h(r.bestX), 0.0);
  EXPECT_LT(r.bestCost, 0.15);
}

TEST(OptimizeTest, FallRecordsInfeasibleObservation) {
  OptimizeOptions opt;
  opt.iterations = 6;
  opt.initCount = 2;
  opt.constraint = ConstraintSpec{};
  const BOResult r = optimize(
      [](const Eigen::VectorXd& x) {
        const bool fell = x[0] > 0.5;
        return BlackBoxResult{fell ? 100.0 : x[0], fell ? std::nullopt : std::optional(-0.1), fell};
      },
      Box(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)), opt);
  for (const auto& e : r.history) {
    ASSERT_TRUE(e.hValue.has_value());
    if (e.fell) {
      EXPECT_EQ(*e.hValue, kFallConstraintValue);
    }
  }
}

TEST(OptimizeTest, AbortCarriesPartialHistory) {
  OptimizeOptions opt;
  opt.iterations = 10;
  opt.initCount = 3;
  int calls = 0;
  try {
    optimize(
        [&](const Eigen::VectorXd& x) {
          if (++calls == 5) throw SimulationError("diverged", 3);
          return BlackBoxResult{x[0], std::nullopt, false};
        },
        Box(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)), opt);
    FAIL() << "expected OptimizeAborted";
  } catch (const OptimizeAborted& e) {
    EXPECT_EQ(e.partial_history().size(), 4u);
    EXPECT_EQ(e.kind(), ErrorKind::kSimulation);
  }
}

TEST(OptimizeTest, RejectsBadOptions) {
  const Box box(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1));
  const BlackBox f = plain([](const Eigen::VectorXd& x) { return x[0]; });
  OptimizeOptions opt;
  opt.iterations = 3;
  opt.initCount = 5;
  EXPECT_THROW(optimize(f, box, opt), ConfigError);
  opt = OptimizeOptions{};
  opt.initCount = 0;
  EXPECT_THROW(optimize(f, box, opt), ConfigError);
  opt = OptimizeOptions{};
  opt.constraint = ConstraintSpec{1.5, true};
  EXPECT_THROW(optimize(f, box, opt), ConfigError);
  opt = OptimizeOptions{};
  opt.logCost = true;
  opt.logOffset = 0.0;
  EXPECT_THROW(optimize(f, box, opt), ConfigError);
  EXPECT_THROW(optimize(plain([](const Eigen::VectorXd&) { return std::nan(""); }), box, OptimizeOptions{}),
               OptimizeAborted);
}

TEST(OptimizeTest, LogCostModelKeepsObservedCosts) {
  OptimizeOptions opt;
  opt.iterations = 30;
  opt.logCost = true;
  const BOResult r = optimize(
      plain([](const Eigen::VectorXd& x) {
        return x[0] > 0.9 ? 100.0 : gaitbo_test::quadratic_1d(x[0]);
      }),
      Box(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1)), opt);
  EXPECT_LE(std::abs(r.bestX[0] - 0.3), 0.05);
  for (const auto& e : r.history) {
    const double expected = e.x[0] > 0.9 ? 100.0 : gaitbo_test::quadratic_1d(e.x[0]);
    EXPECT_EQ(e.cost, expected);
  }
}

TEST(OptimizeTest, Deterministic) {
  const auto run = [] {
    OptimizeOptions opt;
    opt.iterations = 15;
    opt.seed = SeedSpec{9, 9};
    return optimize(plain([](const Eigen::VectorXd& x) { return branin(x[0], x[1]); }),
                    branin_box(), opt);
  };
  const BOResult a = run();
  const BOResult b = run();
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) EXPECT_EQ(a.history[i].x, b.history[i].x);
}

}  // namespace
}  // namespace gaitbo
