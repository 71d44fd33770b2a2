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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "gaitbo/errors.hpp"
#include "gaitbo/objective.hpp"
#include "gaitbo/random.hpp"
#include "oracles.hpp"

namespace gaitbo {
namespace {

using gaitbo_test::make_trajectory;
using gaitbo_test::naive_cost;

ObjectiveConfig unit_weights() {
  ObjectiveConfig cfg;
  cfg.w1.setOnes();
  cfg.w2.setOnes();
  return cfg;
}

TEST(SegmentTest, TwelveSamplesForFiveSeconds) {
  EXPECT_EQ(segment_samples(5.0, 0.4), 12);
  EXPECT_EQ(segment_samples(2.0, 0.4), 5);
  EXPECT_EQ(segment_samples(0.4, 0.4), 1);
}

TEST(ConvergedStatsTest, ConstantSignal) {
  const GaitParameter p{0.3, -0.1, 0.9};
  const ConvergedStats s = converged_stats(make_trajectory(std::vector<GaitParameter>(50, p), p), 5.0);
  EXPECT_EQ(s.pC, p);
  EXPECT_EQ(s.pCMin, p);
  EXPECT_EQ(s.pCMax, p);
}

TEST(ConvergedStatsTest, AlternatingValues) {
  std::vector<GaitParameter> ph;
  for (int k = 0; k < 50; ++k) ph.push_back({k % 2 == 0 ? 0.3 : 0.5, 0.0, 1.0});
  const ConvergedStats s = converged_stats(make_trajectory(ph, {0.4, 0.0, 1.0}), 5.0);
  EXPECT_NEAR(s.pC.vx, 0.4, 1e-15);
  EXPECT_EQ(s.pCMin.vx, 0.3);
  EXPECT_EQ(s.pCMax.vx, 0.5);
}

TEST(ConvergedStatsTest, UsesOnlyTrailingSegment) {
  std::vector<GaitParameter> ph(50, {5.0, 5.0, 5.0});
  for (int k = 38; k < 50; ++k) ph[static_cast<std::size_t>(k)] = {0.1, 0.2, 0.9};
  const ConvergedStats s = converged_stats(make_trajectory(ph, {0.1, 0.2, 0.9}), 5.0);
  EXPECT_EQ(s.pCMax, (GaitParameter{0.1, 0.2, 0.9}));
}

TEST(ConvergedStatsTest, Errors) {
  Trajectory fallen = make_trajectory(std::vector<GaitParameter>(50), {});
  fallen.fell = true;
  EXPECT_THROW(converged_stats(fallen, 5.0), RangeError);
  EXPECT_THROW(converged_stats(make_trajectory(std::vector<GaitParameter>(11), {}), 5.0),
               RangeError);
}

TEST(CostTest, PerfectTrackingIsZero) {
  const GaitParameter p{0.4, 0.0, 1.0};
  EXPECT_EQ(evaluate_cost(make_trajectory(std::vector<GaitParameter>(50, p), p), p,
                          ObjectiveConfig{}),
            0.0);
}

TEST(CostTest, DocumentedOffsetCase) {
  const GaitParameter pd{0.4, 0.0, 1.0};
  const GaitParameter off{0.45, 0.0, 1.02};
  const double c = evaluate_cost(make_trajectory(std::vector<GaitParameter>(50, off), pd), pd,
                                 unit_weights());
  EXPECT_NEAR(c, 0.0029, 1e-12);
}

TEST(CostTest, FallReturnsPenalty) {
  Trajectory t = make_trajectory(std::vector<GaitParameter>(3), {});
  t.fell = true;
  ObjectiveConfig cfg;
  EXPECT_EQ(evaluate_cost(t, {}, cfg), 100.0);
  cfg.fallPenalty = 7.0;
  EXPECT_EQ(evaluate_cost(t, {}, cfg), 7.0);
}

TEST(CostTest, MatchesNaiveRecomputation) {
  Rng rng(SeedSpec{31, 0});
  for (int trial = 0; trial < 200; ++trial) {
    const GaitParameter pd{rng.uniform(-1, 1), rng.uniform(-0.3, 0.3), rng.uniform(0.7, 1.0)};
    std::vector<GaitParameter> ph;
    const int len = 12 + static_cast<int>(rng.uniform() * 60);
    for (int k = 0; k < len; ++k) {
      ph.push_back({pd.vx + rng.uniform(-0.3, 0.3), pd.vy + rng.uniform(-0.3, 0.3),
                    pd.h + rng.uniform(-0.2, 0.2)});
    }
    ObjectiveConfig cfg;
    for (int i = 0; i < 3; ++i) {
      cfg.w1[i] = rng.uniform(0.0, 3.0);
      cfg.w2[i] = rng.uniform(0.0, 3.0);
    }
    const Trajectory t = make_trajectory(ph, pd);
    const double c = evaluate_cost(t, pd, cfg);
    EXPECT_NEAR(c, naive_cost(t, pd, cfg), 1e-12);
    EXPECT_GE(c, 0.0);
    ObjectiveConfig heavier = cfg;
    heavier.w1 *= 1.0 + rng.uniform();
    EXPECT_GE(evaluate_cost(t, pd, heavier), c);
  }
}

TEST(CostTest, ZeroOnlyForPerfectSegment) {
  const GaitParameter pd{0.0, 0.0, 1.0};
  std::vector<GaitParameter> ph(50, pd);
  ph.back().vy = 1e-6;
  EXPECT_GT(evaluate_cost(make_trajectory(ph, pd), pd, ObjectiveConfig{}), 0.0);
}

TEST(ObjectiveConfigTest, Validation) {
  ObjectiveConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.w2[1] = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = ObjectiveConfig{};
  cfg.segmentDuration = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

}  // namespace
}  // namespace gaitbo
