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

#include "desk_run.hpp"
#include "gaitbo/errors.hpp"
#include "gaitbo/pipeline.hpp"
#include "gaitbo/plant.hpp"
#include "gaitbo/safeset.hpp"

namespace gaitbo {
namespace {

using gaitbo_test::desk_run;

GainTable baseline_table(const PipelineConfig& cfg) {
  return random_gain_table(cfg.grid, cfg.gainBox, SeedSpec{cfg.seed, 0}.child(6));
}

TEST(BudgetTest, FullScaleCounts) {
  const PipelineConfig full = PipelineConfig::full();
  EXPECT_EQ(full.pSim1.size(), 4u);
  EXPECT_EQ(full.pSim2.size(), 304u);
  EXPECT_EQ(full.pReal.size(), 3u);
  EXPECT_EQ(full.sim_evaluations(), 4 * 100 + 304 * 25);
  EXPECT_EQ(full.sim_evaluations(), 8000);
  EXPECT_EQ(full.real_evaluations(), 30);
  EXPECT_EQ(full.pSim1.size() + full.pSim2.size(), full.grid.node_count());
  EXPECT_NO_THROW(full.validate());
}

TEST(BudgetTest, DeskScaleCounts) {
  const PipelineConfig desk = PipelineConfig::desk();
  EXPECT_EQ(desk.sim_evaluations(), 2 * 40 + 4 * 15);
  EXPECT_EQ(desk.real_evaluations(), 2 * 10);
  EXPECT_EQ(desk.pSim1.size() + desk.pSim2.size(), desk.grid.node_count());
}

TEST(PipelineConfigTest, ValidateRejectsBadSettings) {
  PipelineConfig c = PipelineConfig::desk();
  c.pSim1.push_back({0.3, 0.0, 1.0});
  EXPECT_THROW(c.validate(), Error);
  c = PipelineConfig::desk();
  c.i1 = 2;
  EXPECT_THROW(c.validate(), ConfigError);
  c = PipelineConfig::desk();
  c.gamma = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = PipelineConfig::desk();
  c.jobs = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(CorrectionBoxTest, Bounds) {
  ControlParams p;
  p.kP = Eigen::Vector3d(1.0, 0.1, 2.0);
  p.kD = Eigen::Vector3d(0.6, 0.0, 1.0);
  const Box b = CorrectionBoxSpec{}.box_for(p);
  Eigen::VectorXd hi(6);
  hi << 0.5, 0.3, 0.2, 0.2, 0.2, 0.2;
  EXPECT_TRUE(b.upper().isApprox(hi));
  EXPECT_TRUE(b.lower().isApprox(-hi));
}

TEST(RandomTableTest, CentralHalfOfBox) {
  const PipelineConfig cfg = PipelineConfig::desk();
  const GainTable t = baseline_table(cfg);
  const Box box = cfg.gainBox.box();
  for (const auto& e : t.entries()) {
    const Eigen::Matrix<double, 6, 1> k = e.gains();
    for (int d = 0; d < 6; ++d) {
      const double u = (k[d] - box.lower()[d]) / (box.upper()[d] - box.lower()[d]);
      EXPECT_GE(u, 0.25);
      EXPECT_LE(u, 0.75);
    }
    EXPECT_TRUE(e.deltaP.isZero(0.0));
  }
  EXPECT_EQ(t, baseline_table(cfg));
}

TEST(EvaluateGaitTest, StatsOnlyWhenStanding) {
  const PipelineConfig cfg = PipelineConfig::desk();
  ControlParams wild;
  wild.kP = Eigen::Vector3d::Constant(50.0);
  const GaitEvaluation fell = evaluate_gait(GainTable(cfg.grid, wild), sim_config(),
                                            {0.0, 0.0, 1.0}, cfg.objective, SeedSpec{});
  EXPECT_TRUE(fell.fell);
  EXPECT_FALSE(fell.stats.has_value());
  EXPECT_EQ(fell.cost, cfg.objective.fallPenalty);
}

TEST(DeskPipelineTest, SimTableBeatsRandomBaseline) {
  const auto& run = desk_run();
  const double tuned = gaitbo_test::median_node_cost(run.sim.table, run.cfg);
  const double random = gaitbo_test::median_node_cost(baseline_table(run.cfg), run.cfg);
  EXPECT_LE(tuned, 0.7 * random) << "tuned " << tuned << " random " << random;
}

TEST(DeskPipelineTest, EveryGaitRanWithItsBudget) {
  const auto& run = desk_run();
  ASSERT_EQ(run.sim.runs.size(), run.cfg.pSim1.size() + run.cfg.pSim2.size());
  for (const auto& r : run.sim.runs) {
    const int budget = r.phase == "sim1" ? run.cfg.i1 : run.cfg.i2;
    EXPECT_EQ(static_cast<int>(r.result.history.size()), budget);
    // The table holds the best observed gains of the gait's node.
    const Box box = run.cfg.gainBox.box();
    const ControlParams expected = ControlParams::from_gains(from_unit(r.result.bestX, box));
    EXPECT_EQ(run.sim.table.lookup(r.gait), expected);
  }
  for (const auto& r : run.real.runs) {
    EXPECT_EQ(static_cast<int>(r.result.history.size()), run.cfg.i3);
  }
}

TEST(DeskPipelineTest, TunedStepResponseSettles) {
  const auto& run = desk_run();
  const GaitParameter start{0.0, 0.0, 1.0};
  const GaitParameter target{0.4, 0.0, 1.0};
  const CommandProfile profile = CommandProfile::step(start, target, kSwitchTime, kEpisodeDuration);
  const Trajectory traj = run_episode(sim_config(), run.sim.table, profile,
                                      PlantState::at_rest(start), SeedSpec{0, 99});
  ASSERT_FALSE(traj.fell);
  const ConvergedStats s = converged_stats(traj, 5.0);
  EXPECT_NEAR(s.pC.vx, 0.4, 0.1);
}

TEST(DeskPipelineTest, FeasibleSetContainsSteppingInPlace) {
  const auto& run = desk_run();
  const auto& feasible = run.sweep.feasibleCommands;
  for (double h : {0.8, 1.0}) {
    const GaitParameter in_place{0.0, 0.0, h};
    EXPECT_NE(std::find(feasible.begin(), feasible.end(), in_place), feasible.end()) << h;
  }
  EXPECT_LT(constraint_value(run.poly, GaitParameter{0.0, 0.0, 0.8}), 0.0);
  EXPECT_NO_THROW(run.poly.validate());
}

TEST(DeskPipelineTest, UntunedTableLosesFastCommandsOnRealPlant) {
  const auto& run = desk_run();
  const GainTable zero(run.cfg.grid, ControlParams{});
  const SweepResult r = sweep_commands(zero, real_config(), run.cfg.sweepGrid.commands(),
                                       SeedSpec{0, 5});
  for (const auto& cmd : r.feasibleCommands) EXPECT_LT(std::abs(cmd.vx), 1.2);
  EXPECT_LT(r.feasibleCommands.size(), r.grid.size());
}

TEST(DeskPipelineTest, RealPhaseKeepsIncumbent) {
  const auto& run = desk_run();
  const PlantConfig plant = real_config();
  for (std::size_t i = 0; i < run.cfg.pReal.size(); ++i) {
    const GaitParameter& g = run.cfg.pReal[i];
    const SeedSpec noise = gait_noise_seed(run.cfg, "real", i);
    const double before = evaluate_gait(run.sim.table, plant, g, run.cfg.objective, noise).cost;
    const double after = evaluate_gait(run.real.table, plant, g, run.cfg.objective, noise).cost;
    EXPECT_LE(after, before) << to_string(g);
    // The zero correction is the first evaluation.
    EXPECT_EQ(run.real.runs[i].result.history.front().cost, before);
  }
}

TEST(DeskPipelineTest, RealPhaseMostlySafe) {
  EXPECT_LE(desk_run().real.unsafe_fraction(), 0.2);
}

TEST(DeskPipelineTest, RealPhaseDoesNotIncreaseTrackingError) {
  const auto& run = desk_run();
  const double before = gaitbo_test::real_tracking_error(run.sim.table, run.cfg);
  const double after = gaitbo_test::real_tracking_error(run.real.table, run.cfg);
  EXPECT_LE(after, before);
  RecordProperty("tracking_before", std::to_string(before));
  RecordProperty("tracking_after", std::to_string(after));
}

TEST(DeskPipelineTest, CorrectionsTouchOnlyRealGaits) {
  const auto& run = desk_run();
  ASSERT_EQ(run.real.corrections.size(), run.cfg.pReal.size());
  for (const auto& [gait, corr] : run.real.corrections) {
    EXPECT_EQ(corr.deltaK()[4], 0.0);
    EXPECT_EQ(corr.deltaK()[5], 0.0);
    EXPECT_EQ(corr.deltaP()[2], 0.0);
    const ControlParams base = run.sim.table.lookup(gait);
    const ControlParams tuned = run.real.table.lookup(gait);
    EXPECT_EQ(tuned.kP[2], base.kP[2]);
    EXPECT_EQ(tuned.kD[2], base.kD[2]);
  }
  for (std::size_t i = 0; i < run.sim.table.size(); ++i) {
    const GaitParameter node = run.sim.table.node(i);
    bool corrected = false;
    for (const auto& g : run.cfg.pReal) corrected = corrected || g == node;
    if (!corrected) {
      EXPECT_EQ(run.sim.table.entries()[i], run.real.table.entries()[i]);
    }
  }
}

TEST(DeskPipelineTest, BenchmarkTunedVersusRandom) {
  const auto& run = desk_run();
  const BenchmarkReport r =
      benchmark(run.sim.table, baseline_table(run.cfg), run.cfg, sim_config(), "sim", "tuned",
                "random");
  EXPECT_GE(r.a.feasibleCount, r.b.feasibleCount);
  EXPECT_EQ(r.gridSize, static_cast<int>(run.cfg.sweepGrid.commands().size()));
  EXPECT_EQ(r.winsA + r.winsB + r.ties, r.commonFeasible);
}

TEST(DeskPipelineTest, BenchmarkAgainstItselfIsTied) {
  const auto& run = desk_run();
  const BenchmarkReport r = benchmark(run.sim.table, run.sim.table, run.cfg, sim_config());
  EXPECT_EQ(r.a.feasibleCount, r.b.feasibleCount);
  EXPECT_EQ(r.a.meanTrackingError, r.b.meanTrackingError);
  EXPECT_EQ(r.winsA, 0);
  EXPECT_EQ(r.winsB, 0);
  EXPECT_EQ(r.ties, r.commonFeasible);
}

TEST(PipelineTest, BudgetEqualToInitialDesignStillFillsTable) {
  PipelineConfig cfg = PipelineConfig::desk();
  cfg.i1 = cfg.initCounts[0];
  cfg.i2 = cfg.initCounts[1];
  const SimLearning sim = learn_sim(cfg);
  EXPECT_EQ(sim.table.size(), cfg.grid.node_count());
  for (const auto& r : sim.runs) {
    EXPECT_EQ(static_cast<int>(r.result.history.size()),
              r.phase == "sim1" ? cfg.i1 : cfg.i2);
  }
  for (const auto& e : sim.table.entries()) EXPECT_NO_THROW(e.validate());
}

TEST(PipelineTest, SafeSetNeedsFourPoints) {
  PipelineConfig cfg = PipelineConfig::desk();
  ControlParams wild;
  wild.kP = Eigen::Vector3d::Constant(50.0);
  EXPECT_THROW(extract_safe_set(GainTable(cfg.grid, wild), cfg), SafeSetError);
}

TEST(PipelineTest, ManualSafeVertices) {
  PipelineConfig cfg = PipelineConfig::desk();
  cfg.safeVertices = std::vector<Eigen::Vector3d>{
      {-0.5, -0.2, 0.7}, {0.5, -0.2, 0.7}, {0.0, 0.3, 0.7}, {0.0, 0.0, 1.1}};
  cfg.gamma = 1.0;
  const auto [sweep, poly] = extract_safe_set(desk_run().sim.table, cfg);
  EXPECT_EQ(poly.vertices().size(), 4u);
}

}  // namespace
}  // namespace gaitbo
