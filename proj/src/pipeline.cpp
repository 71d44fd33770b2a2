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

#include "gaitbo/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "gaitbo/errors.hpp"
#include "gaitbo/random.hpp"
#include "parallel.hpp"

namespace gaitbo {
namespace {

std::uint64_t phase_id(const std::string& phase) {
  if (phase == "sim1") return 1;
  if (phase == "sim2") return 2;
  if (phase == "real") return 3;
  if (phase == "sweep") return 4;
  if (phase == "benchmark") return 5;
  if (phase == "baseline") return 6;
  if (phase == "eval") return 7;
  throw RangeError("unknown pipeline phase '" + phase + "'");
}

SeedSpec gait_seed(const PipelineConfig& cfg, const std::string& phase, std::size_t gait_index) {
  return SeedSpec{cfg.seed, 0}.child(phase_id(phase)).child(gait_index);
}

Error with_gait(const Error& e, const GaitParameter& p) {
  return Error(e.kind(), "gait " + to_string(p) + ": " + e.what());
}

std::vector<GaitParameter> stepping_in_place(std::initializer_list<double> heights) {
  std::vector<GaitParameter> out;
  for (double h : heights) out.push_back({0.0, 0.0, h});
  return out;
}

}  // namespace

Box GainBox::box() const {
  Eigen::VectorXd lo(6);
  Eigen::VectorXd hi(6);
  lo << kpLower, kdLower;
  hi << kpUpper, kdUpper;
  if ((lo.array() < 0.0).any()) throw ConfigError("gain box lower bounds must be non-negative");
  return Box(lo, hi);
}

Box CorrectionBoxSpec::box_for(const ControlParams& incumbent) const {
  if (!(gainFraction > 0.0) || !(gainFloor > 0.0) || !(offsetBound > 0.0)) {
    throw ConfigError("correction box parameters must be positive");
  }
  const double gains[4] = {incumbent.kP[0], incumbent.kD[0], incumbent.kP[1], incumbent.kD[1]};
  Eigen::VectorXd hi(6);
  for (int i = 0; i < 4; ++i) hi[i] = std::max(gainFraction * gains[i], gainFloor);
  hi[4] = offsetBound;
  hi[5] = offsetBound;
  return Box(-hi, hi);
}

PipelineConfig PipelineConfig::desk() {
  PipelineConfig c;
  c.grid = desk_grid();
  c.pSim1 = stepping_in_place({1.0, 0.8});
  c.pSim2 = {{0.4, 0.0, 1.0}, {-0.4, 0.0, 1.0}, {0.4, 0.0, 0.8}, {-0.4, 0.0, 0.8}};
  c.pReal = stepping_in_place({1.0, 0.8});
  c.i1 = 40;
  c.i2 = 15;
  c.i3 = 10;
  c.initCounts = {8, 5, 3};
  c.sweepGrid = default_sweep_grid();
  c.deskScale = true;
  return c;
}

PipelineConfig PipelineConfig::full() {
  PipelineConfig c;
  c.grid = full_grid();
  c.pSim1 = stepping_in_place({1.0, 0.9, 0.8, 0.7});
  const std::set<std::tuple<double, double, double>> nominal{
      {0.0, 0.0, 1.0}, {0.0, 0.0, 0.9}, {0.0, 0.0, 0.8}, {0.0, 0.0, 0.7}};
  for (double vx : c.grid.vx) {
    for (double vy : c.grid.vy) {
      for (double h : c.grid.h) {
        if (nominal.count({vx, vy, h}) == 0) c.pSim2.push_back({vx, vy, h});
      }
    }
  }
  c.pReal = stepping_in_place({1.0, 0.9, 0.8});
  c.i1 = 100;
  c.i2 = 25;
  c.i3 = 10;
  c.initCounts = {10, 5, 3};
  c.sweepGrid = default_sweep_grid();
  c.deskScale = false;
  return c;
}

void PipelineConfig::validate() const {
  const GainTable probe(grid, ControlParams{});
  auto check_set = [&](const std::vector<GaitParameter>& set, const char* name) {
    std::set<std::size_t> seen;
    for (const auto& p : set) {
      if (!(p.h > 0.0)) throw ConfigError(std::string(name) + " contains a non-positive height");
      const auto idx = probe.find_node(p);
      if (!idx) throw ConfigError(std::string(name) + " gait " + to_string(p) + " is not a grid node");
      if (!seen.insert(probe.flat(*idx)).second) {
        throw ConfigError(std::string(name) + " lists gait " + to_string(p) + " twice");
      }
    }
  };
  check_set(pSim1, "p_sim1");
  check_set(pSim2, "p_sim2");
  check_set(pReal, "p_real");
  if (pSim1.empty()) throw ConfigError("p_sim1 must not be empty");
  for (int c : initCounts) {
    if (c < 1) throw ConfigError("init counts must be at least 1");
  }
  if (i1 < initCounts[0] || i2 < initCounts[1] || i3 < initCounts[2]) {
    throw ConfigError("iteration budgets must be at least the init counts");
  }
  gainBox.box();
  correctionBox.box_for(ControlParams{});
  objective.validate();
  constraint.validate();
  sweepGrid.commands();
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
}

double RealLearning::unsafe_fraction() const {
  std::size_t total = 0;
  std::size_t unsafe = 0;
  for (const auto& run : runs) {
    for (const auto& e : run.result.history) {
      ++total;
      if (e.hValue && *e.hValue > 0.0) ++unsafe;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(unsafe) / static_cast<double>(total);
}

SeedSpec gait_noise_seed(const PipelineConfig& cfg, const std::string& phase,
                         std::size_t gait_index) {
  return gait_seed(cfg, phase, gait_index).child(1);
}

GaitEvaluation evaluate_gait(const GainTable& table, const PlantConfig& plant,
                             const GaitParameter& gait, const ObjectiveConfig& objective,
                             const SeedSpec& noise) {
  const CommandProfile profile = evaluation_profile(gait);
  const Trajectory traj =
      run_episode(plant, table, profile, PlantState::at_rest(profile.at(0.0)), noise);
  GaitEvaluation out;
  out.fell = traj.fell;
  out.cost = evaluate_cost(traj, gait, objective);
  if (!traj.fell) out.stats = converged_stats(traj, objective.segmentDuration);
  return out;
}

SimLearning learn_sim(const PipelineConfig& cfg) {
  cfg.validate();
  const PlantConfig plant = sim_config();
  const Box box = cfg.gainBox.box();
  const Eigen::Matrix<double, 6, 1> mid = (box.lower() + box.upper()) / 2.0;
  GainTable table(cfg.grid, ControlParams::from_gains(mid));
  std::vector<bool> visited(table.size(), false);

  auto run_gait = [&](const GainTable& base, const std::string& phase, std::size_t index,
                      const GaitParameter& gait, int iterations, int initCount,
                      std::vector<Eigen::VectorXd> design) {
    const SeedSpec noise = gait_noise_seed(cfg, phase, index);
    const BlackBox black_box = [&](const Eigen::VectorXd& x) {
      const GainTable candidate = base.upsert(gait, ControlParams::from_gains(x));
      const GaitEvaluation ev = evaluate_gait(candidate, plant, gait, cfg.objective, noise);
      return BlackBoxResult{ev.cost, std::nullopt, ev.fell};
    };
    OptimizeOptions opt;
    opt.iterations = iterations;
    opt.initCount = initCount;
    opt.initialDesign = std::move(design);
    opt.seed = gait_seed(cfg, phase, index).child(0);
    opt.logCost = true;
    try {
      return optimize(black_box, box, opt);
    } catch (const Error& e) {
      throw with_gait(e, gait);
    }
  };

  SimLearning out{table, {}};

  // Nominal gaits from random initial designs; independent of each other.
  std::vector<BOResult> nominal(cfg.pSim1.size());
  internal::parallel_for(cfg.pSim1.size(), cfg.jobs, [&](std::size_t i) {
    nominal[i] = run_gait(table, "sim1", i, cfg.pSim1[i], cfg.i1, cfg.initCounts[0], {});
  });
  std::vector<std::pair<GaitParameter, Eigen::VectorXd>> completed;
  for (std::size_t i = 0; i < cfg.pSim1.size(); ++i) {
    const GaitParameter& p = cfg.pSim1[i];
    table = table.upsert(p, ControlParams::from_gains(from_unit(nominal[i].bestX, box)));
    visited[table.flat(*table.find_node(p))] = true;
    completed.emplace_back(p, nominal[i].bestX);
    out.runs.push_back({"sim1", p, std::move(nominal[i])});
  }

  // Remaining gaits, nearest-to-finished first, warm-started from that
  // neighbour's optimum.
  std::vector<bool> done(cfg.pSim2.size(), false);
  for (std::size_t round = 0; round < cfg.pSim2.size(); ++round) {
    std::size_t pick = cfg.pSim2.size();
    std::size_t pick_neighbour = 0;
    double pick_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cfg.pSim2.size(); ++j) {
      if (done[j]) continue;
      for (std::size_t c = 0; c < completed.size(); ++c) {
        const double d = (cfg.pSim2[j].vec() - completed[c].first.vec()).norm();
        if (d < pick_dist) {
          pick_dist = d;
          pick = j;
          pick_neighbour = c;
        }
      }
    }
    const GaitParameter& p = cfg.pSim2[pick];
    std::vector<Eigen::VectorXd> design{completed[pick_neighbour].second};
    Rng design_rng(gait_seed(cfg, "sim2", pick).child(2));
    for (int k = 1; k < cfg.initCounts[1]; ++k) design.push_back(design_rng.uniform_vector(box.dim()));
    BOResult r = run_gait(table, "sim2", pick, p, cfg.i2, cfg.initCounts[1], std::move(design));
    table = table.upsert(p, ControlParams::from_gains(from_unit(r.bestX, box)));
    visited[table.flat(*table.find_node(p))] = true;
    completed.emplace_back(p, r.bestX);
    done[pick] = true;
    out.runs.push_back({"sim2", p, std::move(r)});
  }

  out.table = std::all_of(visited.begin(), visited.end(), [](bool b) { return b; })
                  ? table
                  : fill_unvisited(table, visited);
  return out;
}

std::pair<SweepResult, SafePolyhedron> extract_safe_set(const GainTable& table,
                                                        const PipelineConfig& cfg) {
  SweepResult sweep = sweep_commands(table, sim_config(), cfg.sweepGrid.commands(),
                                     gait_seed(cfg, "sweep", 0), cfg.objective.segmentDuration,
                                     cfg.jobs);
  std::vector<Eigen::Vector3d> points;
  if (cfg.safeVertices) {
    points = *cfg.safeVertices;
  } else {
    for (const auto& p : sweep.safePoints) points.push_back(p.vec());
  }
  if (points.size() < 4) {
    throw SafeSetError("safe set has " + std::to_string(points.size()) +
                       " points; at least 4 affinely independent points are required");
  }
  SafePolyhedron poly = convex_hull(points, cfg.gamma);
  return {std::move(sweep), std::move(poly)};
}

RealLearning learn_real(const GainTable& table, const SafePolyhedron& poly,
                        const PipelineConfig& cfg) {
  cfg.validate();
  poly.validate();
  const PlantConfig plant = real_config();
  ConstraintSpec spec = cfg.constraint;
  spec.hObservations = true;

  std::vector<BOResult> results(cfg.pReal.size());
  std::vector<Box> boxes;
  for (const auto& p : cfg.pReal) boxes.push_back(cfg.correctionBox.box_for(table.lookup(p)));

  internal::parallel_for(cfg.pReal.size(), cfg.jobs, [&](std::size_t i) {
    const GaitParameter& gait = cfg.pReal[i];
    const Box& box = boxes[i];
    const SeedSpec noise = gait_noise_seed(cfg, "real", i);
    const BlackBox black_box = [&](const Eigen::VectorXd& x) {
      const Correction corr = Correction::from_free(x);
      const GainTable candidate = table.apply_corrections({{gait, corr}});
      const GaitEvaluation ev = evaluate_gait(candidate, plant, gait, cfg.objective, noise);
      const double h = ev.fell ? kFallConstraintValue : constraint_value(poly, ev.stats->pC);
      return BlackBoxResult{ev.cost, h, ev.fell};
    };
    std::vector<Eigen::VectorXd> design{to_unit(Eigen::VectorXd::Zero(6), box)};
    Rng design_rng(gait_seed(cfg, "real", i).child(2));
    for (int k = 1; k < cfg.initCounts[2]; ++k) design.push_back(design_rng.uniform_vector(6));

    OptimizeOptions opt;
    opt.iterations = cfg.i3;
    opt.initCount = cfg.initCounts[2];
    opt.initialDesign = std::move(design);
    opt.constraint = spec;
    opt.seed = gait_seed(cfg, "real", i).child(0);
    opt.logCost = true;
    try {
      results[i] = optimize(black_box, box, opt);
    } catch (const Error& e) {
      throw with_gait(e, gait);
    }
  });

  RealLearning out{table, {}, {}};
  for (std::size_t i = 0; i < cfg.pReal.size(); ++i) {
    out.corrections.emplace_back(cfg.pReal[i],
                                 Correction::from_free(from_unit(results[i].bestX, boxes[i])));
    out.runs.push_back({"real", cfg.pReal[i], std::move(results[i])});
  }
  out.table = table.apply_corrections(out.corrections);
  return out;
}

BenchmarkReport benchmark(const GainTable& tableA, const GainTable& tableB,
                          const PipelineConfig& cfg, const PlantConfig& plant,
                          const std::string& plantName, const std::string& nameA,
                          const std::string& nameB) {
  if (!(tableA.axes() == tableB.axes())) {
    throw ConfigError("benchmark tables must share the same grid");
  }
  const std::vector<GaitParameter> commands = cfg.sweepGrid.commands();
  const SeedSpec seed = gait_seed(cfg, "benchmark", 0);
  const SweepResult ra =
      sweep_commands(tableA, plant, commands, seed, cfg.objective.segmentDuration, cfg.jobs);
  const SweepResult rb =
      sweep_commands(tableB, plant, commands, seed, cfg.objective.segmentDuration, cfg.jobs);

  auto summarize = [](const SweepResult& r, const std::string& name) {
    BenchmarkSide s;
    s.name = name;
    s.feasibleCount = static_cast<int>(r.feasibleCommands.size());
    for (std::size_t i = 0; i < r.feasibleCommands.size(); ++i) {
      s.meanTrackingError += (r.feasibleCommands[i].vec() - r.stats[i].pC.vec()).cwiseAbs();
      s.meanOscillation += r.stats[i].pCMax.vec() - r.stats[i].pCMin.vec();
    }
    if (s.feasibleCount > 0) {
      s.meanTrackingError /= s.feasibleCount;
      s.meanOscillation /= s.feasibleCount;
    }
    return s;
  };

  BenchmarkReport report;
  report.gridSize = static_cast<int>(commands.size());
  report.plant = plantName;
  report.a = summarize(ra, nameA);
  report.b = summarize(rb, nameB);

  for (std::size_t ia = 0; ia < ra.feasibleCommands.size(); ++ia) {
    const GaitParameter& cmd = ra.feasibleCommands[ia];
    const auto it = std::find(rb.feasibleCommands.begin(), rb.feasibleCommands.end(), cmd);
    if (it == rb.feasibleCommands.end()) continue;
    const std::size_t jb = static_cast<std::size_t>(it - rb.feasibleCommands.begin());
    ++report.commonFeasible;
    const double ea = (cmd.vec() - ra.stats[ia].pC.vec()).norm();
    const double eb = (cmd.vec() - rb.stats[jb].pC.vec()).norm();
    if (ea < eb) {
      ++report.winsA;
    } else if (eb < ea) {
      ++report.winsB;
    } else {
      ++report.ties;
    }
  }
  return report;
}

GainTable random_gain_table(const GridAxes& grid, const GainBox& gainBox, const SeedSpec& seed) {
  const Box box = gainBox.box();
  Rng rng(seed);
  std::vector<ControlParams> entries;
  entries.reserve(grid.node_count());
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    Eigen::Matrix<double, 6, 1> k;
    for (int d = 0; d < 6; ++d) {
      const double u = 0.25 + 0.5 * rng.uniform();
      k[d] = box.lower()[d] + u * (box.upper()[d] - box.lower()[d]);
    }
    entries.push_back(ControlParams::from_gains(k));
  }
  return GainTable(grid, std::move(entries));
}

}  // namespace gaitbo
