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
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "gaitbo/errors.hpp"
#include "gaitbo/pipeline.hpp"
#include "gaitbo/random.hpp"
#include "gaitbo/serialization.hpp"
#include "temp_dir.hpp"

namespace gaitbo {
namespace {

GainTable random_table() {
  return random_gain_table(desk_grid(), GainBox{}, SeedSpec{3, 0})
      .upsert({0.4, 0.0, 1.0}, ControlParams{{0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}, {0.01, -0.02, 0.03}});
}

TEST(TableJsonTest, RoundTripIsExact) {
  const GainTable t = random_table();
  EXPECT_EQ(table_from_json(table_to_json(t)), t);
  EXPECT_EQ(table_from_json(Json::parse(table_to_json(t).dump())), t);
}

TEST(TableJsonTest, StrictStructure) {
  Json j = table_to_json(random_table());
  Json extra = j;
  extra["comment"] = "x";
  EXPECT_THROW(table_from_json(extra), ConfigError);
  Json missing = j;
  missing["entries"].erase(missing["entries"].size() - 1);
  EXPECT_THROW(table_from_json(missing), ConfigError);
  Json swapped = j;
  std::swap(swapped["entries"][0], swapped["entries"][1]);
  EXPECT_THROW(table_from_json(swapped), ConfigError);
  Json negative = j;
  negative["entries"][0]["kP"][0] = -1.0;
  EXPECT_THROW(table_from_json(negative), Error);
}

TEST(PolyhedronJsonTest, RoundTrip) {
  Rng rng(SeedSpec{1, 0});
  std::vector<Eigen::Vector3d> pts;
  for (int i = 0; i < 20; ++i) pts.emplace_back(rng.normal(), rng.normal(), rng.normal());
  const SafePolyhedron poly = convex_hull(pts, 0.9);
  const SafePolyhedron back = polyhedron_from_json(Json::parse(polyhedron_to_json(poly).dump()));
  EXPECT_EQ(back.gamma(), poly.gamma());
  EXPECT_EQ(back.vertices(), poly.vertices());
  ASSERT_EQ(back.faces().size(), poly.faces().size());
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d q(rng.normal(), rng.normal(), rng.normal());
    EXPECT_EQ(constraint_value(back, q), constraint_value(poly, q));
  }
  Json bad = polyhedron_to_json(poly);
  bad["faces"][0]["n"] = Json::array({0.0, 0.0, 2.0});
  EXPECT_THROW(polyhedron_from_json(bad), ConfigError);
}

TEST(BenchmarkJsonTest, RoundTrip) {
  BenchmarkReport r;
  r.gridSize = 75;
  r.plant = "real";
  r.a = {"tuned", 40, {0.1, 0.2, 0.3}, {0.01, 0.02, 0.03}};
  r.b = {"random", 30, {0.4, 0.5, 0.6}, {0.04, 0.05, 0.06}};
  r.commonFeasible = 28;
  r.winsA = 20;
  r.winsB = 7;
  r.ties = 1;
  const BenchmarkReport back = benchmark_from_json(Json::parse(benchmark_to_json(r).dump()));
  EXPECT_EQ(back.gridSize, 75);
  EXPECT_EQ(back.plant, "real");
  EXPECT_EQ(back.a.name, "tuned");
  EXPECT_EQ(back.b.meanTrackingError, r.b.meanTrackingError);
  EXPECT_EQ(back.winsA + back.winsB + back.ties, back.commonFeasible);
}

TEST(ConfigJsonTest, DefaultsAndRoundTrip) {
  const PipelineConfig desk = config_from_json(Json::object());
  EXPECT_TRUE(desk.deskScale);
  EXPECT_EQ(desk.grid, PipelineConfig::desk().grid);
  const PipelineConfig full = config_from_json({{"desk_scale", false}});
  EXPECT_EQ(full.sim_evaluations(), 8000);
  EXPECT_EQ(full.real_evaluations(), 30);

  PipelineConfig c = PipelineConfig::desk();
  c.seed = 17;
  c.i1 = 12;
  c.gamma = 0.75;
  c.objective.w2 = {0.1, 0.2, 0.3};
  const PipelineConfig back = config_from_json(Json::parse(config_to_json(c).dump()));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  EXPECT_EQ(back.seed, 17u);
  EXPECT_EQ(back.i1, 12);
}

TEST(ConfigJsonTest, RejectsBadInput) {
  EXPECT_THROW(config_from_json({{"sead", 1}}), ConfigError);
  EXPECT_THROW(config_from_json({{"seed", -1}}), ConfigError);
  EXPECT_THROW(config_from_json({{"seed", "zero"}}), ConfigError);
  EXPECT_THROW(config_from_json({{"i1", 2}}), ConfigError);
  EXPECT_THROW(config_from_json({{"gamma", 1.5}}), ConfigError);
  EXPECT_THROW(config_from_json({{"objective", {{"w3", 1}}}}), ConfigError);
  EXPECT_THROW(config_from_json({{"p_real", Json::array({Json::array({0.3, 0.0, 1.0})})}}),
               ConfigError);
  EXPECT_THROW(config_from_json(Json::array()), ConfigError);
  // Front-end keys are accepted and ignored by the pipeline.
  EXPECT_NO_THROW(config_from_json({{"output_dir", "x"}, {"plant", "real"}}));
}

TEST(CsvTest, HeaderAndRows) {
  Trajectory t;
  t.dt = 0.4;
  t.samples.push_back({0.0, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, Eigen::Vector3d::Zero()});
  t.samples.push_back({0.4, {0.4, 0.0, 1.0}, {0.1, 0.0, 1.0}, Eigen::Vector3d(0.2, 0, 0)});
  const std::string csv = trajectory_to_csv(t);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,vx_d,vy_d,h_d,vx,vy,h,dg1,dg2,dg3");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 9);
  }
  EXPECT_EQ(rows, 2);
}

TEST(FileTest, WriteAndReadJson) {
  gaitbo_test::TempDir dir;
  const auto path = dir.path() / "nested" / "a.json";
  write_json_file(path, table_to_json(random_table()));
  EXPECT_EQ(table_from_json(read_json_file(path)), random_table());
  const std::string text = gaitbo_test::read_bytes(path);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_THROW(read_json_file(dir.path() / "missing.json"), IoError);
  write_text_file(dir.path() / "broken.json", "{not json");
  EXPECT_THROW(read_json_file(dir.path() / "broken.json"), ConfigError);
}

TEST(FileTest, GaitDirname) {
  EXPECT_EQ(gait_dirname({0.4, 0.0, 1.0}), "vx+0.40_vy+0.00_h1.00");
  EXPECT_EQ(gait_dirname({-0.4, 0.2, 0.8}), "vx-0.40_vy+0.20_h0.80");
}

}  // namespace
}  // namespace gaitbo
