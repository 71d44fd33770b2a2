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

#include "gaitbo/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gaitbo/errors.hpp"

namespace gaitbo {
namespace {

Json vec_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json gait_json(const GaitParameter& p) { return Json::array({p.vx, p.vy, p.h}); }

Eigen::VectorXd read_vec(const Json& j, const std::string& what, int expected = -1) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of numbers");
  if (expected >= 0 && static_cast<int>(j.size()) != expected) {
    throw ConfigError(what + " must have " + std::to_string(expected) + " entries");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(what + " must contain only numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Eigen::Vector3d read_vec3(const Json& j, const std::string& what) {
  return read_vec(j, what, 3);
}

std::vector<double> read_list(const Json& j, const std::string& what) {
  const Eigen::VectorXd v = read_vec(j, what);
  return {v.data(), v.data() + v.size()};
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(where + " is missing key '" + key + "'");
  }
  return j.at(key);
}

GaitParameter read_gait(const Json& j, const std::string& what) {
  const Eigen::Vector3d v = read_vec3(j, what);
  try {
    return GaitParameter::checked(v[0], v[1], v[2]);
  } catch (const RangeError& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

std::vector<GaitParameter> read_gaits(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of [vx, vy, h] triples");
  std::vector<GaitParameter> out;
  for (const auto& e : j) out.push_back(read_gait(e, what));
  return out;
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (allowed.count(key) == 0) throw ConfigError(where + " has unknown key '" + key + "'");
  }
}

double read_number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

int read_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ConfigError(what + " must be an integer");
  return j.get<int>();
}

Json axes_json(const GridAxes& axes) {
  return {{"vx", axes.vx}, {"vy", axes.vy}, {"h", axes.h}};
}

GridAxes read_axes(const Json& j, const std::string& where) {
  check_keys(j, {"vx", "vy", "h"}, where);
  return {read_list(require(j, "vx", where), where + ".vx"),
          read_list(require(j, "vy", where), where + ".vy"),
          read_list(require(j, "h", where), where + ".h")};
}

SweepAxis read_sweep_axis(const Json& j, const std::string& what) {
  const Eigen::Vector3d v = read_vec3(j, what);
  return {v[0], v[1], v[2]};
}

}  // namespace

Json table_to_json(const GainTable& table) {
  Json entries = Json::array();
  for (std::size_t f = 0; f < table.size(); ++f) {
    const ControlParams& e = table.entries()[f];
    entries.push_back({{"p", gait_json(table.node(f))},
                       {"kP", vec_json(e.kP)},
                       {"kD", vec_json(e.kD)},
                       {"deltaP", vec_json(e.deltaP)}});
  }
  return {{"axes", axes_json(table.axes())}, {"entries", std::move(entries)}};
}

GainTable table_from_json(const Json& j) {
  check_keys(j, {"axes", "entries"}, "gain table");
  GridAxes axes = read_axes(require(j, "axes", "gain table"), "gain table axes");
  const Json& entries = require(j, "entries", "gain table");
  if (!entries.is_array()) throw ConfigError("gain table entries must be an array");
  if (entries.size() != axes.node_count()) {
    throw ConfigError("gain table lists " + std::to_string(entries.size()) + " entries for " +
                      std::to_string(axes.node_count()) + " grid nodes");
  }
  const GainTable shape(axes, ControlParams{});
  std::vector<ControlParams> params;
  params.reserve(entries.size());
  for (std::size_t f = 0; f < entries.size(); ++f) {
    const Json& e = entries[f];
    const std::string where = "gain table entry " + std::to_string(f);
    check_keys(e, {"p", "kP", "kD", "deltaP"}, where);
    const Eigen::Vector3d p = read_vec3(require(e, "p", where), where + ".p");
    const GaitParameter expected = shape.node(f);
    if ((p - expected.vec()).cwiseAbs().maxCoeff() > 1e-9) {
      throw ConfigError(where + " is at " + to_string(GaitParameter::from_vec(p)) +
                        ", expected node " + to_string(expected));
    }
    ControlParams c;
    c.kP = read_vec3(require(e, "kP", where), where + ".kP");
    c.kD = read_vec3(require(e, "kD", where), where + ".kD");
    c.deltaP = read_vec3(require(e, "deltaP", where), where + ".deltaP");
    params.push_back(c);
  }
  try {
    return GainTable(std::move(axes), std::move(params));
  } catch (const RangeError& e) {
    throw ConfigError(std::string("gain table: ") + e.what());
  }
}

Json polyhedron_to_json(const SafePolyhedron& poly) {
  Json vertices = Json::array();
  for (const auto& v : poly.vertices()) vertices.push_back(vec_json(v));
  Json faces = Json::array();
  for (const auto& f : poly.faces()) {
    faces.push_back({{"v", f.v}, {"n", vec_json(f.normal)}, {"anchor", f.anchor}});
  }
  return {{"gamma", poly.gamma()}, {"vertices", std::move(vertices)}, {"faces", std::move(faces)}};
}

SafePolyhedron polyhedron_from_json(const Json& j) {
  check_keys(j, {"gamma", "vertices", "faces"}, "safe set");
  const double gamma = read_number(require(j, "gamma", "safe set"), "safe set gamma");
  const Json& jv = require(j, "vertices", "safe set");
  const Json& jf = require(j, "faces", "safe set");
  if (!jv.is_array() || !jf.is_array()) throw ConfigError("safe set vertices/faces must be arrays");
  std::vector<Eigen::Vector3d> vertices;
  for (const auto& v : jv) vertices.push_back(read_vec3(v, "safe set vertex"));
  std::vector<PolyFace> faces;
  for (const auto& f : jf) {
    check_keys(f, {"v", "n", "anchor"}, "safe set face");
    const Eigen::Vector3d idx = read_vec3(require(f, "v", "safe set face"), "safe set face v");
    PolyFace pf;
    for (int k = 0; k < 3; ++k) pf.v[k] = static_cast<int>(idx[k]);
    pf.normal = read_vec3(require(f, "n", "safe set face"), "safe set face n");
    pf.anchor = read_int(require(f, "anchor", "safe set face"), "safe set face anchor");
    faces.push_back(pf);
  }
  try {
    return SafePolyhedron(std::move(vertices), std::move(faces), gamma);
  } catch (const SafeSetError& e) {
    throw ConfigError(std::string("safe set: ") + e.what());
  }
}

Json bo_log_to_json(const BOResult& result) {
  Json log = Json::array();
  for (std::size_t i = 0; i < result.history.size(); ++i) {
    const Evaluation& e = result.history[i];
    log.push_back({{"iter", i},
                   {"x", vec_json(e.x)},
                   {"cost", e.cost},
                   {"h", e.hValue ? Json(*e.hValue) : Json(nullptr)},
                   {"fell", e.fell},
                   {"best", result.bestCostTrace[i]}});
  }
  return log;
}

namespace {

Json side_json(const BenchmarkSide& s) {
  return {{"name", s.name},
          {"feasible_count", s.feasibleCount},
          {"mean_tracking_error", vec_json(s.meanTrackingError)},
          {"mean_oscillation", vec_json(s.meanOscillation)}};
}

BenchmarkSide side_from_json(const Json& j) {
  check_keys(j, {"name", "feasible_count", "mean_tracking_error", "mean_oscillation"},
             "benchmark side");
  BenchmarkSide s;
  s.name = require(j, "name", "benchmark side").get<std::string>();
  s.feasibleCount = read_int(require(j, "feasible_count", "benchmark side"), "feasible_count");
  s.meanTrackingError = read_vec3(require(j, "mean_tracking_error", "benchmark side"),
                                  "mean_tracking_error");
  s.meanOscillation = read_vec3(require(j, "mean_oscillation", "benchmark side"),
                                "mean_oscillation");
  return s;
}

}  // namespace

Json benchmark_to_json(const BenchmarkReport& r) {
  return {{"grid_size", r.gridSize},
          {"plant", r.plant},
          {"a", side_json(r.a)},
          {"b", side_json(r.b)},
          {"common_feasible", r.commonFeasible},
          {"wins_a", r.winsA},
          {"wins_b", r.winsB},
          {"ties", r.ties}};
}

BenchmarkReport benchmark_from_json(const Json& j) {
  check_keys(j, {"grid_size", "plant", "a", "b", "common_feasible", "wins_a", "wins_b", "ties"},
             "benchmark");
  BenchmarkReport r;
  r.gridSize = read_int(require(j, "grid_size", "benchmark"), "grid_size");
  r.plant = require(j, "plant", "benchmark").get<std::string>();
  r.a = side_from_json(require(j, "a", "benchmark"));
  r.b = side_from_json(require(j, "b", "benchmark"));
  r.commonFeasible = read_int(require(j, "common_feasible", "benchmark"), "common_feasible");
  r.winsA = read_int(require(j, "wins_a", "benchmark"), "wins_a");
  r.winsB = read_int(require(j, "wins_b", "benchmark"), "wins_b");
  r.ties = read_int(require(j, "ties", "benchmark"), "ties");
  return r;
}

Json sweep_to_json(const SweepResult& sweep) {
  Json feasible = Json::array();
  for (std::size_t i = 0; i < sweep.feasibleCommands.size(); ++i) {
    feasible.push_back({{"command", gait_json(sweep.feasibleCommands[i])},
                        {"converged", gait_json(sweep.safePoints[i])},
                        {"min", gait_json(sweep.stats[i].pCMin)},
                        {"max", gait_json(sweep.stats[i].pCMax)}});
  }
  return {{"grid_size", sweep.grid.size()}, {"feasible", std::move(feasible)}};
}

Json corrections_to_json(const std::vector<std::pair<GaitParameter, Correction>>& corrections) {
  Json out = Json::array();
  for (const auto& [p, c] : corrections) {
    out.push_back({{"p", gait_json(p)},
                   {"deltaK", vec_json(c.deltaK())},
                   {"deltaP", vec_json(c.deltaP())}});
  }
  return out;
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t,vx_d,vy_d,h_d,vx,vy,h,dg1,dg2,dg3\n";
  char line[512];
  for (const auto& s : traj.samples) {
    std::snprintf(line, sizeof(line), "%.6f,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  s.time, s.pDesired.vx, s.pDesired.vy, s.pDesired.h, s.pHat.vx, s.pHat.vy,
                  s.pHat.h, s.deltaG[0], s.deltaG[1], s.deltaG[2]);
    os << line;
  }
  return os.str();
}

PipelineConfig config_from_json(const Json& j) {
  static const std::set<std::string> kPipelineKeys{
      "desk_scale", "grid",    "p_sim1",     "p_sim2",         "p_real",        "i1",
      "i2",         "i3",      "init_counts", "gain_box",      "correction_box", "objective",
      "constraint", "sweep_grid", "gamma",    "safe_vertices", "seed",          "jobs"};
  // Consumed by the command-line front end.
  static const std::set<std::string> kCliKeys{"output_dir", "plant", "table", "table_a",
                                              "table_b", "command", "csv", "verbosity"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (kPipelineKeys.count(key) == 0 && kCliKeys.count(key) == 0) {
      throw ConfigError("config has unknown key '" + key + "'");
    }
  }

  bool desk = true;
  if (j.contains("desk_scale")) {
    if (!j["desk_scale"].is_boolean()) throw ConfigError("desk_scale must be a boolean");
    desk = j["desk_scale"].get<bool>();
  }
  PipelineConfig c = desk ? PipelineConfig::desk() : PipelineConfig::full();

  if (j.contains("grid")) c.grid = read_axes(j["grid"], "grid");
  if (j.contains("p_sim1")) c.pSim1 = read_gaits(j["p_sim1"], "p_sim1");
  if (j.contains("p_sim2")) c.pSim2 = read_gaits(j["p_sim2"], "p_sim2");
  if (j.contains("p_real")) c.pReal = read_gaits(j["p_real"], "p_real");
  if (j.contains("i1")) c.i1 = read_int(j["i1"], "i1");
  if (j.contains("i2")) c.i2 = read_int(j["i2"], "i2");
  if (j.contains("i3")) c.i3 = read_int(j["i3"], "i3");
  if (j.contains("init_counts")) {
    const Eigen::Vector3d v = read_vec3(j["init_counts"], "init_counts");
    for (int k = 0; k < 3; ++k) {
      if (v[k] != std::floor(v[k])) throw ConfigError("init_counts must be integers");
      c.initCounts[static_cast<std::size_t>(k)] = static_cast<int>(v[k]);
    }
  }
  if (j.contains("gain_box")) {
    const Json& g = j["gain_box"];
    check_keys(g, {"kp_lower", "kp_upper", "kd_lower", "kd_upper"}, "gain_box");
    if (g.contains("kp_lower")) c.gainBox.kpLower = read_vec3(g["kp_lower"], "gain_box.kp_lower");
    if (g.contains("kp_upper")) c.gainBox.kpUpper = read_vec3(g["kp_upper"], "gain_box.kp_upper");
    if (g.contains("kd_lower")) c.gainBox.kdLower = read_vec3(g["kd_lower"], "gain_box.kd_lower");
    if (g.contains("kd_upper")) c.gainBox.kdUpper = read_vec3(g["kd_upper"], "gain_box.kd_upper");
  }
  if (j.contains("correction_box")) {
    const Json& g = j["correction_box"];
    check_keys(g, {"gain_fraction", "gain_floor", "offset_bound"}, "correction_box");
    if (g.contains("gain_fraction")) c.correctionBox.gainFraction = read_number(g["gain_fraction"], "gain_fraction");
    if (g.contains("gain_floor")) c.correctionBox.gainFloor = read_number(g["gain_floor"], "gain_floor");
    if (g.contains("offset_bound")) c.correctionBox.offsetBound = read_number(g["offset_bound"], "offset_bound");
  }
  if (j.contains("objective")) {
    const Json& o = j["objective"];
    check_keys(o, {"w1", "w2", "segment_duration", "fall_penalty"}, "objective");
    if (o.contains("w1")) c.objective.w1 = read_vec3(o["w1"], "objective.w1");
    if (o.contains("w2")) c.objective.w2 = read_vec3(o["w2"], "objective.w2");
    if (o.contains("segment_duration")) c.objective.segmentDuration = read_number(o["segment_duration"], "segment_duration");
    if (o.contains("fall_penalty")) c.objective.fallPenalty = read_number(o["fall_penalty"], "fall_penalty");
  }
  if (j.contains("constraint")) {
    const Json& o = j["constraint"];
    check_keys(o, {"tolerance"}, "constraint");
    if (o.contains("tolerance")) c.constraint.tolerance = read_number(o["tolerance"], "constraint.tolerance");
  }
  if (j.contains("sweep_grid")) {
    const Json& s = j["sweep_grid"];
    check_keys(s, {"vx", "vy", "h"}, "sweep_grid");
    if (s.contains("vx")) c.sweepGrid.vx = read_sweep_axis(s["vx"], "sweep_grid.vx");
    if (s.contains("vy")) c.sweepGrid.vy = read_sweep_axis(s["vy"], "sweep_grid.vy");
    if (s.contains("h")) c.sweepGrid.h = read_sweep_axis(s["h"], "sweep_grid.h");
  }
  if (j.contains("gamma")) c.gamma = read_number(j["gamma"], "gamma");
  if (j.contains("safe_vertices") && !j["safe_vertices"].is_null()) {
    const Json& v = j["safe_vertices"];
    if (!v.is_array()) throw ConfigError("safe_vertices must be an array of 3-vectors");
    std::vector<Eigen::Vector3d> pts;
    for (const auto& e : v) pts.push_back(read_vec3(e, "safe_vertices entry"));
    c.safeVertices = std::move(pts);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0)) {
      throw ConfigError("seed must be a non-negative integer");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("jobs")) c.jobs = read_int(j["jobs"], "jobs");
  c.deskScale = desk;

  try {
    c.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

Json config_to_json(const PipelineConfig& c) {
  auto gaits = [](const std::vector<GaitParameter>& v) {
    Json a = Json::array();
    for (const auto& p : v) a.push_back(gait_json(p));
    return a;
  };
  auto sweep_axis = [](const SweepAxis& a) { return Json::array({a.lo, a.hi, a.step}); };
  Json j{{"desk_scale", c.deskScale},
         {"grid", axes_json(c.grid)},
         {"p_sim1", gaits(c.pSim1)},
         {"p_sim2", gaits(c.pSim2)},
         {"p_real", gaits(c.pReal)},
         {"i1", c.i1},
         {"i2", c.i2},
         {"i3", c.i3},
         {"init_counts", c.initCounts},
         {"gain_box",
          {{"kp_lower", vec_json(c.gainBox.kpLower)},
           {"kp_upper", vec_json(c.gainBox.kpUpper)},
           {"kd_lower", vec_json(c.gainBox.kdLower)},
           {"kd_upper", vec_json(c.gainBox.kdUpper)}}},
         {"correction_box",
          {{"gain_fraction", c.correctionBox.gainFraction},
           {"gain_floor", c.correctionBox.gainFloor},
           {"offset_bound", c.correctionBox.offsetBound}}},
         {"objective",
          {{"w1", vec_json(c.objective.w1)},
           {"w2", vec_json(c.objective.w2)},
           {"segment_duration", c.objective.segmentDuration},
           {"fall_penalty", c.objective.fallPenalty}}},
         {"constraint", {{"tolerance", c.constraint.tolerance}}},
         {"sweep_grid",
          {{"vx", sweep_axis(c.sweepGrid.vx)},
           {"vy", sweep_axis(c.sweepGrid.vy)},
           {"h", sweep_axis(c.sweepGrid.h)}}},
         {"gamma", c.gamma},
         {"seed", c.seed},
         {"jobs", c.jobs}};
  if (c.safeVertices) {
    Json v = Json::array();
    for (const auto& p : *c.safeVertices) v.push_back(vec_json(p));
    j["safe_vertices"] = std::move(v);
  }
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "'");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::string gait_dirname(const GaitParameter& p) {
  char buf[96];
  // +0.0 avoids printing "-0.00".
  std::snprintf(buf, sizeof(buf), "vx%+.2f_vy%+.2f_h%.2f", p.vx + 0.0, p.vy + 0.0, p.h);
  return buf;
}

}  // namespace gaitbo
