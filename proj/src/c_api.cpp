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

#include "gaitbo/gaitbo.h"

#include <array>
#include <exception>
#include <map>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "gaitbo/errors.hpp"
#include "gaitbo/pipeline.hpp"
#include "gaitbo/serialization.hpp"
#include "gaitbo/workflow.hpp"

struct gb_config {
  gaitbo::PipelineConfig pipeline;
  std::string output_dir = "out";
  std::map<std::string, std::string> strings;
  std::optional<std::array<double, 3>> command;
};

struct gb_table {
  gaitbo::GainTable table;
};

struct gb_safeset {
  gaitbo::SafePolyhedron poly;
};

namespace {

thread_local std::string g_last_error;

gb_status to_status(gaitbo::ErrorKind kind) {
  switch (kind) {
    case gaitbo::ErrorKind::kInvalidArgument:
      return GB_ERR_INVALID_ARGUMENT;
    case gaitbo::ErrorKind::kRange:
      return GB_ERR_RANGE;
    case gaitbo::ErrorKind::kConfig:
      return GB_ERR_CONFIG;
    case gaitbo::ErrorKind::kNumerical:
      return GB_ERR_NUMERICAL;
    case gaitbo::ErrorKind::kSimulation:
      return GB_ERR_SIMULATION;
    case gaitbo::ErrorKind::kSafeSet:
      return GB_ERR_SAFESET;
    case gaitbo::ErrorKind::kIo:
      return GB_ERR_IO;
  }
  return GB_ERR_INTERNAL;
}

gb_status fail(gb_status status, const std::string& message) {
  g_last_error = message;
  // Keep the message on one line for machine parsing.
  for (char& c : g_last_error) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return status;
}

template <typename Fn>
gb_status guarded(Fn&& fn) {
  try {
    fn();
    return GB_OK;
  } catch (const gaitbo::Error& e) {
    return fail(to_status(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(GB_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GB_ERR_INTERNAL, "unknown error");
  }
}

class NullArgument : public gaitbo::Error {
 public:
  explicit NullArgument(const char* name)
      : Error(gaitbo::ErrorKind::kInvalidArgument, std::string(name) + " must not be NULL") {}
};

template <typename T>
const T& need(const T* p, const char* name) {
  if (p == nullptr) throw NullArgument(name);
  return *p;
}

template <typename T>
T& need_mut(T* p, const char* name) {
  if (p == nullptr) throw NullArgument(name);
  return *p;
}

gaitbo::GaitParameter gait_from(const double p[3], const char* name) {
  if (p == nullptr) throw NullArgument(name);
  return gaitbo::GaitParameter::checked(p[0], p[1], p[2]);
}

gaitbo::PlantKind plant_kind(gb_plant plant) {
  switch (plant) {
    case GB_PLANT_SIM:
      return gaitbo::PlantKind::kSim;
    case GB_PLANT_REAL:
      return gaitbo::PlantKind::kReal;
    case GB_PLANT_IDEAL:
      return gaitbo::PlantKind::kIdeal;
  }
  throw gaitbo::Error(gaitbo::ErrorKind::kInvalidArgument, "unknown plant selector");
}

gb_config* config_from(const gaitbo::Json& j) {
  auto cfg = std::make_unique<gb_config>();
  cfg->pipeline = gaitbo::config_from_json(j);
  for (const char* key : {"output_dir", "plant", "table", "table_a", "table_b", "csv"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_string()) throw gaitbo::ConfigError(std::string(key) + " must be a string");
    cfg->strings[key] = j[key].get<std::string>();
  }
  if (cfg->strings.count("output_dir")) cfg->output_dir = cfg->strings["output_dir"];
  if (cfg->strings.count("plant")) gaitbo::parse_plant(cfg->strings["plant"]);
  if (j.contains("command")) {
    const auto& c = j["command"];
    if (!c.is_array() || c.size() != 3 || !c[0].is_number() || !c[1].is_number() ||
        !c[2].is_number()) {
      throw gaitbo::ConfigError("command must be [vx, vy, h]");
    }
    const double v[3] = {c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
    try {
      gaitbo::GaitParameter::checked(v[0], v[1], v[2]);
    } catch (const gaitbo::RangeError& e) {
      throw gaitbo::ConfigError(std::string("command: ") + e.what());
    }
    cfg->command = std::array<double, 3>{v[0], v[1], v[2]};
  }
  if (j.contains("verbosity") && !j["verbosity"].is_number_integer()) {
    throw gaitbo::ConfigError("verbosity must be an integer");
  }
  return cfg.release();
}

}  // namespace

extern "C" {

const char* gb_version(void) { return "0.1.0"; }

const char* gb_last_error(void) { return g_last_error.c_str(); }

const char* gb_status_name(gb_status status) {
  switch (status) {
    case GB_OK:
      return "GB_OK";
    case GB_ERR_INVALID_ARGUMENT:
      return "GB_ERR_INVALID_ARGUMENT";
    case GB_ERR_CONFIG:
      return "GB_ERR_CONFIG";
    case GB_ERR_RANGE:
      return "GB_ERR_RANGE";
    case GB_ERR_NUMERICAL:
      return "GB_ERR_NUMERICAL";
    case GB_ERR_SIMULATION:
      return "GB_ERR_SIMULATION";
    case GB_ERR_SAFESET:
      return "GB_ERR_SAFESET";
    case GB_ERR_IO:
      return "GB_ERR_IO";
    case GB_ERR_INTERNAL:
      return "GB_ERR_INTERNAL";
  }
  return "GB_ERR_UNKNOWN";
}

gb_status gb_config_load(const char* path, gb_config** out) {
  return guarded([&] {
    need_mut(out, "out") = nullptr;
    const gaitbo::Json j = gaitbo::read_json_file(&need(path, "path"));
    *out = config_from(j);
  });
}

gb_status gb_config_parse(const char* json_text, gb_config** out) {
  return guarded([&] {
    need_mut(out, "out") = nullptr;
    gaitbo::Json j;
    try {
      j = gaitbo::Json::parse(std::string(&need(json_text, "json_text")));
    } catch (const gaitbo::Json::exception& e) {
      throw gaitbo::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    *out = config_from(j);
  });
}

gb_status gb_config_default(int desk_scale, gb_config** out) {
  return guarded([&] {
    need_mut(out, "out") = nullptr;
    auto cfg = std::make_unique<gb_config>();
    cfg->pipeline = desk_scale ? gaitbo::PipelineConfig::desk() : gaitbo::PipelineConfig::full();
    *out = cfg.release();
  });
}

void gb_config_free(gb_config* cfg) { delete cfg; }

gb_status gb_config_set_seed(gb_config* cfg, uint64_t seed) {
  return guarded([&] { need_mut(cfg, "cfg").pipeline.seed = seed; });
}

gb_status gb_config_set_jobs(gb_config* cfg, int jobs) {
  return guarded([&] {
    if (jobs < 1) throw gaitbo::ConfigError("jobs must be at least 1");
    need_mut(cfg, "cfg").pipeline.jobs = jobs;
  });
}

gb_status gb_config_set_output_dir(gb_config* cfg, const char* dir) {
  return guarded([&] {
    const char* d = &need(dir, "dir");
    if (*d == '\0') throw gaitbo::ConfigError("output directory must not be empty");
    need_mut(cfg, "cfg").output_dir = d;
  });
}

const char* gb_config_output_dir(const gb_config* cfg) {
  return cfg == nullptr ? nullptr : cfg->output_dir.c_str();
}

const char* gb_config_string(const gb_config* cfg, const char* key) {
  if (cfg == nullptr || key == nullptr) return nullptr;
  const auto it = cfg->strings.find(key);
  return it == cfg->strings.end() ? nullptr : it->second.c_str();
}

gb_status gb_config_command(const gb_config* cfg, double command[3]) {
  return guarded([&] {
    const gb_config& c = need(cfg, "cfg");
    if (command == nullptr) throw NullArgument("command");
    if (!c.command) throw gaitbo::ConfigError("config has no command");
    for (int i = 0; i < 3; ++i) command[i] = (*c.command)[static_cast<std::size_t>(i)];
  });
}

gb_status gb_config_budget(const gb_config* cfg, long* sim_evaluations, long* real_evaluations) {
  return guarded([&] {
    const gb_config& c = need(cfg, "cfg");
    need_mut(sim_evaluations, "sim_evaluations") = c.pipeline.sim_evaluations();
    need_mut(real_evaluations, "real_evaluations") = c.pipeline.real_evaluations();
  });
}

gb_status gb_plant_parse(const char* name, gb_plant* out) {
  return guarded([&] {
    switch (gaitbo::parse_plant(&need(name, "name"))) {
      case gaitbo::PlantKind::kSim:
        need_mut(out, "out") = GB_PLANT_SIM;
        break;
      case gaitbo::PlantKind::kReal:
        need_mut(out, "out") = GB_PLANT_REAL;
        break;
      case gaitbo::PlantKind::kIdeal:
        need_mut(out, "out") = GB_PLANT_IDEAL;
        break;
    }
  });
}

gb_status gb_table_load(const char* path, gb_table** out) {
  return guarded([&] {
    need_mut(out, "out") = nullptr;
    const gaitbo::Json j = gaitbo::read_json_file(&need(path, "path"));
    *out = new gb_table{gaitbo::table_from_json(j)};
  });
}

gb_status gb_table_save(const gb_table* table, const char* path) {
  return guarded([&] {
    gaitbo::write_json_file(&need(path, "path"), gaitbo::table_to_json(need(table, "table").table));
  });
}

gb_status gb_table_constant(const gb_config* cfg, const double kp[3], const double kd[3],
                            const double delta_p[3], gb_table** out) {
  return guarded([&] {
    need_mut(out, "out") = nullptr;
    if (kp == nullptr || kd == nullptr || delta_p == nullptr) throw NullArgument("gain arrays");
    gaitbo::ControlParams c;
    c.kP << kp[0], kp[1], kp[2];
    c.kD << kd[0], kd[1], kd[2];
    c.deltaP << delta_p[0], delta_p[1], delta_p[2];
    *out = new gb_table{gaitbo::GainTable(need(cfg, "cfg").pipeline.grid, c)};
  });
}

gb_status gb_table_random(const gb_config* cfg, gb_table** out) {
  return guarded([&] {
    need_mut(out, "out") = nullptr;
    const gaitbo::PipelineConfig& p = need(cfg, "cfg").pipeline;
    const gaitbo::SeedSpec seed = gaitbo::SeedSpec{p.seed, 0}.child(6);
    *out = new gb_table{gaitbo::random_gain_table(p.grid, p.gainBox, seed)};
  });
}

gb_status gb_table_lookup(const gb_table* table, const double p[3], double kp[3], double kd[3],
                          double delta_p[3]) {
  return guarded([&] {
    if (kp == nullptr || kd == nullptr || delta_p == nullptr) throw NullArgument("output arrays");
    if (p == nullptr) throw NullArgument("p");
    const gaitbo::ControlParams c = need(table, "table").table.lookup({p[0], p[1], p[2]});
    for (int i = 0; i < 3; ++i) {
      kp[i] = c.kP[i];
      kd[i] = c.kD[i];
      delta_p[i] = c.deltaP[i];
    }
  });
}

size_t gb_table_size(const gb_table* table) { return table == nullptr ? 0 : table->table.size(); }

void gb_table_free(gb_table* table) { delete table; }

gb_status gb_safeset_load(const char* path, gb_safeset** out) {
  return guarded([&] {
    need_mut(out, "out") = nullptr;
    const gaitbo::Json j = gaitbo::read_json_file(&need(path, "path"));
    *out = new gb_safeset{gaitbo::polyhedron_from_json(j)};
  });
}

gb_status gb_safeset_save(const gb_safeset* set, const char* path) {
  return guarded([&] {
    gaitbo::write_json_file(&need(path, "path"),
                            gaitbo::polyhedron_to_json(need(set, "set").poly));
  });
}

gb_status gb_safeset_constraint_value(const gb_safeset* set, const double p[3], double* h) {
  return guarded([&] {
    if (p == nullptr) throw NullArgument("p");
    need_mut(h, "h") = gaitbo::constraint_value(need(set, "set").poly,
                                                Eigen::Vector3d(p[0], p[1], p[2]));
  });
}

size_t gb_safeset_vertex_count(const gb_safeset* set) {
  return set == nullptr ? 0 : set->poly.vertices().size();
}

void gb_safeset_free(gb_safeset* set) { delete set; }

gb_status gb_learn_sim(const gb_config* cfg, gb_table** out_table) {
  return guarded([&] {
    const gb_config& c = need(cfg, "cfg");
    if (out_table != nullptr) *out_table = nullptr;
    gaitbo::SimLearning r = gaitbo::stage_learn_sim(c.pipeline, c.output_dir);
    if (out_table != nullptr) *out_table = new gb_table{std::move(r.table)};
  });
}

gb_status gb_extract_safeset(const gb_config* cfg, const gb_table* sim_table,
                             gb_safeset** out_set) {
  return guarded([&] {
    const gb_config& c = need(cfg, "cfg");
    if (out_set != nullptr) *out_set = nullptr;
    gaitbo::SafePolyhedron poly =
        gaitbo::stage_extract_safeset(c.pipeline, need(sim_table, "sim_table").table, c.output_dir);
    if (out_set != nullptr) *out_set = new gb_safeset{std::move(poly)};
  });
}

gb_status gb_learn_real(const gb_config* cfg, const gb_table* sim_table, const gb_safeset* set,
                        gb_table** out_table) {
  return guarded([&] {
    const gb_config& c = need(cfg, "cfg");
    if (out_table != nullptr) *out_table = nullptr;
    gaitbo::RealLearning r = gaitbo::stage_learn_real(
        c.pipeline, need(sim_table, "sim_table").table, need(set, "set").poly, c.output_dir);
    if (out_table != nullptr) *out_table = new gb_table{std::move(r.table)};
  });
}

gb_status gb_benchmark(const gb_config* cfg, const gb_table* table_a, const gb_table* table_b,
                       gb_plant plant, const char* name_a, const char* name_b, int* feasible_a,
                       int* feasible_b) {
  return guarded([&] {
    const gb_config& c = need(cfg, "cfg");
    const gaitbo::BenchmarkReport r = gaitbo::stage_benchmark(
        c.pipeline, need(table_a, "table_a").table, need(table_b, "table_b").table,
        plant_kind(plant), name_a ? name_a : "a", name_b ? name_b : "b", c.output_dir);
    if (feasible_a != nullptr) *feasible_a = r.a.feasibleCount;
    if (feasible_b != nullptr) *feasible_b = r.b.feasibleCount;
  });
}

gb_status gb_simulate(const gb_config* cfg, const gb_table* table, const double command[3],
                      gb_plant plant, uint64_t seed, const char* csv_path, double* cost,
                      int* fell) {
  return guarded([&] {
    const gb_config& c = need(cfg, "cfg");
    const gaitbo::GaitParameter cmd = gait_from(command, "command");
    const gaitbo::PlantConfig pc = gaitbo::plant_config(plant_kind(plant));
    const gaitbo::CommandProfile profile = gaitbo::evaluation_profile(cmd);
    const gaitbo::Trajectory traj =
        gaitbo::run_episode(pc, need(table, "table").table, profile,
                            gaitbo::PlantState::at_rest(profile.at(0.0)), gaitbo::SeedSpec{seed, 0});
    const double value = gaitbo::evaluate_cost(traj, cmd, c.pipeline.objective);
    if (csv_path != nullptr) gaitbo::write_text_file(csv_path, gaitbo::trajectory_to_csv(traj));
    if (cost != nullptr) *cost = value;
    if (fell != nullptr) *fell = traj.fell ? 1 : 0;
  });
}

}  // extern "C"
