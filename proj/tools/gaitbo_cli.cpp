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

// gaitbo command-line front end. Links only the C interface.
//
//   gaitbo learn-sim CONFIG         gain learning in simulation
//   gaitbo extract-safeset CONFIG   feasible-command sweep and safe polyhedron
//   gaitbo learn-real CONFIG        constrained correction learning on the real plant
//   gaitbo benchmark CONFIG         compare two tables by sweeping commands
//   gaitbo simulate CONFIG          single episode, trajectory CSV and cost
//
// Exit status: 0 on success, 2 for invalid configuration or arguments,
// 1 for any other failure. Failures print one line:
//   error <STATUS>: <message>

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaitbo/gaitbo.h"

namespace {

struct ConfigDeleter {
  void operator()(gb_config* p) const { gb_config_free(p); }
};
struct TableDeleter {
  void operator()(gb_table* p) const { gb_table_free(p); }
};
struct SafeSetDeleter {
  void operator()(gb_safeset* p) const { gb_safeset_free(p); }
};
using ConfigPtr = std::unique_ptr<gb_config, ConfigDeleter>;
using TablePtr = std::unique_ptr<gb_table, TableDeleter>;
using SafeSetPtr = std::unique_ptr<gb_safeset, SafeSetDeleter>;

class Failure {
 public:
  explicit Failure(gb_status status) : status_(status), message_(gb_last_error()) {}
  Failure(gb_status status, std::string message) : status_(status), message_(std::move(message)) {}
  gb_status status() const { return status_; }
  const std::string& message() const { return message_; }

 private:
  gb_status status_;
  std::string message_;
};

void check(gb_status s) {
  if (s != GB_OK) throw Failure(s);
}

int exit_code(gb_status s) {
  return (s == GB_ERR_CONFIG || s == GB_ERR_INVALID_ARGUMENT) ? 2 : 1;
}

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("config", o.config, "Pipeline configuration (JSON)")->required();
  cmd->add_option("--seed", o.seed, "Override the configured seed");
  cmd->add_option("--jobs", o.jobs, "Maximum worker threads");
  cmd->add_option("--out", o.out, "Override the output directory");
}

ConfigPtr load_config(const CommonOptions& o) {
  gb_config* raw = nullptr;
  const gb_status s = gb_config_load(o.config.c_str(), &raw);
  // A missing or unreadable config is a configuration error for the caller.
  if (s == GB_ERR_IO) throw Failure(GB_ERR_CONFIG, gb_last_error());
  check(s);
  ConfigPtr cfg(raw);
  if (o.seed) check(gb_config_set_seed(cfg.get(), *o.seed));
  if (o.jobs) check(gb_config_set_jobs(cfg.get(), *o.jobs));
  if (o.out) check(gb_config_set_output_dir(cfg.get(), o.out->c_str()));
  return cfg;
}

std::string out_path(const gb_config* cfg, const char* name) {
  return (std::filesystem::path(gb_config_output_dir(cfg)) / name).string();
}

// "zero", "random" or a JSON path.
TablePtr resolve_table(const gb_config* cfg, const std::string& spec) {
  gb_table* raw = nullptr;
  if (spec == "zero") {
    const double zero[3] = {0.0, 0.0, 0.0};
    check(gb_table_constant(cfg, zero, zero, zero, &raw));
  } else if (spec == "random") {
    check(gb_table_random(cfg, &raw));
  } else {
    check(gb_table_load(spec.c_str(), &raw));
  }
  return TablePtr(raw);
}

std::string pick(const std::string& flag, const gb_config* cfg, const char* key,
                 const std::string& fallback) {
  if (!flag.empty()) return flag;
  if (const char* v = gb_config_string(cfg, key)) return v;
  return fallback;
}

gb_plant parse_plant(const std::string& name) {
  gb_plant p = GB_PLANT_SIM;
  check(gb_plant_parse(name.c_str(), &p));
  return p;
}

std::vector<double> parse_command(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure(GB_ERR_INVALID_ARGUMENT, "command must be vx,vy,h; got '" + text + "'");
    }
  }
  if (v.size() != 3) throw Failure(GB_ERR_INVALID_ARGUMENT, "command must be vx,vy,h; got '" + text + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gain-scheduled PD parameter learning with constrained Bayesian optimization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gb_version());

  CommonOptions learn_sim_opts;
  CLI::App* learn_sim = app.add_subcommand("learn-sim", "Learn PD gains in simulation");
  add_common(learn_sim, learn_sim_opts);

  CommonOptions safeset_opts;
  std::string safeset_table;
  CLI::App* safeset = app.add_subcommand("extract-safeset", "Sweep commands and build the safe set");
  add_common(safeset, safeset_opts);
  safeset->add_option("--table", safeset_table, "Gain table (default <out>/gaintable_sim.json)");

  CommonOptions real_opts;
  std::string real_table;
  std::string real_safeset;
  CLI::App* learn_real = app.add_subcommand("learn-real", "Learn gain and offset corrections on the real plant");
  add_common(learn_real, real_opts);
  learn_real->add_option("--table", real_table, "Simulation gain table (default <out>/gaintable_sim.json)");
  learn_real->add_option("--safeset", real_safeset, "Safe set (default <out>/safeset.json)");

  CommonOptions bench_opts;
  std::string bench_a;
  std::string bench_b;
  std::string bench_plant;
  CLI::App* bench = app.add_subcommand("benchmark", "Compare two gain tables over the sweep grid");
  add_common(bench, bench_opts);
  bench->add_option("--table-a", bench_a, "First table: path, 'zero' or 'random' (default <out>/gaintable_sim.json)");
  bench->add_option("--table-b", bench_b, "Second table: path, 'zero' or 'random' (default random)");
  bench->add_option("--plant", bench_plant, "sim, real or ideal (default sim)");

  CommonOptions sim_opts;
  std::string sim_table;
  std::string sim_command;
  std::string sim_plant;
  std::string sim_csv;
  CLI::App* simulate = app.add_subcommand("simulate", "Run one episode and print its cost");
  add_common(simulate, sim_opts);
  simulate->add_option("--table", sim_table, "Table: path, 'zero' or 'random' (default <out>/gaintable_sim.json)");
  simulate->add_option("--command", sim_command, "Commanded gait vx,vy,h");
  simulate->add_option("--plant", sim_plant, "sim, real or ideal (default sim)");
  simulate->add_option("--csv", sim_csv, "Trajectory CSV path (default <out>/trajectory.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*learn_sim) {
      ConfigPtr cfg = load_config(learn_sim_opts);
      gb_table* raw = nullptr;
      check(gb_learn_sim(cfg.get(), &raw));
      TablePtr table(raw);
      long sim_evals = 0;
      long real_evals = 0;
      check(gb_config_budget(cfg.get(), &sim_evals, &real_evals));
      std::printf("learn-sim: %ld simulation evaluations, %zu table nodes -> %s\n", sim_evals,
                  gb_table_size(table.get()), out_path(cfg.get(), "gaintable_sim.json").c_str());
    } else if (*safeset) {
      ConfigPtr cfg = load_config(safeset_opts);
      TablePtr table = resolve_table(
          cfg.get(), pick(safeset_table, cfg.get(), "table", out_path(cfg.get(), "gaintable_sim.json")));
      gb_safeset* raw = nullptr;
      check(gb_extract_safeset(cfg.get(), table.get(), &raw));
      SafeSetPtr set(raw);
      std::printf("extract-safeset: %zu polyhedron vertices -> %s\n", gb_safeset_vertex_count(set.get()),
                  out_path(cfg.get(), "safeset.json").c_str());
    } else if (*learn_real) {
      ConfigPtr cfg = load_config(real_opts);
      TablePtr table = resolve_table(
          cfg.get(), pick(real_table, cfg.get(), "table", out_path(cfg.get(), "gaintable_sim.json")));
      const std::string set_path = real_safeset.empty() ? out_path(cfg.get(), "safeset.json") : real_safeset;
      gb_safeset* set_raw = nullptr;
      check(gb_safeset_load(set_path.c_str(), &set_raw));
      SafeSetPtr set(set_raw);
      gb_table* raw = nullptr;
      check(gb_learn_real(cfg.get(), table.get(), set.get(), &raw));
      TablePtr corrected(raw);
      long sim_evals = 0;
      long real_evals = 0;
      check(gb_config_budget(cfg.get(), &sim_evals, &real_evals));
      std::printf("learn-real: %ld real evaluations -> %s\n", real_evals,
                  out_path(cfg.get(), "gaintable_real.json").c_str());
    } else if (*bench) {
      ConfigPtr cfg = load_config(bench_opts);
      const std::string a = pick(bench_a, cfg.get(), "table_a", out_path(cfg.get(), "gaintable_sim.json"));
      const std::string b = pick(bench_b, cfg.get(), "table_b", "random");
      const gb_plant plant = parse_plant(pick(bench_plant, cfg.get(), "plant", "sim"));
      TablePtr ta = resolve_table(cfg.get(), a);
      TablePtr tb = resolve_table(cfg.get(), b);
      int fa = 0;
      int fb = 0;
      check(gb_benchmark(cfg.get(), ta.get(), tb.get(), plant, a.c_str(), b.c_str(), &fa, &fb));
      std::printf("benchmark: feasible commands %d (%s) vs %d (%s) -> %s\n", fa, a.c_str(), fb,
                  b.c_str(), out_path(cfg.get(), "benchmark.json").c_str());
    } else if (*simulate) {
      ConfigPtr cfg = load_config(sim_opts);
      double command[3];
      if (!sim_command.empty()) {
        const std::vector<double> v = parse_command(sim_command);
        for (int i = 0; i < 3; ++i) command[i] = v[static_cast<std::size_t>(i)];
      } else {
        check(gb_config_command(cfg.get(), command));
      }
      const gb_plant plant = parse_plant(pick(sim_plant, cfg.get(), "plant", "sim"));
      TablePtr table = resolve_table(
          cfg.get(), pick(sim_table, cfg.get(), "table", out_path(cfg.get(), "gaintable_sim.json")));
      const std::string csv = pick(sim_csv, cfg.get(), "csv", out_path(cfg.get(), "trajectory.csv"));
      const std::uint64_t seed = sim_opts.seed.value_or(0);
      double cost = 0.0;
      int fell = 0;
      check(gb_simulate(cfg.get(), table.get(), command, plant, seed, csv.c_str(), &cost, &fell));
      std::printf("cost %.10g\nfell %d\ncsv %s\n", cost, fell, csv.c_str());
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error %s: %s\n", gb_status_name(f.status()), f.message().c_str());
    return exit_code(f.status());
  }
  return 0;
}
