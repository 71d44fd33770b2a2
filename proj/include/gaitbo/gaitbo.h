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

/* C interface to gaitbo: gain-scheduled PD parameter learning with
 * constrained Bayesian optimization.
 *
 * Objects are opaque handles released with their *_free function. Every
 * fallible call returns a gb_status; on failure gb_last_error() returns a
 * one-line description that stays valid until the next failing call on the
 * same thread. Gait parameters and gain triples are passed as double[3] in
 * the order (vx, vy, h). */

#ifndef GAITBO_GAITBO_H_
#define GAITBO_GAITBO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GAITBO_BUILDING_SHARED)
#define GB_API __declspec(dllexport)
#else
#define GB_API __declspec(dllimport)
#endif
#else
#define GB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gb_status {
  GB_OK = 0,
  GB_ERR_INVALID_ARGUMENT = 1,
  GB_ERR_CONFIG = 2,
  GB_ERR_RANGE = 3,
  GB_ERR_NUMERICAL = 4,
  GB_ERR_SIMULATION = 5,
  GB_ERR_SAFESET = 6,
  GB_ERR_IO = 7,
  GB_ERR_INTERNAL = 8
} gb_status;

typedef enum gb_plant {
  GB_PLANT_SIM = 0,
  GB_PLANT_REAL = 1,
  GB_PLANT_IDEAL = 2 /* sim dynamics without disturbance or noise */
} gb_plant;

typedef struct gb_config gb_config;
typedef struct gb_table gb_table;
typedef struct gb_safeset gb_safeset;

GB_API const char* gb_version(void);
GB_API const char* gb_last_error(void);
/* Stable identifier such as "GB_ERR_CONFIG". */
GB_API const char* gb_status_name(gb_status status);

/* ---- configuration ---------------------------------------------------- */

GB_API gb_status gb_config_load(const char* path, gb_config** out);
GB_API gb_status gb_config_parse(const char* json_text, gb_config** out);
GB_API gb_status gb_config_default(int desk_scale, gb_config** out);
GB_API void gb_config_free(gb_config* cfg);

GB_API gb_status gb_config_set_seed(gb_config* cfg, uint64_t seed);
GB_API gb_status gb_config_set_jobs(gb_config* cfg, int jobs);
GB_API gb_status gb_config_set_output_dir(gb_config* cfg, const char* dir);
/* Defaults to "out" when the file does not set output_dir. */
GB_API const char* gb_config_output_dir(const gb_config* cfg);
/* Front-end string keys ("plant", "table", "table_a", "table_b", "csv");
 * NULL when absent. */
GB_API const char* gb_config_string(const gb_config* cfg, const char* key);
/* The "command" key; GB_ERR_CONFIG when absent. */
GB_API gb_status gb_config_command(const gb_config* cfg, double command[3]);
/* Black-box evaluations implied by the gait sets and budgets. */
GB_API gb_status gb_config_budget(const gb_config* cfg, long* sim_evaluations,
                                  long* real_evaluations);
GB_API gb_status gb_plant_parse(const char* name, gb_plant* out);

/* ---- gain tables ------------------------------------------------------ */

GB_API gb_status gb_table_load(const char* path, gb_table** out);
GB_API gb_status gb_table_save(const gb_table* table, const char* path);
/* Every node of the config grid holds the given parameters. */
GB_API gb_status gb_table_constant(const gb_config* cfg, const double kp[3], const double kd[3],
                                   const double delta_p[3], gb_table** out);
/* Baseline: gains drawn from the central half of the gain box. */
GB_API gb_status gb_table_random(const gb_config* cfg, gb_table** out);
GB_API gb_status gb_table_lookup(const gb_table* table, const double p[3], double kp[3],
                                 double kd[3], double delta_p[3]);
GB_API size_t gb_table_size(const gb_table* table);
GB_API void gb_table_free(gb_table* table);

/* ---- safe set --------------------------------------------------------- */

GB_API gb_status gb_safeset_load(const char* path, gb_safeset** out);
GB_API gb_status gb_safeset_save(const gb_safeset* set, const char* path);
/* h <= 0 iff p lies inside the polyhedron. */
GB_API gb_status gb_safeset_constraint_value(const gb_safeset* set, const double p[3], double* h);
GB_API size_t gb_safeset_vertex_count(const gb_safeset* set);
GB_API void gb_safeset_free(gb_safeset* set);

/* ---- pipeline stages (write artifacts under the output directory) ----- */

GB_API gb_status gb_learn_sim(const gb_config* cfg, gb_table** out_table);
GB_API gb_status gb_extract_safeset(const gb_config* cfg, const gb_table* sim_table,
                                    gb_safeset** out_set);
GB_API gb_status gb_learn_real(const gb_config* cfg, const gb_table* sim_table,
                               const gb_safeset* set, gb_table** out_table);
/* Writes benchmark.json. Either count pointer may be NULL. */
GB_API gb_status gb_benchmark(const gb_config* cfg, const gb_table* table_a,
                              const gb_table* table_b, gb_plant plant, const char* name_a,
                              const char* name_b, int* feasible_a, int* feasible_b);

/* One 20 s evaluation episode from stepping in place at the command height,
 * switching to `command` at t = 8 s. Writes the trajectory CSV when csv_path
 * is non-NULL; reports the episode cost and whether it fell. */
GB_API gb_status gb_simulate(const gb_config* cfg, const gb_table* table, const double command[3],
                             gb_plant plant, uint64_t seed, const char* csv_path, double* cost,
                             int* fell);

#ifdef __cplusplus
}
#endif

#endif /* GAITBO_GAITBO_H_ */
