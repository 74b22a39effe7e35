/*
 * Copyright 2026 The adalloc Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libadalloc.
 *
 * Objects are opaque handles created by *_create / *_parse / *_load and
 * released by the matching *_free (NULL is accepted). Every fallible call
 * returns an adalloc_status; on failure adalloc_last_error() describes the
 * problem for the calling thread until its next failing call. Strings
 * returned through char** are heap-allocated and released with
 * adalloc_string_free.
 */

#ifndef ADALLOC_ADALLOC_H_
#define ADALLOC_ADALLOC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ADALLOC_BUILDING)
#    define ADALLOC_API __declspec(dllexport)
#  else
#    define ADALLOC_API __declspec(dllimport)
#  endif
#else
#  define ADALLOC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adalloc_status {
  ADALLOC_OK = 0,
  ADALLOC_ERR_IO = 1,
  ADALLOC_ERR_PARSE = 2,
  ADALLOC_ERR_VALIDATION = 3,
  ADALLOC_ERR_LIMIT = 4,
  ADALLOC_ERR_SOLVER_ABORT = 5,
  ADALLOC_ERR_NULL_ARGUMENT = 6,
  ADALLOC_ERR_INTERNAL = 7
} adalloc_status;

/* Attention limit meaning "no limit". */
#define ADALLOC_UNBOUNDED UINT32_MAX

typedef struct adalloc_graph adalloc_graph;
typedef struct adalloc_campaign adalloc_campaign;
typedef struct adalloc_constraints adalloc_constraints;
typedef struct adalloc_model adalloc_model;
typedef struct adalloc_result adalloc_result;

ADALLOC_API const char* adalloc_version(void);
/* "ok", "io", "parse", "validation", "limit", "solver", "null_argument",
 * "internal". */
ADALLOC_API const char* adalloc_status_kind(adalloc_status status);
ADALLOC_API const char* adalloc_last_error(void);
ADALLOC_API void adalloc_string_free(char* s);

/* ---- graphs ------------------------------------------------------------ */

ADALLOC_API adalloc_status adalloc_graph_parse(const char* text,
                                               adalloc_graph** out);
ADALLOC_API adalloc_status adalloc_graph_load(const char* path,
                                              adalloc_graph** out);
/* kind: "chain", "star", "erdos-renyi" or "isolated". density applies to
 * erdos-renyi only; pass a negative value for the default. */
ADALLOC_API adalloc_status adalloc_graph_generate(const char* kind,
                                                  uint32_t num_users,
                                                  uint32_t num_ads,
                                                  double prob, uint64_t seed,
                                                  double density,
                                                  adalloc_graph** out);
/* Adds the reverse arc of every edge (undirected input). */
ADALLOC_API adalloc_status adalloc_graph_symmetrize(const adalloc_graph* g,
                                                    adalloc_graph** out);
ADALLOC_API adalloc_status adalloc_graph_serialize(const adalloc_graph* g,
                                                   char** out);
ADALLOC_API uint32_t adalloc_graph_num_users(const adalloc_graph* g);
ADALLOC_API uint32_t adalloc_graph_num_ads(const adalloc_graph* g);
ADALLOC_API size_t adalloc_graph_num_edges(const adalloc_graph* g);
ADALLOC_API void adalloc_graph_free(adalloc_graph* g);

/* ---- campaigns --------------------------------------------------------- */

ADALLOC_API adalloc_status adalloc_campaign_parse(const char* text,
                                                  adalloc_campaign** out);
ADALLOC_API adalloc_status adalloc_campaign_load(const char* path,
                                                 adalloc_campaign** out);
ADALLOC_API adalloc_status adalloc_campaign_create(const double* alpha,
                                                   const double* budget,
                                                   uint32_t num_ads,
                                                   adalloc_campaign** out);
ADALLOC_API uint32_t adalloc_campaign_num_ads(const adalloc_campaign* c);
ADALLOC_API void adalloc_campaign_free(adalloc_campaign* c);

/* ---- attention constraints -------------------------------------------- */

ADALLOC_API adalloc_status adalloc_constraints_uniform(
    uint32_t num_users, uint32_t kappa, uint32_t total_limit,
    adalloc_constraints** out);
ADALLOC_API adalloc_status adalloc_constraints_parse(
    const char* text, uint32_t num_users, adalloc_constraints** out);
ADALLOC_API adalloc_status adalloc_constraints_load(
    const char* path, uint32_t num_users, adalloc_constraints** out);
ADALLOC_API adalloc_status adalloc_constraints_set_total(
    adalloc_constraints* c, uint32_t total_limit);
ADALLOC_API void adalloc_constraints_free(adalloc_constraints* c);

/* ---- model: inputs plus a fixed spread estimator ----------------------- */

typedef struct adalloc_spread_options {
  uint32_t samples; /* live-edge realizations per ad (default 10000) */
  uint64_t seed;    /* master seed (default 1) */
  int exact;        /* nonzero: enumerate live-edge patterns (<= 15 edges/ad) */
} adalloc_spread_options;

ADALLOC_API void adalloc_spread_options_init(adalloc_spread_options* o);

/* Copies the inputs. Fails with ADALLOC_ERR_VALIDATION when the campaign and
 * graph disagree on the number of ads or constraints on the number of
 * users. */
ADALLOC_API adalloc_status adalloc_model_create(
    const adalloc_graph* graph, const adalloc_campaign* campaign,
    const adalloc_constraints* constraints,
    const adalloc_spread_options* options, adalloc_model** out);
ADALLOC_API void adalloc_model_free(adalloc_model* m);

ADALLOC_API adalloc_status adalloc_model_spread(const adalloc_model* m,
                                                uint32_t ad,
                                                const uint32_t* seeds,
                                                size_t num_seeds, double* out);

typedef struct adalloc_penalty {
  double lambda1;
  double lambda2;
  double phi;
  int phi_auto; /* nonzero: phi is computed from the instance */
} adalloc_penalty;

ADALLOC_API void adalloc_penalty_init(adalloc_penalty* p);
ADALLOC_API adalloc_status adalloc_model_auto_phi(const adalloc_model* m,
                                                  const adalloc_penalty* p,
                                                  double* out);

/* ---- solving ----------------------------------------------------------- */

typedef enum adalloc_problem {
  ADALLOC_PROBLEM_RMP = 0,
  ADALLOC_PROBLEM_P1 = 1,
  ADALLOC_PROBLEM_URMP = 2,
  ADALLOC_PROBLEM_P2 = 3
} adalloc_problem;

typedef enum adalloc_objective {
  ADALLOC_OBJECTIVE_U = 0,
  ADALLOC_OBJECTIVE_V = 1,
  ADALLOC_OBJECTIVE_F = 2,
  ADALLOC_OBJECTIVE_FPRIME = 3
} adalloc_objective;

typedef struct adalloc_solve_options {
  adalloc_problem problem;
  adalloc_penalty penalty;
  uint64_t seed;  /* randomized solvers */
  int lazy;       /* greedy: lazy re-evaluation (default 1) */
  int strict;     /* greedy: keep adding zero-gain pairs (default 0) */
} adalloc_solve_options;

ADALLOC_API void adalloc_solve_options_init(adalloc_solve_options* o);
ADALLOC_API adalloc_status adalloc_problem_from_name(const char* name,
                                                     adalloc_problem* out);
ADALLOC_API adalloc_status adalloc_objective_from_name(const char* name,
                                                       adalloc_objective* out);

/* ADALLOC_ERR_SOLVER_ABORT when a user-supplied phi lets f' go negative. */
ADALLOC_API adalloc_status adalloc_solve(const adalloc_model* m,
                                         const adalloc_solve_options* o,
                                         adalloc_result** out);

/* Exhaustive maximizer; users * ads must be <= 16. use_constraints filters
 * by the attention limits. */
ADALLOC_API adalloc_status adalloc_oracle(const adalloc_model* m,
                                          adalloc_objective objective,
                                          int use_constraints,
                                          const adalloc_penalty* p,
                                          adalloc_result** out);

typedef struct adalloc_objectives {
  double U, V, regret, C, C_plus, f, f_prime, phi;
} adalloc_objectives;

ADALLOC_API uint32_t adalloc_result_num_ads(const adalloc_result* r);
ADALLOC_API size_t adalloc_result_num_seeds(const adalloc_result* r,
                                            uint32_t ad);
/* Copies up to `capacity` seeds of `ad` (ascending) and reports the count. */
ADALLOC_API adalloc_status adalloc_result_seeds(const adalloc_result* r,
                                                uint32_t ad, uint32_t* buffer,
                                                size_t capacity,
                                                size_t* written);
ADALLOC_API adalloc_status adalloc_result_objectives(const adalloc_result* r,
                                                     adalloc_objectives* out);
ADALLOC_API adalloc_status adalloc_result_json(const adalloc_result* r,
                                               char** out);
ADALLOC_API adalloc_status adalloc_result_csv(const adalloc_result* r,
                                              char** out);
ADALLOC_API void adalloc_result_free(adalloc_result* r);

/* ---- evaluation -------------------------------------------------------- */

typedef enum adalloc_format {
  ADALLOC_FORMAT_JSON = 0,
  ADALLOC_FORMAT_CSV = 1
} adalloc_format;

/* allocation_json: per-ad user lists, a solve result, or {"matrix": X}. */
ADALLOC_API adalloc_status adalloc_evaluate(const adalloc_model* m,
                                            const char* allocation_json,
                                            const adalloc_penalty* p,
                                            adalloc_format format, char** out);

/* ---- certification ----------------------------------------------------- */

typedef struct adalloc_certify_options {
  adalloc_problem problem;
  uint32_t instances;
  uint32_t trials;
  uint64_t seed;
  uint32_t max_users;
  uint32_t max_ads;
  uint32_t threads; /* 0 = hardware concurrency */
} adalloc_certify_options;

ADALLOC_API void adalloc_certify_options_init(adalloc_certify_options* o);
ADALLOC_API adalloc_status adalloc_certify(const adalloc_certify_options* o,
                                           char** report_json, int* passed);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* ADALLOC_ADALLOC_H_ */
