// Copyright 2026 The adalloc Authors.
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

#include "adalloc/adalloc.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "adalloc/certify.hpp"
#include "adalloc/error.hpp"
#include "adalloc/feasibility.hpp"
#include "adalloc/model.hpp"
#include "adalloc/objectives.hpp"
#include "adalloc/propagation.hpp"
#include "adalloc/serialize.hpp"
#include "adalloc/solvers.hpp"

struct adalloc_graph {
  adalloc::HyperSocialGraph graph;
};

struct adalloc_campaign {
  adalloc::Campaign campaign;
};

struct adalloc_constraints {
  adalloc::AttentionConstraints constraints;
};

struct adalloc_model {
  adalloc::HyperSocialGraph graph;
  adalloc::Campaign campaign;
  adalloc::AttentionConstraints constraints;
  adalloc_spread_options spread_options;
  std::unique_ptr<adalloc::SpreadEstimator> spread;
};

struct adalloc_result {
  adalloc::SolveResult result;
  std::uint32_t num_users = 0;
  adalloc::Json extra_params;
};

namespace {

using adalloc::Error;
using adalloc::ErrorKind;

thread_local std::string g_last_error;

adalloc_status StatusFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo:
      return ADALLOC_ERR_IO;
    case ErrorKind::kParse:
      return ADALLOC_ERR_PARSE;
    case ErrorKind::kValidation:
      return ADALLOC_ERR_VALIDATION;
    case ErrorKind::kLimit:
      return ADALLOC_ERR_LIMIT;
    case ErrorKind::kSolverAbort:
      return ADALLOC_ERR_SOLVER_ABORT;
    case ErrorKind::kInternal:
      return ADALLOC_ERR_INTERNAL;
  }
  return ADALLOC_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
adalloc_status Guard(Body&& body) {
  try {
    body();
    return ADALLOC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return StatusFor(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ADALLOC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ADALLOC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return ADALLOC_ERR_INTERNAL;
  }
}

// NULL-argument failures get their own status.
#define ADALLOC_REQUIRE(p)                                  \
  do {                                                      \
    if ((p) == nullptr) {                                   \
      g_last_error = std::string(#p) + " is NULL";          \
      return ADALLOC_ERR_NULL_ARGUMENT;                     \
    }                                                       \
  } while (0)

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

adalloc::PenaltyParams ResolvePenalty(const adalloc_model& m,
                                      const adalloc_penalty* p) {
  adalloc::PenaltyParams params;
  if (p == nullptr) return params;
  params.lambda1 = p->lambda1;
  params.lambda2 = p->lambda2;
  params.phi = 0.0;
  params.Validate();
  params.phi = p->phi_auto ? adalloc::AutoPhi(m.campaign, m.constraints, params,
                                              *m.spread)
                           : p->phi;
  params.Validate();
  return params;
}

adalloc::Json SpreadParams(const adalloc_model& m) {
  adalloc::Json j;
  j["spread"] = m.spread_options.exact ? "exact" : "ensemble";
  if (!m.spread_options.exact) j["samples"] = m.spread_options.samples;
  j["spread_seed"] = m.spread_options.seed;
  return j;
}

adalloc::Problem ToProblem(adalloc_problem p) {
  switch (p) {
    case ADALLOC_PROBLEM_RMP:
      return adalloc::Problem::kRmp;
    case ADALLOC_PROBLEM_P1:
      return adalloc::Problem::kP1;
    case ADALLOC_PROBLEM_URMP:
      return adalloc::Problem::kUrmp;
    case ADALLOC_PROBLEM_P2:
      return adalloc::Problem::kP2;
  }
  throw Error(ErrorKind::kValidation, "unknown problem code");
}

adalloc::Objective ToObjective(adalloc_objective o) {
  switch (o) {
    case ADALLOC_OBJECTIVE_U:
      return adalloc::Objective::kU;
    case ADALLOC_OBJECTIVE_V:
      return adalloc::Objective::kV;
    case ADALLOC_OBJECTIVE_F:
      return adalloc::Objective::kF;
    case ADALLOC_OBJECTIVE_FPRIME:
      return adalloc::Objective::kFPrime;
  }
  throw Error(ErrorKind::kValidation, "unknown objective code");
}

}  // namespace

extern "C" {

const char* adalloc_version(void) { return "1.0.0"; }

const char* adalloc_status_kind(adalloc_status status) {
  switch (status) {
    case ADALLOC_OK:
      return "ok";
    case ADALLOC_ERR_IO:
      return "io";
    case ADALLOC_ERR_PARSE:
      return "parse";
    case ADALLOC_ERR_VALIDATION:
      return "validation";
    case ADALLOC_ERR_LIMIT:
      return "limit";
    case ADALLOC_ERR_SOLVER_ABORT:
      return "solver";
    case ADALLOC_ERR_NULL_ARGUMENT:
      return "null_argument";
    case ADALLOC_ERR_INTERNAL:
      return "internal";
  }
  return "internal";
}

const char* adalloc_last_error(void) { return g_last_error.c_str(); }

void adalloc_string_free(char* s) { std::free(s); }

// ---- graphs ----------------------------------------------------------------

adalloc_status adalloc_graph_parse(const char* text, adalloc_graph** out) {
  ADALLOC_REQUIRE(text);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    *out = new adalloc_graph{adalloc::ParseGraph(std::string_view(text))};
  });
}

adalloc_status adalloc_graph_load(const char* path, adalloc_graph** out) {
  ADALLOC_REQUIRE(path);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    const std::string text = adalloc::ReadFile(path);
    *out = new adalloc_graph{adalloc::ParseGraph(std::string_view(text))};
  });
}

adalloc_status adalloc_graph_generate(const char* kind, uint32_t num_users,
                                      uint32_t num_ads, double prob,
                                      uint64_t seed, double density,
                                      adalloc_graph** out) {
  ADALLOC_REQUIRE(kind);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    *out = new adalloc_graph{adalloc::GenerateSynthetic(
        adalloc::ParseGraphKind(kind), num_users, num_ads, prob, seed,
        density < 0.0 ? adalloc::kErdosRenyiDensity : density)};
  });
}

adalloc_status adalloc_graph_symmetrize(const adalloc_graph* g,
                                        adalloc_graph** out) {
  ADALLOC_REQUIRE(g);
  ADALLOC_REQUIRE(out);
  return Guard([&] { *out = new adalloc_graph{adalloc::Symmetrize(g->graph)}; });
}

adalloc_status adalloc_graph_serialize(const adalloc_graph* g, char** out) {
  ADALLOC_REQUIRE(g);
  ADALLOC_REQUIRE(out);
  return Guard([&] { *out = CopyString(adalloc::SerializeGraph(g->graph)); });
}

uint32_t adalloc_graph_num_users(const adalloc_graph* g) {
  return g ? g->graph.num_users() : 0;
}

uint32_t adalloc_graph_num_ads(const adalloc_graph* g) {
  return g ? g->graph.num_ads() : 0;
}

size_t adalloc_graph_num_edges(const adalloc_graph* g) {
  return g ? g->graph.num_edges() : 0;
}

void adalloc_graph_free(adalloc_graph* g) { delete g; }

// ---- campaigns -------------------------------------------------------------

adalloc_status adalloc_campaign_parse(const char* text,
                                      adalloc_campaign** out) {
  ADALLOC_REQUIRE(text);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    *out = new adalloc_campaign{adalloc::ParseCampaign(std::string_view(text))};
  });
}

adalloc_status adalloc_campaign_load(const char* path,
                                     adalloc_campaign** out) {
  ADALLOC_REQUIRE(path);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    const std::string text = adalloc::ReadFile(path);
    *out = new adalloc_campaign{adalloc::ParseCampaign(std::string_view(text))};
  });
}

adalloc_status adalloc_campaign_create(const double* alpha,
                                       const double* budget, uint32_t num_ads,
                                       adalloc_campaign** out) {
  ADALLOC_REQUIRE(out);
  if (num_ads > 0) {
    ADALLOC_REQUIRE(alpha);
    ADALLOC_REQUIRE(budget);
  }
  return Guard([&] {
    std::vector<adalloc::Advertiser> ads(num_ads);
    for (uint32_t i = 0; i < num_ads; ++i) ads[i] = {alpha[i], budget[i]};
    *out = new adalloc_campaign{adalloc::Campaign(std::move(ads))};
  });
}

uint32_t adalloc_campaign_num_ads(const adalloc_campaign* c) {
  return c ? c->campaign.num_ads() : 0;
}

void adalloc_campaign_free(adalloc_campaign* c) { delete c; }

// ---- constraints -----------------------------------------------------------

adalloc_status adalloc_constraints_uniform(uint32_t num_users, uint32_t kappa,
                                           uint32_t total_limit,
                                           adalloc_constraints** out) {
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    *out = new adalloc_constraints{
        adalloc::AttentionConstraints::Uniform(num_users, kappa, total_limit)};
  });
}

adalloc_status adalloc_constraints_parse(const char* text, uint32_t num_users,
                                         adalloc_constraints** out) {
  ADALLOC_REQUIRE(text);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    *out = new adalloc_constraints{
        adalloc::ParseConstraints(std::string_view(text), num_users)};
  });
}

adalloc_status adalloc_constraints_load(const char* path, uint32_t num_users,
                                        adalloc_constraints** out) {
  ADALLOC_REQUIRE(path);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    const std::string text = adalloc::ReadFile(path);
    *out = new adalloc_constraints{
        adalloc::ParseConstraints(std::string_view(text), num_users)};
  });
}

adalloc_status adalloc_constraints_set_total(adalloc_constraints* c,
                                             uint32_t total_limit) {
  ADALLOC_REQUIRE(c);
  c->constraints.total_limit = total_limit;
  return ADALLOC_OK;
}

void adalloc_constraints_free(adalloc_constraints* c) { delete c; }

// ---- model -----------------------------------------------------------------

void adalloc_spread_options_init(adalloc_spread_options* o) {
  if (o == nullptr) return;
  o->samples = 10000;
  o->seed = 1;
  o->exact = 0;
}

adalloc_status adalloc_model_create(const adalloc_graph* graph,
                                    const adalloc_campaign* campaign,
                                    const adalloc_constraints* constraints,
                                    const adalloc_spread_options* options,
                                    adalloc_model** out) {
  ADALLOC_REQUIRE(graph);
  ADALLOC_REQUIRE(campaign);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    auto m = std::make_unique<adalloc_model>();
    m->graph = graph->graph;
    m->campaign = campaign->campaign;
    if (m->campaign.num_ads() != m->graph.num_ads())
      throw Error(ErrorKind::kValidation,
                  "campaign has " + std::to_string(m->campaign.num_ads()) +
                      " ads but the graph has " +
                      std::to_string(m->graph.num_ads()));
    m->constraints =
        constraints ? constraints->constraints
                    : adalloc::AttentionConstraints::Uniform(
                          m->graph.num_users(), adalloc::kUnbounded,
                          adalloc::kUnbounded);
    m->constraints.Validate(m->graph.num_users());
    adalloc_spread_options_init(&m->spread_options);
    if (options) m->spread_options = *options;
    if (m->spread_options.exact) {
      m->spread = std::make_unique<adalloc::ExactSpread>(m->graph);
    } else {
      m->spread = std::make_unique<adalloc::LiveEdgeEnsemble>(
          adalloc::LiveEdgeEnsemble::Sample(m->graph, m->spread_options.samples,
                                            m->spread_options.seed));
    }
    *out = m.release();
  });
}

void adalloc_model_free(adalloc_model* m) { delete m; }

adalloc_status adalloc_model_spread(const adalloc_model* m, uint32_t ad,
                                    const uint32_t* seeds, size_t num_seeds,
                                    double* out) {
  ADALLOC_REQUIRE(m);
  ADALLOC_REQUIRE(out);
  if (num_seeds > 0) ADALLOC_REQUIRE(seeds);
  return Guard([&] {
    if (ad >= m->graph.num_ads())
      throw Error(ErrorKind::kValidation, "ad index out of range");
    adalloc::Allocation single(m->graph.num_ads());
    single.set_seeds(ad, adalloc::SeedSet(seeds, seeds + num_seeds));
    single.Validate(m->graph.num_users(), m->graph.num_ads());
    *out = m->spread->Spread(ad, single.seeds(ad));
  });
}

void adalloc_penalty_init(adalloc_penalty* p) {
  if (p == nullptr) return;
  p->lambda1 = 0.0;
  p->lambda2 = 0.0;
  p->phi = 0.0;
  p->phi_auto = 1;
}

adalloc_status adalloc_model_auto_phi(const adalloc_model* m,
                                      const adalloc_penalty* p, double* out) {
  ADALLOC_REQUIRE(m);
  ADALLOC_REQUIRE(p);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    adalloc_penalty auto_p = *p;
    auto_p.phi_auto = 1;
    *out = ResolvePenalty(*m, &auto_p).phi;
  });
}

// ---- solving ---------------------------------------------------------------

void adalloc_solve_options_init(adalloc_solve_options* o) {
  if (o == nullptr) return;
  o->problem = ADALLOC_PROBLEM_RMP;
  adalloc_penalty_init(&o->penalty);
  o->seed = 1;
  o->lazy = 1;
  o->strict = 0;
}

adalloc_status adalloc_problem_from_name(const char* name,
                                         adalloc_problem* out) {
  ADALLOC_REQUIRE(name);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    switch (adalloc::ParseProblem(name)) {
      case adalloc::Problem::kRmp:
        *out = ADALLOC_PROBLEM_RMP;
        break;
      case adalloc::Problem::kP1:
        *out = ADALLOC_PROBLEM_P1;
        break;
      case adalloc::Problem::kUrmp:
        *out = ADALLOC_PROBLEM_URMP;
        break;
      case adalloc::Problem::kP2:
        *out = ADALLOC_PROBLEM_P2;
        break;
      case adalloc::Problem::kOracle:
        throw Error(ErrorKind::kValidation, "oracle is not a solver problem");
    }
  });
}

adalloc_status adalloc_objective_from_name(const char* name,
                                           adalloc_objective* out) {
  ADALLOC_REQUIRE(name);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    switch (adalloc::ParseObjective(name)) {
      case adalloc::Objective::kU:
        *out = ADALLOC_OBJECTIVE_U;
        break;
      case adalloc::Objective::kV:
        *out = ADALLOC_OBJECTIVE_V;
        break;
      case adalloc::Objective::kF:
        *out = ADALLOC_OBJECTIVE_F;
        break;
      case adalloc::Objective::kFPrime:
        *out = ADALLOC_OBJECTIVE_FPRIME;
        break;
    }
  });
}

adalloc_status adalloc_solve(const adalloc_model* m,
                             const adalloc_solve_options* o,
                             adalloc_result** out) {
  ADALLOC_REQUIRE(m);
  ADALLOC_REQUIRE(o);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    const adalloc::Problem problem = ToProblem(o->problem);
    const adalloc::PenaltyParams params = ResolvePenalty(*m, &o->penalty);
    adalloc::GreedyOptions greedy;
    greedy.lazy = o->lazy != 0;
    greedy.stop_on_nonpositive_gain = o->strict == 0;
    greedy.report_params = params;

    auto r = std::make_unique<adalloc_result>();
    r->num_users = m->graph.num_users();
    switch (problem) {
      case adalloc::Problem::kRmp:
        r->result = adalloc::GreedyRmp(*m->spread, m->campaign, m->constraints,
                                       greedy);
        break;
      case adalloc::Problem::kP1:
        r->result = adalloc::GreedyP1(*m->spread, m->campaign, m->constraints,
                                      greedy);
        break;
      case adalloc::Problem::kUrmp:
        r->result = adalloc::DoubleGreedyUrmp(*m->spread, m->campaign,
                                              m->constraints, params, o->seed);
        break;
      case adalloc::Problem::kP2:
        r->result = adalloc::GreedyP2(*m->spread, m->campaign, m->constraints,
                                      params, o->seed);
        break;
      case adalloc::Problem::kOracle:
        break;
    }
    r->result.rng_seed = o->seed;
    r->extra_params = SpreadParams(*m);
    r->extra_params["phi_auto"] = o->penalty.phi_auto != 0;
    if (problem == adalloc::Problem::kRmp || problem == adalloc::Problem::kP1) {
      r->extra_params["lazy"] = greedy.lazy;
      r->extra_params["strict"] = !greedy.stop_on_nonpositive_gain;
    }
    *out = r.release();
  });
}

adalloc_status adalloc_oracle(const adalloc_model* m,
                              adalloc_objective objective, int use_constraints,
                              const adalloc_penalty* p, adalloc_result** out) {
  ADALLOC_REQUIRE(m);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    const adalloc::PenaltyParams params = ResolvePenalty(*m, p);
    auto r = std::make_unique<adalloc_result>();
    r->num_users = m->graph.num_users();
    r->result = adalloc::BruteForceOpt(
        ToObjective(objective), *m->spread, m->campaign,
        use_constraints ? &m->constraints : nullptr, m->constraints, params);
    r->extra_params = SpreadParams(*m);
    r->extra_params["constrained"] = use_constraints != 0;
    r->extra_params["phi_auto"] = p != nullptr && p->phi_auto != 0;
    *out = r.release();
  });
}

uint32_t adalloc_result_num_ads(const adalloc_result* r) {
  return r ? r->result.allocation.num_ads() : 0;
}

size_t adalloc_result_num_seeds(const adalloc_result* r, uint32_t ad) {
  if (r == nullptr || ad >= r->result.allocation.num_ads()) return 0;
  return r->result.allocation.seeds(ad).size();
}

adalloc_status adalloc_result_seeds(const adalloc_result* r, uint32_t ad,
                                    uint32_t* buffer, size_t capacity,
                                    size_t* written) {
  ADALLOC_REQUIRE(r);
  ADALLOC_REQUIRE(written);
  if (capacity > 0) ADALLOC_REQUIRE(buffer);
  return Guard([&] {
    if (ad >= r->result.allocation.num_ads())
      throw Error(ErrorKind::kValidation, "ad index out of range");
    const auto& seeds = r->result.allocation.seeds(ad);
    const size_t n = std::min(capacity, seeds.size());
    std::copy_n(seeds.begin(), n, buffer);
    *written = n;
  });
}

adalloc_status adalloc_result_objectives(const adalloc_result* r,
                                         adalloc_objectives* out) {
  ADALLOC_REQUIRE(r);
  ADALLOC_REQUIRE(out);
  const adalloc::ObjectiveReport& rep = r->result.report;
  *out = {rep.U, rep.V, rep.regret, rep.C, rep.C_plus, rep.f, rep.f_prime,
          rep.phi};
  return ADALLOC_OK;
}

adalloc_status adalloc_result_json(const adalloc_result* r, char** out) {
  ADALLOC_REQUIRE(r);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    adalloc::Json j = adalloc::SolveResultToJson(r->result, r->num_users);
    for (const auto& [key, value] : r->extra_params.items())
      j["params"][key] = value;
    *out = CopyString(j.dump(2) + "\n");
  });
}

adalloc_status adalloc_result_csv(const adalloc_result* r, char** out) {
  ADALLOC_REQUIRE(r);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    *out = CopyString(
        adalloc::ReportToCsv(r->result.report, r->result.allocation));
  });
}

void adalloc_result_free(adalloc_result* r) { delete r; }

// ---- evaluation ------------------------------------------------------------

adalloc_status adalloc_evaluate(const adalloc_model* m,
                                const char* allocation_json,
                                const adalloc_penalty* p,
                                adalloc_format format, char** out) {
  ADALLOC_REQUIRE(m);
  ADALLOC_REQUIRE(allocation_json);
  ADALLOC_REQUIRE(out);
  return Guard([&] {
    const adalloc::Allocation alloc =
        adalloc::AllocationFromJsonText(allocation_json);
    const adalloc::PenaltyParams params = ResolvePenalty(*m, p);
    const adalloc::ObjectiveReport report = adalloc::Evaluate(
        alloc, m->campaign, m->constraints, params, *m->spread);
    if (format == ADALLOC_FORMAT_CSV) {
      *out = CopyString(adalloc::ReportToCsv(report, alloc));
      return;
    }
    adalloc::Json j =
        adalloc::ReportToJson(report, params, m->graph.num_users());
    j["feasible"] = adalloc::IsIndependent(alloc, m->constraints);
    j["allocation"] = adalloc::AllocationToJson(alloc);
    *out = CopyString(j.dump(2) + "\n");
  });
}

// ---- certification ---------------------------------------------------------

void adalloc_certify_options_init(adalloc_certify_options* o) {
  if (o == nullptr) return;
  const adalloc::CertifyOptions defaults;
  o->problem = ADALLOC_PROBLEM_RMP;
  o->instances = defaults.instances;
  o->trials = defaults.trials;
  o->seed = defaults.seed;
  o->max_users = defaults.max_users;
  o->max_ads = defaults.max_ads;
  o->threads = defaults.threads;
}

adalloc_status adalloc_certify(const adalloc_certify_options* o,
                               char** report_json, int* passed) {
  ADALLOC_REQUIRE(o);
  ADALLOC_REQUIRE(report_json);
  return Guard([&] {
    adalloc::CertifyOptions opts;
    opts.problem = ToProblem(o->problem);
    opts.instances = o->instances;
    opts.trials = o->trials;
    opts.seed = o->seed;
    opts.max_users = o->max_users;
    opts.max_ads = o->max_ads;
    opts.threads = o->threads;
    const adalloc::CertifyReport report = adalloc::Certify(opts);
    *report_json =
        CopyString(adalloc::CertifyReportToJson(report).dump(2) + "\n");
    if (passed) *passed = report.passed ? 1 : 0;
  });
}

}  // extern "C"
