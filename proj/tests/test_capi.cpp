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

// Exercises libadalloc through its C interface only.

#include "adalloc/adalloc.h"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <string>

namespace {

using nlohmann::json;

std::string Take(char* s) {
  std::string out = s ? s : "";
  adalloc_string_free(s);
  return out;
}

class CapiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(adalloc_graph_parse("users=2 ads=1\n", &graph_), ADALLOC_OK);
    const double alpha[] = {1.0};
    const double budget[] = {1.2};
    ASSERT_EQ(adalloc_campaign_create(alpha, budget, 1, &campaign_),
              ADALLOC_OK);
    ASSERT_EQ(adalloc_constraints_uniform(2, ADALLOC_UNBOUNDED,
                                          ADALLOC_UNBOUNDED, &constraints_),
              ADALLOC_OK);
    adalloc_spread_options o;
    adalloc_spread_options_init(&o);
    o.exact = 1;
    ASSERT_EQ(adalloc_model_create(graph_, campaign_, constraints_, &o,
                                   &model_),
              ADALLOC_OK);
  }
  void TearDown() override {
    adalloc_model_free(model_);
    adalloc_constraints_free(constraints_);
    adalloc_campaign_free(campaign_);
    adalloc_graph_free(graph_);
  }
  adalloc_graph* graph_ = nullptr;
  adalloc_campaign* campaign_ = nullptr;
  adalloc_constraints* constraints_ = nullptr;
  adalloc_model* model_ = nullptr;
};

TEST_F(CapiTest, SolveP1) {
  adalloc_solve_options o;
  adalloc_solve_options_init(&o);
  o.problem = ADALLOC_PROBLEM_P1;
  adalloc_result* r = nullptr;
  ASSERT_EQ(adalloc_solve(model_, &o, &r), ADALLOC_OK);
  adalloc_objectives v;
  ASSERT_EQ(adalloc_result_objectives(r, &v), ADALLOC_OK);
  EXPECT_DOUBLE_EQ(v.U, 1.0);
  ASSERT_EQ(adalloc_result_num_ads(r), 1u);
  ASSERT_EQ(adalloc_result_num_seeds(r, 0), 1u);
  std::uint32_t seeds[4];
  size_t written = 0;
  ASSERT_EQ(adalloc_result_seeds(r, 0, seeds, 4, &written), ADALLOC_OK);
  EXPECT_EQ(written, 1u);
  EXPECT_EQ(seeds[0], 0u);

  char* text = nullptr;
  ASSERT_EQ(adalloc_result_json(r, &text), ADALLOC_OK);
  const json j = json::parse(Take(text));
  for (const char* key :
       {"allocation", "objective_values", "trace", "seed", "params"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["trace"]["removed_users"][0], 1);
  ASSERT_EQ(adalloc_result_csv(r, &text), ADALLOC_OK);
  EXPECT_EQ(Take(text).rfind("ad,alpha,budget,sigma,U_i,V_i", 0), 0u);
  adalloc_result_free(r);
}

TEST_F(CapiTest, SolveUrmpReportsPhi) {
  adalloc_solve_options o;
  adalloc_solve_options_init(&o);
  o.problem = ADALLOC_PROBLEM_URMP;
  o.penalty.lambda1 = 1.0;
  adalloc_result* r = nullptr;
  ASSERT_EQ(adalloc_solve(model_, &o, &r), ADALLOC_OK);
  char* text = nullptr;
  ASSERT_EQ(adalloc_result_json(r, &text), ADALLOC_OK);
  const json j = json::parse(Take(text));
  EXPECT_DOUBLE_EQ(j["params"]["phi"].get<double>(), 2.0);
  EXPECT_TRUE(j["params"]["phi_auto"].get<bool>());
  EXPECT_GE(j["trace"]["min_f_prime"].get<double>(), 0.0);
  adalloc_result_free(r);
}

TEST_F(CapiTest, SolverAbortStatus) {
  adalloc_solve_options o;
  adalloc_solve_options_init(&o);
  o.problem = ADALLOC_PROBLEM_URMP;
  o.penalty.lambda1 = 3.0;
  o.penalty.phi_auto = 0;
  o.penalty.phi = 0.0;
  adalloc_result* r = nullptr;
  EXPECT_EQ(adalloc_solve(model_, &o, &r), ADALLOC_ERR_SOLVER_ABORT);
  EXPECT_EQ(r, nullptr);
  EXPECT_NE(std::string(adalloc_last_error()).find("phi"), std::string::npos);
}

TEST_F(CapiTest, EvaluateRoundTripsSolveOutput) {
  adalloc_solve_options o;
  adalloc_solve_options_init(&o);
  o.problem = ADALLOC_PROBLEM_RMP;
  adalloc_result* r = nullptr;
  ASSERT_EQ(adalloc_solve(model_, &o, &r), ADALLOC_OK);
  char* text = nullptr;
  ASSERT_EQ(adalloc_result_json(r, &text), ADALLOC_OK);
  const std::string solved = Take(text);
  adalloc_penalty p;
  adalloc_penalty_init(&p);
  ASSERT_EQ(adalloc_evaluate(model_, solved.c_str(), &p, ADALLOC_FORMAT_JSON,
                             &text),
            ADALLOC_OK);
  const json eval = json::parse(Take(text));
  const json sol = json::parse(solved);
  for (const char* key : {"U", "V", "regret", "C", "f", "f_prime", "phi"})
    EXPECT_EQ(eval[key], sol["objective_values"][key]) << key;
  adalloc_result_free(r);
}

TEST_F(CapiTest, EvaluateRejectsBadJson) {
  char* text = nullptr;
  EXPECT_EQ(adalloc_evaluate(model_, "{", nullptr, ADALLOC_FORMAT_JSON, &text),
            ADALLOC_ERR_PARSE);
  EXPECT_EQ(adalloc_evaluate(model_, "[[5]]", nullptr, ADALLOC_FORMAT_JSON,
                             &text),
            ADALLOC_ERR_VALIDATION);
}

TEST_F(CapiTest, Oracle) {
  adalloc_result* r = nullptr;
  ASSERT_EQ(adalloc_oracle(model_, ADALLOC_OBJECTIVE_U, 1, nullptr, &r),
            ADALLOC_OK);
  adalloc_objectives v;
  adalloc_result_objectives(r, &v);
  EXPECT_DOUBLE_EQ(v.U, 1.0);
  adalloc_result_free(r);
}

TEST_F(CapiTest, Spread) {
  const std::uint32_t seeds[] = {0, 1};
  double s = 0.0;
  ASSERT_EQ(adalloc_model_spread(model_, 0, seeds, 2, &s), ADALLOC_OK);
  EXPECT_EQ(s, 2.0);
  EXPECT_EQ(adalloc_model_spread(model_, 1, seeds, 2, &s),
            ADALLOC_ERR_VALIDATION);
}

TEST(CapiErrorTest, StatusKinds) {
  EXPECT_STREQ(adalloc_status_kind(ADALLOC_OK), "ok");
  EXPECT_STREQ(adalloc_status_kind(ADALLOC_ERR_IO), "io");
  EXPECT_STREQ(adalloc_status_kind(ADALLOC_ERR_SOLVER_ABORT), "solver");
  EXPECT_STRNE(adalloc_version(), "");
}

TEST(CapiErrorTest, ParseAndIoErrors) {
  adalloc_graph* g = nullptr;
  EXPECT_EQ(adalloc_graph_parse("0 1 0 1.5\n", &g), ADALLOC_ERR_PARSE);
  EXPECT_EQ(g, nullptr);
  EXPECT_NE(std::string(adalloc_last_error()).find("line 1"),
            std::string::npos);
  EXPECT_EQ(adalloc_graph_load("/nonexistent/graph.txt", &g), ADALLOC_ERR_IO);
  adalloc_campaign* c = nullptr;
  EXPECT_EQ(adalloc_campaign_load("/nonexistent/c.txt", &c), ADALLOC_ERR_IO);
  EXPECT_EQ(adalloc_graph_generate("ring", 3, 1, 0.5, 1, -1, &g),
            ADALLOC_ERR_VALIDATION);
}

TEST(CapiErrorTest, NullArguments) {
  EXPECT_EQ(adalloc_graph_parse(nullptr, nullptr), ADALLOC_ERR_NULL_ARGUMENT);
  EXPECT_EQ(adalloc_solve(nullptr, nullptr, nullptr),
            ADALLOC_ERR_NULL_ARGUMENT);
  adalloc_graph_free(nullptr);
  adalloc_result_free(nullptr);
  adalloc_string_free(nullptr);
  EXPECT_EQ(adalloc_graph_num_users(nullptr), 0u);
}

TEST(CapiErrorTest, ModelShapeMismatch) {
  adalloc_graph* g = nullptr;
  ASSERT_EQ(adalloc_graph_generate("chain", 3, 2, 0.5, 1, -1, &g), ADALLOC_OK);
  adalloc_campaign* c = nullptr;
  ASSERT_EQ(adalloc_campaign_parse("0 1 1\n", &c), ADALLOC_OK);
  adalloc_model* m = nullptr;
  EXPECT_EQ(adalloc_model_create(g, c, nullptr, nullptr, &m),
            ADALLOC_ERR_VALIDATION);
  adalloc_constraints* k = nullptr;
  ASSERT_EQ(adalloc_constraints_uniform(5, 1, 1, &k), ADALLOC_OK);
  adalloc_campaign* c2 = nullptr;
  ASSERT_EQ(adalloc_campaign_parse("0 1 1\n1 1 1\n", &c2), ADALLOC_OK);
  EXPECT_EQ(adalloc_model_create(g, c2, k, nullptr, &m),
            ADALLOC_ERR_VALIDATION);
  adalloc_constraints_free(k);
  adalloc_campaign_free(c2);
  adalloc_campaign_free(c);
  adalloc_graph_free(g);
}

TEST(CapiGraphTest, GenerateSerialize) {
  adalloc_graph* g = nullptr;
  ASSERT_EQ(adalloc_graph_generate("chain", 3, 1, 1.0, 7, -1, &g), ADALLOC_OK);
  EXPECT_EQ(adalloc_graph_num_users(g), 3u);
  EXPECT_EQ(adalloc_graph_num_edges(g), 2u);
  char* text = nullptr;
  ASSERT_EQ(adalloc_graph_serialize(g, &text), ADALLOC_OK);
  EXPECT_EQ(Take(text), "users=3 ads=1\n0 1 0 1\n1 2 0 1\n");
  adalloc_graph* sym = nullptr;
  ASSERT_EQ(adalloc_graph_symmetrize(g, &sym), ADALLOC_OK);
  EXPECT_EQ(adalloc_graph_num_edges(sym), 4u);
  adalloc_graph_free(sym);
  adalloc_graph_free(g);
}

TEST(CapiCertifyTest, DeterministicJson) {
  adalloc_certify_options o;
  adalloc_certify_options_init(&o);
  o.problem = ADALLOC_PROBLEM_P2;
  o.instances = 4;
  o.trials = 50;
  char* a = nullptr;
  char* b = nullptr;
  int passed = 0;
  ASSERT_EQ(adalloc_certify(&o, &a, &passed), ADALLOC_OK);
  EXPECT_EQ(passed, 1);
  ASSERT_EQ(adalloc_certify(&o, &b, nullptr), ADALLOC_OK);
  EXPECT_EQ(Take(a), Take(b));
}

}  // namespace
