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

// Approximation-ratio certification: random desk-scale instances with exact
// spread, each solver compared against the exhaustive oracle.
//
//   rmp   V(GreedyRmp)  >= 1/2 OPT_V          (every instance)
//   p1    U(GreedyP1)   >= 1/4 OPT_U          (every instance; each ad needs
//                                              >= 2 seeds to reach budget)
//   urmp  mean f'(DoubleGreedyUrmp) >= 1/2 OPT_f'  - 3 SE   (over trials)
//   p2    mean f(GreedyP2)          >= 1/4 OPT_f   - 3 SE   (p1 family)

#ifndef ADALLOC_CERTIFY_HPP_
#define ADALLOC_CERTIFY_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "adalloc/model.hpp"
#include "adalloc/objectives.hpp"
#include "adalloc/propagation.hpp"
#include "adalloc/solvers.hpp"

namespace adalloc {

struct CertifyOptions {
  Problem problem = Problem::kRmp;
  std::uint32_t instances = 100;
  std::uint32_t trials = 2000;  // randomized solvers only
  std::uint64_t seed = 1;
  std::uint32_t min_users = 2;
  std::uint32_t max_users = 5;
  std::uint32_t max_ads = 2;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct CertificationInstance {
  HyperSocialGraph graph;
  Campaign campaign;
  AttentionConstraints constraints;
  PenaltyParams params;  // phi already auto-computed
  std::unique_ptr<ExactSpread> spread;
};

// Deterministic in (seed, options). When `two_seed_budgets` is set every
// budget exceeds the revenue of any single seed, i.e. each ad needs at least
// two seeds to reach its budget.
CertificationInstance MakeCertificationInstance(std::uint64_t seed,
                                                const CertifyOptions& options,
                                                bool two_seed_budgets);

// Smallest number of seeds whose revenue reaches B_i (by enumeration), or
// nullopt when even all users fall short.
std::optional<std::uint32_t> MinSeedsToBudget(const SpreadEstimator& spread,
                                              const Campaign& campaign,
                                              AdId ad);

struct InstanceOutcome {
  std::uint32_t index = 0;
  std::uint64_t seed = 0;
  std::uint32_t num_users = 0;
  std::uint32_t num_ads = 0;
  std::size_t num_edges = 0;
  double optimum = 0.0;
  double value = 0.0;      // solver value, or mean over trials
  double std_error = 0.0;  // 0 for deterministic solvers
  double ratio = 1.0;      // value / optimum (1 when optimum <= 0)
  double threshold = 0.0;  // value must be >= threshold
  double min_f_prime = 0.0;  // randomized solvers: min over visited states
  bool passed = false;
};

struct CertifyReport {
  CertifyOptions options;
  double bound = 0.0;  // 1/2 or 1/4
  std::vector<InstanceOutcome> outcomes;
  double min_ratio = 0.0;
  double mean_ratio = 0.0;
  std::uint32_t violations = 0;
  bool nonnegative_f_prime = true;  // randomized solvers only
  bool passed = false;
};

// Instances run concurrently; the report does not depend on scheduling.
CertifyReport Certify(const CertifyOptions& options);

}  // namespace adalloc

#endif  // ADALLOC_CERTIFY_HPP_
