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

// Allocation solvers.
//
//   GreedyRmp         capped revenue V under the attention matroid; 1/2-approx.
//   GreedyP1          GreedyRmp, then per capped ad drop the last-inserted
//                     seed when that does not lower U_i; 1/4-approx for U
//                     when every ad needs at least two seeds to hit budget.
//   DoubleGreedyUrmp  randomized double greedy on f' = V - C + phi, one ad at a
//                     time; 1/2-approx in expectation.
//   GreedyP2          DoubleGreedyUrmp, then per capped ad drop the seed with
//                     the smallest V_i marginal when that does not lower U_i.
//   BruteForceOpt     exhaustive maximizer over all (user, ad) subsets, used
//                     as the certification oracle.

#ifndef ADALLOC_SOLVERS_HPP_
#define ADALLOC_SOLVERS_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "adalloc/model.hpp"
#include "adalloc/objectives.hpp"
#include "adalloc/propagation.hpp"

namespace adalloc {

enum class Problem { kRmp, kP1, kUrmp, kP2, kOracle };
enum class Objective { kU, kV, kF, kFPrime };

enum class StopReason {
  kExhausted,       // no feasible pair left (or all users processed)
  kBudgetReached,   // V reached the sum of budgets
  kNoPositiveGain,  // every remaining marginal was <= 0
};

std::string_view ProblemName(Problem p);
Problem ParseProblem(std::string_view name);
std::string_view ObjectiveName(Objective o);
Objective ParseObjective(std::string_view name);
std::string_view StopReasonName(StopReason r);

struct Insertion {
  UserId user = 0;
  double gain = 0.0;  // marginal at insertion time (V for greedy, f' for
                      // double greedy)
};

struct SolverTrace {
  std::vector<std::vector<Insertion>> insertion_order;  // per ad
  std::vector<double> selected_gains;  // greedy: global marginal per step
  StopReason stop_reason = StopReason::kExhausted;
  std::vector<std::optional<UserId>> removed_users;  // per ad
  // Smallest f' seen over every state the double greedy evaluated.
  double min_f_prime = std::numeric_limits<double>::infinity();
  std::uint64_t evaluations = 0;  // marginal / objective evaluations
};

struct SolveResult {
  Problem problem = Problem::kRmp;
  std::optional<Objective> objective;  // set for kOracle
  Allocation allocation;
  ObjectiveReport report;
  SolverTrace trace;
  PenaltyParams params;
  std::uint64_t rng_seed = 0;
};

// Relative tolerance for V_i == B_i when the spread is a sample mean; exact
// spreads compare with no tolerance.
inline constexpr double kCapTolerance = 1e-9;

bool AtCap(double alpha, double budget, double sigma, bool exact_spread);

struct GreedyOptions {
  // Lazy re-evaluation from a max-heap of stale upper bounds (valid because V
  // is submodular under a fixed estimator). false = full re-scan every step.
  bool lazy = true;
  // Stop as soon as the best marginal is <= 0. false reproduces the literal
  // loop, which keeps adding zero-gain pairs while any is feasible.
  bool stop_on_nonpositive_gain = true;
  // Only used to fill SolveResult::report (C, f, f').
  PenaltyParams report_params;
};

SolveResult GreedyRmp(const SpreadEstimator& spread, const Campaign& campaign,
                      const AttentionConstraints& constraints,
                      const GreedyOptions& options = {});

SolveResult GreedyP1(const SpreadEstimator& spread, const Campaign& campaign,
                     const AttentionConstraints& constraints,
                     const GreedyOptions& options = {});

// Processes ads in index order. While ad t is processed, ads < t hold their
// final sets and ads > t are empty. Attention limits enter only through C.
// Throws Error(kSolverAbort) if f' is observed negative (phi too small).
SolveResult DoubleGreedyUrmp(const SpreadEstimator& spread,
                             const Campaign& campaign,
                             const AttentionConstraints& constraints,
                             const PenaltyParams& params,
                             std::uint64_t rng_seed);

SolveResult GreedyP2(const SpreadEstimator& spread, const Campaign& campaign,
                     const AttentionConstraints& constraints,
                     const PenaltyParams& params, std::uint64_t rng_seed);

// Largest ground set (users x ads) the oracle enumerates.
inline constexpr std::size_t kMaxOracleGroundSet = 16;

// Enumerates subsets in increasing bitmask order (bit user * num_ads + ad) and
// keeps the first maximizer. `constraints` filters by independence when
// given; `cost_constraints` supplies kappa/K for C in the f objectives.
// Throws Error(kLimit) when users * ads > kMaxOracleGroundSet.
SolveResult BruteForceOpt(Objective objective, const SpreadEstimator& spread,
                          const Campaign& campaign,
                          const AttentionConstraints* constraints,
                          const AttentionConstraints& cost_constraints,
                          const PenaltyParams& params);

}  // namespace adalloc

#endif  // ADALLOC_SOLVERS_HPP_
