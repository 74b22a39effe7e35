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

// Scalar objectives of an allocation.
//
//   U_i   = a*s            if a*s <= B     (utility; regret = sum B - U)
//         = 2B - a*s       otherwise
//   V_i   = min(a*s, B)                    (capped revenue, V >= U)
//   C     = l1 * sum_u exp(max(0, n_u - kappa_u)) + l2 * exp(max(0, n - K))
//   f     = U - C + phi
//   f'    = V - C + phi
//
// with a = alpha_i, s = sigma_i(S_i), B = B_i, n_u the number of ads assigned
// to user u and n the total number of assignments. C keeps the exp(0) = 1
// baseline terms: with no violation it equals l1 * |users| + l2.

#ifndef ADALLOC_OBJECTIVES_HPP_
#define ADALLOC_OBJECTIVES_HPP_

#include <vector>

#include "adalloc/model.hpp"
#include "adalloc/propagation.hpp"

namespace adalloc {

struct PenaltyParams {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double phi = 0.0;

  void Validate() const;
};

// Per-ad pieces, all from a single spread evaluation.
inline double AdUtility(double alpha, double budget, double sigma) {
  const double revenue = alpha * sigma;
  return revenue <= budget ? revenue : 2.0 * budget - revenue;
}
inline double AdRevenue(double alpha, double budget, double sigma) {
  const double revenue = alpha * sigma;
  return revenue < budget ? revenue : budget;
}

double UtilityU(const Allocation& alloc, const Campaign& campaign,
                const SpreadEstimator& spread);
double Regret(const Allocation& alloc, const Campaign& campaign,
              const SpreadEstimator& spread);
double RevenueV(const Allocation& alloc, const Campaign& campaign,
                const SpreadEstimator& spread);

// Attention penalty from row/total counts; used by the incremental solvers.
double AttentionCost(const AttentionCounts& counts,
                     const AttentionConstraints& constraints,
                     const PenaltyParams& params);
double CostC(const Allocation& alloc, const AttentionConstraints& constraints,
             const PenaltyParams& params);

double ShiftedF(const Allocation& alloc, const Campaign& campaign,
                const AttentionConstraints& constraints,
                const PenaltyParams& params, const SpreadEstimator& spread);
double ShiftedFPrime(const Allocation& alloc, const Campaign& campaign,
                     const AttentionConstraints& constraints,
                     const PenaltyParams& params,
                     const SpreadEstimator& spread);

// phi = C(every ad allocated to every user) + sum_i max(0, a_i s_i(V) - 2 B_i).
// The first term bounds C from above (both penalty parts are nondecreasing),
// the second bounds -U from above, so f >= 0 and f' >= 0 everywhere. The
// `phi` field of `params` is ignored.
double AutoPhi(const Campaign& campaign,
               const AttentionConstraints& constraints,
               const PenaltyParams& params, const SpreadEstimator& spread);

struct AdReport {
  double alpha = 0.0;
  double budget = 0.0;
  double sigma = 0.0;
  double utility = 0.0;  // U_i
  double revenue = 0.0;  // V_i
  std::size_t num_seeds = 0;
};

struct ObjectiveReport {
  std::vector<AdReport> per_ad;
  double U = 0.0;
  double V = 0.0;
  double regret = 0.0;
  double C = 0.0;
  double C_plus = 0.0;
  double f = 0.0;
  double f_prime = 0.0;
  double phi = 0.0;
  double total_budget = 0.0;
};

// Evaluates every objective with one spread query per ad.
ObjectiveReport Evaluate(const Allocation& alloc, const Campaign& campaign,
                         const AttentionConstraints& constraints,
                         const PenaltyParams& params,
                         const SpreadEstimator& spread);

}  // namespace adalloc

#endif  // ADALLOC_OBJECTIVES_HPP_
