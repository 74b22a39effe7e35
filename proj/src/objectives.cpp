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

#include "adalloc/objectives.hpp"

#include <cmath>
#include <numeric>

#include "adalloc/error.hpp"

namespace adalloc {

namespace {

void CheckShapes(const Allocation& alloc, const Campaign& campaign,
                 const SpreadEstimator& spread) {
  if (campaign.num_ads() != spread.num_ads())
    throw Error(ErrorKind::kValidation,
                "campaign has " + std::to_string(campaign.num_ads()) +
                    " ads but the graph has " +
                    std::to_string(spread.num_ads()));
  alloc.Validate(spread.num_users(), campaign.num_ads());
}

// exp(max(0, count - limit)) without overflowing the subtraction.
double ExcessPenalty(std::uint64_t count, std::uint64_t limit) {
  return count > limit ? std::exp(static_cast<double>(count - limit)) : 1.0;
}

}  // namespace

void PenaltyParams::Validate() const {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0))
    throw Error(ErrorKind::kValidation, "lambda1 and lambda2 must be >= 0");
  if (!(phi >= 0.0) || !std::isfinite(phi))
    throw Error(ErrorKind::kValidation, "phi must be a finite value >= 0");
}

double UtilityU(const Allocation& alloc, const Campaign& campaign,
                const SpreadEstimator& spread) {
  CheckShapes(alloc, campaign, spread);
  double total = 0.0;
  for (AdId ad = 0; ad < campaign.num_ads(); ++ad)
    total += AdUtility(campaign[ad].alpha, campaign[ad].budget,
                       spread.Spread(ad, alloc.seeds(ad)));
  return total;
}

double Regret(const Allocation& alloc, const Campaign& campaign,
              const SpreadEstimator& spread) {
  CheckShapes(alloc, campaign, spread);
  double total = 0.0;
  for (AdId ad = 0; ad < campaign.num_ads(); ++ad) {
    const double revenue =
        campaign[ad].alpha * spread.Spread(ad, alloc.seeds(ad));
    total += std::abs(revenue - campaign[ad].budget);
  }
  return total;
}

double RevenueV(const Allocation& alloc, const Campaign& campaign,
                const SpreadEstimator& spread) {
  CheckShapes(alloc, campaign, spread);
  double total = 0.0;
  for (AdId ad = 0; ad < campaign.num_ads(); ++ad)
    total += AdRevenue(campaign[ad].alpha, campaign[ad].budget,
                       spread.Spread(ad, alloc.seeds(ad)));
  return total;
}

double AttentionCost(const AttentionCounts& counts,
                     const AttentionConstraints& constraints,
                     const PenaltyParams& params) {
  double part1 = 0.0;
  for (std::size_t u = 0; u < counts.per_user.size(); ++u)
    part1 += ExcessPenalty(counts.per_user[u], constraints.kappa[u]);
  const double part2 = ExcessPenalty(counts.total, constraints.total_limit);
  return params.lambda1 * part1 + params.lambda2 * part2;
}

double CostC(const Allocation& alloc, const AttentionConstraints& constraints,
             const PenaltyParams& params) {
  const auto n = static_cast<std::uint32_t>(constraints.kappa.size());
  return AttentionCost(AllocationColumnSums(alloc, n), constraints, params);
}

double ShiftedF(const Allocation& alloc, const Campaign& campaign,
                const AttentionConstraints& constraints,
                const PenaltyParams& params, const SpreadEstimator& spread) {
  return UtilityU(alloc, campaign, spread) -
         CostC(alloc, constraints, params) + params.phi;
}

double ShiftedFPrime(const Allocation& alloc, const Campaign& campaign,
                     const AttentionConstraints& constraints,
                     const PenaltyParams& params,
                     const SpreadEstimator& spread) {
  return RevenueV(alloc, campaign, spread) -
         CostC(alloc, constraints, params) + params.phi;
}

double AutoPhi(const Campaign& campaign,
               const AttentionConstraints& constraints,
               const PenaltyParams& params, const SpreadEstimator& spread) {
  const std::uint32_t n = spread.num_users();
  constraints.Validate(n);
  SeedSet everyone(n);
  std::iota(everyone.begin(), everyone.end(), UserId{0});

  AttentionCounts full;
  full.per_user.assign(n, campaign.num_ads());
  full.total = static_cast<std::uint64_t>(n) * campaign.num_ads();
  double phi = AttentionCost(full, constraints, params);

  for (AdId ad = 0; ad < campaign.num_ads(); ++ad) {
    const double overshoot = campaign[ad].alpha * spread.Spread(ad, everyone) -
                             2.0 * campaign[ad].budget;
    if (overshoot > 0.0) phi += overshoot;
  }
  return phi;
}

ObjectiveReport Evaluate(const Allocation& alloc, const Campaign& campaign,
                         const AttentionConstraints& constraints,
                         const PenaltyParams& params,
                         const SpreadEstimator& spread) {
  CheckShapes(alloc, campaign, spread);
  constraints.Validate(spread.num_users());

  ObjectiveReport r;
  r.phi = params.phi;
  r.per_ad.resize(campaign.num_ads());
  for (AdId ad = 0; ad < campaign.num_ads(); ++ad) {
    AdReport& a = r.per_ad[ad];
    a.alpha = campaign[ad].alpha;
    a.budget = campaign[ad].budget;
    a.sigma = spread.Spread(ad, alloc.seeds(ad));
    a.utility = AdUtility(a.alpha, a.budget, a.sigma);
    a.revenue = AdRevenue(a.alpha, a.budget, a.sigma);
    a.num_seeds = alloc.seeds(ad).size();
    r.U += a.utility;
    r.V += a.revenue;
    r.regret += std::abs(a.alpha * a.sigma - a.budget);
    r.total_budget += a.budget;
  }
  r.C = CostC(alloc, constraints, params);
  r.C_plus = r.C + params.phi;
  r.f = r.U - r.C + params.phi;
  r.f_prime = r.V - r.C + params.phi;
  return r;
}

}  // namespace adalloc
