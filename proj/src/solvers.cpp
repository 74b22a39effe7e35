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

#include "adalloc/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <random>
#include <sstream>
#include <string>

#include "adalloc/error.hpp"
#include "adalloc/feasibility.hpp"
#include "adalloc/seeding.hpp"

namespace adalloc {

std::string_view ProblemName(Problem p) {
  switch (p) {
    case Problem::kRmp:
      return "rmp";
    case Problem::kP1:
      return "p1";
    case Problem::kUrmp:
      return "urmp";
    case Problem::kP2:
      return "p2";
    case Problem::kOracle:
      return "oracle";
  }
  return "unknown";
}

Problem ParseProblem(std::string_view name) {
  if (name == "rmp") return Problem::kRmp;
  if (name == "p1") return Problem::kP1;
  if (name == "urmp") return Problem::kUrmp;
  if (name == "p2") return Problem::kP2;
  throw Error(ErrorKind::kValidation,
              "unknown problem '" + std::string(name) +
                  "' (expected rmp, p1, urmp or p2)");
}

std::string_view ObjectiveName(Objective o) {
  switch (o) {
    case Objective::kU:
      return "U";
    case Objective::kV:
      return "V";
    case Objective::kF:
      return "f";
    case Objective::kFPrime:
      return "fprime";
  }
  return "unknown";
}

Objective ParseObjective(std::string_view name) {
  if (name == "U") return Objective::kU;
  if (name == "V") return Objective::kV;
  if (name == "f") return Objective::kF;
  if (name == "fprime" || name == "f_prime") return Objective::kFPrime;
  throw Error(ErrorKind::kValidation,
              "unknown objective '" + std::string(name) +
                  "' (expected U, V, f or fprime)");
}

std::string_view StopReasonName(StopReason r) {
  switch (r) {
    case StopReason::kExhausted:
      return "exhausted";
    case StopReason::kBudgetReached:
      return "budget_reached";
    case StopReason::kNoPositiveGain:
      return "no_positive_gain";
  }
  return "unknown";
}

bool AtCap(double alpha, double budget, double sigma, bool exact_spread) {
  const double revenue = alpha * sigma;
  if (exact_spread) return revenue >= budget;
  return revenue >= budget - kCapTolerance * std::abs(budget);
}

namespace {

void CheckInputs(const SpreadEstimator& spread, const Campaign& campaign,
                 const AttentionConstraints& constraints) {
  if (campaign.num_ads() != spread.num_ads())
    throw Error(ErrorKind::kValidation,
                "campaign has " + std::to_string(campaign.num_ads()) +
                    " ads but the graph has " +
                    std::to_string(spread.num_ads()));
  constraints.Validate(spread.num_users());
}

SeedSet With(const SeedSet& s, UserId u) {
  SeedSet out = s;
  out.insert(std::upper_bound(out.begin(), out.end(), u), u);
  return out;
}

SeedSet Without(const SeedSet& s, UserId u) {
  SeedSet out;
  out.reserve(s.size());
  for (UserId x : s)
    if (x != u) out.push_back(x);
  return out;
}

struct Candidate {
  double bound;
  UserId user;
  AdId ad;
  std::uint64_t version;  // S_ad version the bound was computed against
};

// Max-heap order: larger bound first, then lower user, then lower ad.
struct CandidateLess {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.user != b.user) return a.user > b.user;
    return a.ad > b.ad;
  }
};

class GreedyState {
 public:
  GreedyState(const SpreadEstimator& spread, const Campaign& campaign)
      : spread_(spread),
        campaign_(campaign),
        alloc_(campaign.num_ads()),
        sigma_(campaign.num_ads(), 0.0),
        version_(campaign.num_ads(), 0) {}

  double Gain(UserId u, AdId ad, SolverTrace& trace) const {
    ++trace.evaluations;
    const auto& a = campaign_[ad];
    const double s = spread_.Spread(ad, With(alloc_.seeds(ad), u));
    return AdRevenue(a.alpha, a.budget, s) -
           AdRevenue(a.alpha, a.budget, sigma_[ad]);
  }

  void Add(UserId u, AdId ad) {
    alloc_.insert(u, ad);
    sigma_[ad] = spread_.Spread(ad, alloc_.seeds(ad));
    ++version_[ad];
  }

  double Revenue() const {
    double v = 0.0;
    for (AdId ad = 0; ad < campaign_.num_ads(); ++ad)
      v += AdRevenue(campaign_[ad].alpha, campaign_[ad].budget, sigma_[ad]);
    return v;
  }

  bool Contains(UserId u, AdId ad) const { return alloc_.contains(u, ad); }
  std::uint64_t version(AdId ad) const { return version_[ad]; }
  const Allocation& allocation() const { return alloc_; }

 private:
  const SpreadEstimator& spread_;
  const Campaign& campaign_;
  Allocation alloc_;
  std::vector<double> sigma_;
  std::vector<std::uint64_t> version_;
};

bool BudgetReached(double revenue, double total_budget, bool exact) {
  if (exact) return revenue >= total_budget;
  return revenue >= total_budget - kCapTolerance * std::abs(total_budget);
}

// Returns the best feasible candidate or nullopt when none remains.
std::optional<Candidate> NextLazy(
    std::priority_queue<Candidate, std::vector<Candidate>, CandidateLess>& heap,
    const GreedyState& state, const AttentionLedger& ledger,
    SolverTrace& trace) {
  while (!heap.empty()) {
    Candidate top = heap.top();
    heap.pop();
    // Attention limits only tighten, so an infeasible pair stays infeasible.
    if (!ledger.CanAdd(top.user)) continue;
    if (top.version == state.version(top.ad)) return top;
    top.bound = state.Gain(top.user, top.ad, trace);
    top.version = state.version(top.ad);
    heap.push(top);
  }
  return std::nullopt;
}

std::optional<Candidate> NextNaive(const GreedyState& state,
                                   const AttentionLedger& ledger,
                                   std::uint32_t num_users,
                                   std::uint32_t num_ads, SolverTrace& trace) {
  std::optional<Candidate> best;
  CandidateLess less;
  for (UserId u = 0; u < num_users; ++u) {
    if (!ledger.CanAdd(u)) continue;
    for (AdId ad = 0; ad < num_ads; ++ad) {
      if (state.Contains(u, ad)) continue;
      Candidate c{state.Gain(u, ad, trace), u, ad, state.version(ad)};
      if (!best || less(*best, c)) best = c;
    }
  }
  return best;
}

void FillReport(SolveResult& result, const SpreadEstimator& spread,
                const Campaign& campaign,
                const AttentionConstraints& constraints,
                const PenaltyParams& params) {
  result.params = params;
  result.report =
      Evaluate(result.allocation, campaign, constraints, params, spread);
}

}  // namespace

SolveResult GreedyRmp(const SpreadEstimator& spread, const Campaign& campaign,
                      const AttentionConstraints& constraints,
                      const GreedyOptions& options) {
  CheckInputs(spread, campaign, constraints);
  const std::uint32_t num_users = spread.num_users();
  const std::uint32_t num_ads = campaign.num_ads();
  const double total_budget = campaign.total_budget();

  SolveResult result;
  result.problem = Problem::kRmp;
  SolverTrace& trace = result.trace;
  trace.insertion_order.resize(num_ads);
  trace.removed_users.resize(num_ads);

  GreedyState state(spread, campaign);
  AttentionLedger ledger(constraints, num_users);

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateLess> heap;
  if (options.lazy) {
    std::vector<Candidate> initial;
    initial.reserve(static_cast<std::size_t>(num_users) * num_ads);
    for (UserId u = 0; u < num_users; ++u)
      for (AdId ad = 0; ad < num_ads; ++ad)
        initial.push_back({state.Gain(u, ad, trace), u, ad, 0});
    heap = decltype(heap)(CandidateLess{}, std::move(initial));
  }

  double revenue = 0.0;
  while (true) {
    if (BudgetReached(revenue, total_budget, spread.exact())) {
      trace.stop_reason = StopReason::kBudgetReached;
      break;
    }
    auto next = options.lazy
                    ? NextLazy(heap, state, ledger, trace)
                    : NextNaive(state, ledger, num_users, num_ads, trace);
    if (!next) {
      trace.stop_reason = StopReason::kExhausted;
      break;
    }
    if (options.stop_on_nonpositive_gain && next->bound <= 0.0) {
      trace.stop_reason = StopReason::kNoPositiveGain;
      break;
    }
    state.Add(next->user, next->ad);
    ledger.Add(next->user);
    revenue = state.Revenue();
    trace.insertion_order[next->ad].push_back({next->user, next->bound});
    trace.selected_gains.push_back(next->bound);
  }

  result.allocation = state.allocation();
  FillReport(result, spread, campaign, constraints, options.report_params);
  return result;
}

SolveResult GreedyP1(const SpreadEstimator& spread, const Campaign& campaign,
                     const AttentionConstraints& constraints,
                     const GreedyOptions& options) {
  SolveResult result = GreedyRmp(spread, campaign, constraints, options);
  result.problem = Problem::kP1;

  for (AdId ad = 0; ad < campaign.num_ads(); ++ad) {
    const auto& order = result.trace.insertion_order[ad];
    if (order.empty()) continue;
    const auto& a = campaign[ad];
    const SeedSet& current = result.allocation.seeds(ad);
    const double sigma = spread.Spread(ad, current);
    if (!AtCap(a.alpha, a.budget, sigma, spread.exact())) continue;

    const UserId last = order.back().user;
    SeedSet reduced = Without(current, last);
    const double u_with = AdUtility(a.alpha, a.budget, sigma);
    const double u_without =
        AdUtility(a.alpha, a.budget, spread.Spread(ad, reduced));
    if (u_without >= u_with) {
      result.allocation.set_seeds(ad, std::move(reduced));
      result.trace.removed_users[ad] = last;
    }
  }
  FillReport(result, spread, campaign, constraints, options.report_params);
  return result;
}

SolveResult DoubleGreedyUrmp(const SpreadEstimator& spread,
                             const Campaign& campaign,
                             const AttentionConstraints& constraints,
                             const PenaltyParams& params,
                             std::uint64_t rng_seed) {
  CheckInputs(spread, campaign, constraints);
  params.Validate();
  const std::uint32_t num_users = spread.num_users();
  const std::uint32_t num_ads = campaign.num_ads();

  SolveResult result;
  result.problem = Problem::kUrmp;
  result.rng_seed = rng_seed;
  SolverTrace& trace = result.trace;
  trace.insertion_order.resize(num_ads);
  trace.removed_users.resize(num_ads);
  trace.stop_reason = StopReason::kExhausted;

  Allocation alloc(num_ads);
  std::mt19937_64 rng(DeriveSeed(rng_seed, "double-greedy"));
  const double tolerance = 1e-9 * std::max(1.0, std::abs(params.phi));

  // Revenue of ads already finalized and their attention counts.
  double fixed_revenue = 0.0;
  AttentionCounts fixed_counts;
  fixed_counts.per_user.assign(num_users, 0);

  for (AdId t = 0; t < num_ads; ++t) {
    const auto& ad = campaign[t];

    // f' with ad t's set replaced by `set`.
    auto f_prime = [&](const SeedSet& set) {
      ++trace.evaluations;
      AttentionCounts counts = fixed_counts;
      for (UserId u : set) ++counts.per_user[u];
      counts.total += set.size();
      const double v = fixed_revenue +
                       AdRevenue(ad.alpha, ad.budget, spread.Spread(t, set));
      const double value = v - AttentionCost(counts, constraints, params) +
                           params.phi;
      trace.min_f_prime = std::min(trace.min_f_prime, value);
      if (value < -tolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "phi=" << params.phi << " is insufficient: f' = " << value
            << " on ad " << t << " with " << set.size()
            << " seeds; use --phi auto or a larger value";
        throw Error(ErrorKind::kSolverAbort, msg.str());
      }
      return value;
    };

    SeedSet lower;  // O_t
    SeedSet upper(num_users);  // Q_t
    for (UserId u = 0; u < num_users; ++u) upper[u] = u;

    for (UserId v = 0; v < num_users; ++v) {
      SeedSet lower_plus = With(lower, v);
      SeedSet upper_minus = Without(upper, v);
      const double a = f_prime(lower_plus) - f_prime(lower);
      const double b = f_prime(upper_minus) - f_prime(upper);
      const double a_pos = std::max(0.0, a);
      const double b_pos = std::max(0.0, b);
      const double p_add =
          (a_pos + b_pos == 0.0) ? 1.0 : a_pos / (a_pos + b_pos);
      if (UniformUnit(rng) < p_add) {
        lower = std::move(lower_plus);
        trace.insertion_order[t].push_back({v, a});
      } else {
        upper = std::move(upper_minus);
      }
    }

    alloc.set_seeds(t, lower);
    fixed_revenue += AdRevenue(ad.alpha, ad.budget, spread.Spread(t, lower));
    for (UserId u : lower) ++fixed_counts.per_user[u];
    fixed_counts.total += lower.size();
  }

  result.allocation = std::move(alloc);
  FillReport(result, spread, campaign, constraints, params);
  return result;
}

SolveResult GreedyP2(const SpreadEstimator& spread, const Campaign& campaign,
                     const AttentionConstraints& constraints,
                     const PenaltyParams& params, std::uint64_t rng_seed) {
  SolveResult result =
      DoubleGreedyUrmp(spread, campaign, constraints, params, rng_seed);
  result.problem = Problem::kP2;

  for (AdId ad = 0; ad < campaign.num_ads(); ++ad) {
    const SeedSet& current = result.allocation.seeds(ad);
    if (current.empty()) continue;
    const auto& a = campaign[ad];
    const double sigma = spread.Spread(ad, current);
    if (!AtCap(a.alpha, a.budget, sigma, spread.exact())) continue;

    const double v_full = AdRevenue(a.alpha, a.budget, sigma);
    std::optional<UserId> weakest;
    double weakest_gain = 0.0;
    double weakest_sigma = 0.0;
    for (UserId u : current) {  // ascending, so ties keep the lowest index
      const double s = spread.Spread(ad, Without(current, u));
      const double gain = v_full - AdRevenue(a.alpha, a.budget, s);
      ++result.trace.evaluations;
      if (!weakest || gain < weakest_gain) {
        weakest = u;
        weakest_gain = gain;
        weakest_sigma = s;
      }
    }
    if (AdUtility(a.alpha, a.budget, weakest_sigma) >=
        AdUtility(a.alpha, a.budget, sigma)) {
      result.allocation.set_seeds(ad, Without(current, *weakest));
      result.trace.removed_users[ad] = *weakest;
    }
  }
  FillReport(result, spread, campaign, constraints, params);
  return result;
}

SolveResult BruteForceOpt(Objective objective, const SpreadEstimator& spread,
                          const Campaign& campaign,
                          const AttentionConstraints* constraints,
                          const AttentionConstraints& cost_constraints,
                          const PenaltyParams& params) {
  CheckInputs(spread, campaign, cost_constraints);
  if (constraints) constraints->Validate(spread.num_users());
  const std::uint32_t num_users = spread.num_users();
  const std::uint32_t num_ads = campaign.num_ads();
  const std::size_t n = static_cast<std::size_t>(num_users) * num_ads;
  if (n > kMaxOracleGroundSet)
    throw Error(ErrorKind::kLimit,
                "oracle ground set has " + std::to_string(n) +
                    " pairs; limit is " + std::to_string(kMaxOracleGroundSet));

  // Per-ad objective contribution for every user subset.
  const std::uint32_t user_subsets = 1U << num_users;
  std::vector<std::vector<double>> utility(num_ads), revenue(num_ads);
  for (AdId ad = 0; ad < num_ads; ++ad) {
    utility[ad].resize(user_subsets);
    revenue[ad].resize(user_subsets);
    for (std::uint32_t m = 0; m < user_subsets; ++m) {
      SeedSet seeds;
      for (UserId u = 0; u < num_users; ++u)
        if ((m >> u) & 1U) seeds.push_back(u);
      const double s = spread.Spread(ad, seeds);
      utility[ad][m] = AdUtility(campaign[ad].alpha, campaign[ad].budget, s);
      revenue[ad][m] = AdRevenue(campaign[ad].alpha, campaign[ad].budget, s);
    }
  }

  SolveResult result;
  result.problem = Problem::kOracle;
  result.objective = objective;
  result.trace.insertion_order.resize(num_ads);
  result.trace.removed_users.resize(num_ads);

  const bool needs_cost =
      objective == Objective::kF || objective == Objective::kFPrime;
  AttentionCounts counts;
  std::vector<std::uint32_t> ad_mask(num_ads);
  std::optional<double> best_value;
  std::uint32_t best_mask = 0;

  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    counts.per_user.assign(num_users, 0);
    counts.total = 0;
    std::fill(ad_mask.begin(), ad_mask.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
      if (!((mask >> k) & 1U)) continue;
      const auto u = static_cast<UserId>(k / num_ads);
      const auto ad = static_cast<AdId>(k % num_ads);
      ad_mask[ad] |= 1U << u;
      ++counts.per_user[u];
      ++counts.total;
    }
    if (constraints) {
      if (counts.total > constraints->total_limit) continue;
      bool ok = true;
      for (UserId u = 0; u < num_users && ok; ++u)
        ok = counts.per_user[u] <= constraints->kappa[u];
      if (!ok) continue;
    }
    ++result.trace.evaluations;

    double value = 0.0;
    const bool use_utility =
        objective == Objective::kU || objective == Objective::kF;
    for (AdId ad = 0; ad < num_ads; ++ad)
      value += use_utility ? utility[ad][ad_mask[ad]] : revenue[ad][ad_mask[ad]];
    if (needs_cost)
      value += params.phi - AttentionCost(counts, cost_constraints, params);

    if (!best_value || value > *best_value) {
      best_value = value;
      best_mask = mask;
    }
  }

  Allocation alloc(num_ads);
  for (std::size_t k = 0; k < n; ++k)
    if ((best_mask >> k) & 1U)
      alloc.insert(static_cast<UserId>(k / num_ads),
                   static_cast<AdId>(k % num_ads));
  result.allocation = std::move(alloc);
  FillReport(result, spread, campaign, cost_constraints, params);
  return result;
}

}  // namespace adalloc
