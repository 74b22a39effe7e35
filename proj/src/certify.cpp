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

#include "adalloc/certify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <random>
#include <thread>

#include "adalloc/error.hpp"
#include "adalloc/feasibility.hpp"
#include "adalloc/seeding.hpp"

namespace adalloc {

namespace {

// Absolute slack for comparing floating-point objective values.
constexpr double kSlack = 1e-9;

// Multiples of 0.05 in [lo, hi] keep generated instances readable.
double Grid(std::mt19937_64& rng, double lo, double hi) {
  const auto lo_k = static_cast<std::uint64_t>(std::ceil(lo * 20.0));
  const auto hi_k = static_cast<std::uint64_t>(std::floor(hi * 20.0));
  return static_cast<double>(UniformInt(rng, lo_k, hi_k)) / 20.0;
}

SeedSet AllUsers(std::uint32_t n) {
  SeedSet s(n);
  for (UserId u = 0; u < n; ++u) s[u] = u;
  return s;
}

double BoundFor(Problem p) {
  return (p == Problem::kRmp || p == Problem::kUrmp) ? 0.5 : 0.25;
}

InstanceOutcome RunInstance(const CertifyOptions& options, std::uint32_t index) {
  const Problem problem = options.problem;
  const bool two_seed = problem == Problem::kP1 || problem == Problem::kP2;
  const std::uint64_t seed = DeriveSeed(options.seed, "certify-instance", index);
  CertificationInstance inst =
      MakeCertificationInstance(seed, options, two_seed);
  const ExactSpread& spread = *inst.spread;

  InstanceOutcome out;
  out.index = index;
  out.seed = seed;
  out.num_users = inst.graph.num_users();
  out.num_ads = inst.graph.num_ads();
  out.num_edges = inst.graph.num_edges();

  const double bound = BoundFor(problem);
  switch (problem) {
    case Problem::kRmp:
    case Problem::kP1: {
      const Objective obj = problem == Problem::kRmp ? Objective::kV
                                                     : Objective::kU;
      SolveResult opt = BruteForceOpt(obj, spread, inst.campaign,
                                      &inst.constraints, inst.constraints, {});
      SolveResult alg = problem == Problem::kRmp
                            ? GreedyRmp(spread, inst.campaign, inst.constraints)
                            : GreedyP1(spread, inst.campaign, inst.constraints);
      out.optimum = obj == Objective::kV ? opt.report.V : opt.report.U;
      out.value = obj == Objective::kV ? alg.report.V : alg.report.U;
      out.threshold = bound * out.optimum - kSlack;
      out.passed = out.value >= out.threshold &&
                   IsIndependent(alg.allocation, inst.constraints);
      break;
    }
    case Problem::kUrmp:
    case Problem::kP2: {
      const Objective obj = problem == Problem::kUrmp ? Objective::kFPrime
                                                      : Objective::kF;
      SolveResult opt = BruteForceOpt(obj, spread, inst.campaign, nullptr,
                                      inst.constraints, inst.params);
      out.optimum = obj == Objective::kFPrime ? opt.report.f_prime
                                              : opt.report.f;
      const std::uint32_t trials = std::max<std::uint32_t>(options.trials, 1);
      double sum = 0.0, sum_sq = 0.0;
      out.min_f_prime = std::numeric_limits<double>::infinity();
      for (std::uint32_t k = 0; k < trials; ++k) {
        const std::uint64_t trial_seed = DeriveSeed(seed, "trial", k);
        SolveResult alg =
            problem == Problem::kUrmp
                ? DoubleGreedyUrmp(spread, inst.campaign, inst.constraints,
                                   inst.params, trial_seed)
                : GreedyP2(spread, inst.campaign, inst.constraints,
                           inst.params, trial_seed);
        const double v =
            obj == Objective::kFPrime ? alg.report.f_prime : alg.report.f;
        sum += v;
        sum_sq += v * v;
        out.min_f_prime = std::min(out.min_f_prime, alg.trace.min_f_prime);
      }
      const double n = trials;
      out.value = sum / n;
      const double var =
          trials > 1 ? std::max(0.0, (sum_sq - n * out.value * out.value) /
                                         (n - 1.0))
                     : 0.0;
      out.std_error = std::sqrt(var / n);
      out.threshold = bound * out.optimum - 3.0 * out.std_error - kSlack;
      out.passed = out.value >= out.threshold && out.min_f_prime >= 0.0;
      break;
    }
    case Problem::kOracle:
      throw Error(ErrorKind::kValidation, "certify needs a solver problem");
  }
  out.ratio = out.optimum > 0.0 ? out.value / out.optimum : 1.0;
  return out;
}

}  // namespace

std::optional<std::uint32_t> MinSeedsToBudget(const SpreadEstimator& spread,
                                              const Campaign& campaign,
                                              AdId ad) {
  const std::uint32_t n = spread.num_users();
  if (n > 20)
    throw Error(ErrorKind::kLimit, "seed-count enumeration limited to 20 users");
  std::optional<std::uint32_t> best;
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    const auto size = static_cast<std::uint32_t>(std::popcount(m));
    if (best && size >= *best) continue;
    SeedSet seeds;
    for (UserId u = 0; u < n; ++u)
      if ((m >> u) & 1U) seeds.push_back(u);
    if (campaign[ad].alpha * spread.Spread(ad, seeds) >= campaign[ad].budget)
      best = size;
  }
  return best;
}

CertificationInstance MakeCertificationInstance(std::uint64_t seed,
                                                const CertifyOptions& options,
                                                bool two_seed_budgets) {
  std::mt19937_64 rng(DeriveSeed(seed, "instance"));
  const std::uint32_t max_ads = std::max<std::uint32_t>(options.max_ads, 1);
  const auto num_ads = static_cast<std::uint32_t>(UniformInt(rng, 1, max_ads));
  const std::uint32_t user_cap = std::min<std::uint32_t>(
      options.max_users,
      static_cast<std::uint32_t>(kMaxOracleGroundSet / num_ads));
  const std::uint32_t min_users = std::min(options.min_users, user_cap);
  if (user_cap == 0)
    throw Error(ErrorKind::kLimit, "certification instances need >= 1 user");
  const auto num_users =
      static_cast<std::uint32_t>(UniformInt(rng, min_users, user_cap));

  std::vector<std::vector<Edge>> per_ad(num_ads);
  for (AdId ad = 0; ad < num_ads; ++ad) {
    for (UserId u = 0; u < num_users; ++u)
      for (UserId v = 0; v < num_users; ++v)
        if (u != v && UniformUnit(rng) < 0.35 &&
            per_ad[ad].size() < ExactSpread::kMaxEdgesPerAd)
          per_ad[ad].push_back({u, v, Grid(rng, 0.05, 1.0)});
  }

  CertificationInstance inst;
  inst.graph = HyperSocialGraph(num_users, std::move(per_ad));
  inst.spread = std::make_unique<ExactSpread>(inst.graph);

  const SeedSet everyone = AllUsers(num_users);
  std::vector<Advertiser> ads(num_ads);
  for (AdId ad = 0; ad < num_ads; ++ad) {
    ads[ad].alpha = Grid(rng, 0.5, 2.0);
    if (two_seed_budgets) {
      double best_single = 0.0;
      for (UserId u = 0; u < num_users; ++u) {
        const SeedSet one{u};
        best_single = std::max(best_single, inst.spread->Spread(ad, one));
      }
      // Strictly above every single-seed revenue.
      ads[ad].budget =
          ads[ad].alpha * best_single * (1.0 + Grid(rng, 0.05, 1.5));
    } else {
      const double full = inst.spread->Spread(ad, everyone);
      ads[ad].budget = ads[ad].alpha * full * Grid(rng, 0.1, 1.25);
    }
  }
  inst.campaign = Campaign(std::move(ads));

  inst.constraints.kappa.resize(num_users);
  for (UserId u = 0; u < num_users; ++u)
    inst.constraints.kappa[u] =
        static_cast<std::uint32_t>(UniformInt(rng, 0, num_ads));
  inst.constraints.total_limit = static_cast<std::uint32_t>(
      UniformInt(rng, 1, static_cast<std::uint64_t>(num_users) * num_ads));

  inst.params.lambda1 = Grid(rng, 0.0, 1.0);
  inst.params.lambda2 = Grid(rng, 0.0, 1.0);
  inst.params.phi =
      AutoPhi(inst.campaign, inst.constraints, inst.params, *inst.spread);
  return inst;
}

CertifyReport Certify(const CertifyOptions& options) {
  if (options.problem == Problem::kOracle)
    throw Error(ErrorKind::kValidation, "certify needs a solver problem");

  CertifyReport report;
  report.options = options;
  report.bound = BoundFor(options.problem);
  report.outcomes.resize(options.instances);

  unsigned threads = options.threads ? options.threads
                                     : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1U, std::max(options.instances, 1U));

  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed.load()) {
      const std::uint32_t i = next.fetch_add(1);
      if (i >= options.instances) return;
      try {
        report.outcomes[i] = RunInstance(options, i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const bool randomized = options.problem == Problem::kUrmp ||
                          options.problem == Problem::kP2;
  double sum = 0.0;
  report.min_ratio = report.outcomes.empty() ? 1.0
                                             : report.outcomes.front().ratio;
  for (const InstanceOutcome& o : report.outcomes) {
    report.min_ratio = std::min(report.min_ratio, o.ratio);
    sum += o.ratio;
    if (!o.passed) ++report.violations;
    if (randomized && o.min_f_prime < 0.0) report.nonnegative_f_prime = false;
  }
  report.mean_ratio =
      report.outcomes.empty() ? 1.0 : sum / report.outcomes.size();
  report.passed = report.violations == 0 && report.nonnegative_f_prime;
  return report;
}

}  // namespace adalloc
