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

// Reference implementations used as test oracles. They share no code with
// the library beyond the model types: plain recursion and brute force, no
// bitmask tricks, no caching.

#ifndef ADALLOC_TESTS_TEST_UTIL_HPP_
#define ADALLOC_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "adalloc/model.hpp"

namespace adalloc::testing {

// Users reachable from `seeds` when exactly the edges with live[k] set exist.
inline std::set<UserId> ReachableSet(const HyperSocialGraph& g, AdId ad,
                                     const std::vector<UserId>& seeds,
                                     const std::vector<bool>& live) {
  std::set<UserId> seen(seeds.begin(), seeds.end());
  std::vector<UserId> stack(seeds.begin(), seeds.end());
  const auto edges = g.edges(ad);
  while (!stack.empty()) {
    const UserId u = stack.back();
    stack.pop_back();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (live[k] && edges[k].src == u && seen.insert(edges[k].dst).second)
        stack.push_back(edges[k].dst);
    }
  }
  return seen;
}

// Expected reach by recursing over every edge's live/dead outcome.
inline double ReferenceSpread(const HyperSocialGraph& g, AdId ad,
                              const std::vector<UserId>& seeds) {
  const auto edges = g.edges(ad);
  std::vector<bool> live(edges.size());
  std::function<double(std::size_t, double)> rec = [&](std::size_t k,
                                                        double w) -> double {
    if (w == 0.0) return 0.0;
    if (k == edges.size())
      return w * static_cast<double>(ReachableSet(g, ad, seeds, live).size());
    live[k] = true;
    const double a = rec(k + 1, w * edges[k].prob);
    live[k] = false;
    const double b = rec(k + 1, w * (1.0 - edges[k].prob));
    return a + b;
  };
  return rec(0, 1.0);
}

inline double ReferenceU(double alpha, double budget, double sigma) {
  const double r = alpha * sigma;
  return r <= budget ? r : 2.0 * budget - r;
}

inline double ReferenceV(double alpha, double budget, double sigma) {
  return std::min(alpha * sigma, budget);
}

inline double ReferenceCost(const std::vector<std::vector<UserId>>& sets,
                            const AttentionConstraints& c, double lambda1,
                            double lambda2) {
  std::vector<double> n(c.kappa.size(), 0.0);
  double total = 0.0;
  for (const auto& s : sets)
    for (UserId u : s) {
      n[u] += 1.0;
      total += 1.0;
    }
  double part1 = 0.0;
  for (std::size_t u = 0; u < n.size(); ++u) {
    const double cap = c.kappa[u] == kUnbounded ? INFINITY : c.kappa[u];
    part1 += std::exp(std::max(0.0, n[u] - cap));
  }
  const double cap = c.total_limit == kUnbounded ? INFINITY : c.total_limit;
  return lambda1 * part1 + lambda2 * std::exp(std::max(0.0, total - cap));
}

inline bool ReferenceIndependent(const std::vector<std::vector<UserId>>& sets,
                                 const AttentionConstraints& c) {
  std::vector<std::uint64_t> n(c.kappa.size(), 0);
  std::uint64_t total = 0;
  for (const auto& s : sets)
    for (UserId u : s) {
      ++n[u];
      ++total;
    }
  for (std::size_t u = 0; u < n.size(); ++u)
    if (n[u] > c.kappa[u]) return false;
  return total <= c.total_limit;
}

// Every subset of {0..n-1}, as sorted vectors.
inline std::vector<std::vector<UserId>> AllSubsets(std::uint32_t n) {
  std::vector<std::vector<UserId>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<UserId> s;
    for (UserId u = 0; u < n; ++u)
      if (mask & (1u << u)) s.push_back(u);
    out.push_back(std::move(s));
  }
  return out;
}

// Every allocation of n users to m ads (each ad gets any subset).
inline std::vector<std::vector<std::vector<UserId>>> AllAllocations(
    std::uint32_t n, std::uint32_t m) {
  const auto subsets = AllSubsets(n);
  std::vector<std::vector<std::vector<UserId>>> out{{}};
  for (std::uint32_t ad = 0; ad < m; ++ad) {
    std::vector<std::vector<std::vector<UserId>>> next;
    for (const auto& partial : out)
      for (const auto& s : subsets) {
        auto a = partial;
        a.push_back(s);
        next.push_back(std::move(a));
      }
    out = std::move(next);
  }
  return out;
}

// Small random graph with at most `max_edges` edges per ad and probabilities
// on a 0.1 grid.
inline HyperSocialGraph RandomGraph(std::mt19937_64& rng, std::uint32_t n,
                                    std::uint32_t m, std::size_t max_edges) {
  std::vector<std::vector<Edge>> per_ad(m);
  for (auto& edges : per_ad) {
    for (UserId u = 0; u < n; ++u)
      for (UserId v = 0; v < n; ++v) {
        if (u == v || edges.size() >= max_edges) continue;
        if (rng() % 100 < 40)
          edges.push_back({u, v, static_cast<double>(rng() % 11) / 10.0});
      }
  }
  return HyperSocialGraph(n, std::move(per_ad));
}

inline double RandomReal(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace adalloc::testing

#endif  // ADALLOC_TESTS_TEST_UTIL_HPP_
