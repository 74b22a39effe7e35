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

#include "adalloc/feasibility.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "adalloc/error.hpp"

namespace adalloc {

bool IsIndependent(std::span<const AssignmentPair> pairs,
                   const AttentionConstraints& constraints) {
  if (pairs.size() > constraints.total_limit) return false;
  std::vector<std::uint32_t> per_user(constraints.kappa.size(), 0);
  for (const AssignmentPair& p : pairs) {
    if (p.user >= per_user.size())
      throw Error(ErrorKind::kValidation,
                  "pair references user " + std::to_string(p.user) +
                      " outside the constraints");
    if (++per_user[p.user] > constraints.kappa[p.user]) return false;
  }
  return true;
}

bool IsIndependent(const Allocation& alloc,
                   const AttentionConstraints& constraints) {
  std::vector<AssignmentPair> pairs;
  for (AdId ad = 0; ad < alloc.num_ads(); ++ad)
    for (UserId u : alloc.seeds(ad)) pairs.push_back({u, ad});
  return IsIndependent(pairs, constraints);
}

bool CanAdd(std::span<const AssignmentPair> pairs, AssignmentPair candidate,
            const AttentionConstraints& constraints) {
  if (std::find(pairs.begin(), pairs.end(), candidate) != pairs.end())
    throw Error(ErrorKind::kValidation,
                "candidate (" + std::to_string(candidate.user) + "," +
                    std::to_string(candidate.ad) + ") is already selected");
  std::vector<AssignmentPair> extended(pairs.begin(), pairs.end());
  extended.push_back(candidate);
  return IsIndependent(extended, constraints);
}

AttentionLedger::AttentionLedger(const AttentionConstraints& constraints,
                                 std::uint32_t num_users)
    : constraints_(&constraints), per_user_(num_users, 0) {
  constraints.Validate(num_users);
}

bool VerifyMatroidAxioms(const AttentionConstraints& constraints,
                         std::uint32_t num_users, std::uint32_t num_ads,
                         const IndependenceOracle& oracle) {
  const std::size_t n = static_cast<std::size_t>(num_users) * num_ads;
  if (n > kMaxAxiomGroundSet)
    throw Error(ErrorKind::kLimit,
                "axiom check ground set has " + std::to_string(n) +
                    " pairs; limit is " + std::to_string(kMaxAxiomGroundSet));

  std::vector<AssignmentPair> ground;
  for (UserId u = 0; u < num_users; ++u)
    for (AdId a = 0; a < num_ads; ++a) ground.push_back({u, a});

  const std::uint32_t subsets = 1U << n;
  std::vector<bool> independent(subsets);
  std::vector<AssignmentPair> pairs;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    pairs.clear();
    for (std::size_t k = 0; k < n; ++k)
      if ((mask >> k) & 1U) pairs.push_back(ground[k]);
    independent[mask] = oracle ? oracle(pairs, constraints)
                               : IsIndependent(pairs, constraints);
  }

  // I1 (nonempty family, closed under taking subsets). Checking single-element
  // removals suffices: any subset is reached by a chain of them.
  if (!independent[0]) return false;
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    if (!independent[mask]) continue;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      if (!independent[mask ^ bit]) return false;
    }
  }

  // I2 over every pair of independent sets with |Y| > |X|.
  std::vector<std::uint32_t> members;
  for (std::uint32_t mask = 0; mask < subsets; ++mask)
    if (independent[mask]) members.push_back(mask);
  for (std::uint32_t x : members) {
    const int x_size = std::popcount(x);
    for (std::uint32_t y : members) {
      if (std::popcount(y) <= x_size) continue;
      bool extended = false;
      for (std::uint32_t rest = y & ~x; rest && !extended; rest &= rest - 1) {
        const std::uint32_t bit = rest & (~rest + 1);
        extended = independent[x | bit];
      }
      if (!extended) return false;
    }
  }
  return true;
}

}  // namespace adalloc
