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

// Attention limits as a matroid over (user, ad) assignment pairs: a set of
// pairs is independent iff every user u appears in at most kappa_u pairs and
// the set has at most K pairs. Per-user groups plus the global cap form a
// laminar family, so this is a laminar matroid.

#ifndef ADALLOC_FEASIBILITY_HPP_
#define ADALLOC_FEASIBILITY_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "adalloc/model.hpp"

namespace adalloc {

struct AssignmentPair {
  UserId user = 0;
  AdId ad = 0;

  friend auto operator<=>(const AssignmentPair&,
                          const AssignmentPair&) = default;
};

bool IsIndependent(std::span<const AssignmentPair> pairs,
                   const AttentionConstraints& constraints);
bool IsIndependent(const Allocation& alloc,
                   const AttentionConstraints& constraints);

// True iff pairs + {candidate} is independent. `pairs` must be independent.
// Throws Error(kValidation) if candidate is already in pairs.
bool CanAdd(std::span<const AssignmentPair> pairs, AssignmentPair candidate,
            const AttentionConstraints& constraints);

// Incremental form used inside the solvers: O(1) per query.
class AttentionLedger {
 public:
  AttentionLedger(const AttentionConstraints& constraints,
                  std::uint32_t num_users);

  bool CanAdd(UserId user) const {
    return total_ < constraints_->total_limit &&
           per_user_[user] < constraints_->kappa[user];
  }
  void Add(UserId user) {
    ++per_user_[user];
    ++total_;
  }
  void Remove(UserId user) {
    --per_user_[user];
    --total_;
  }
  std::uint64_t total() const { return total_; }

 private:
  const AttentionConstraints* constraints_;
  std::vector<std::uint32_t> per_user_;
  std::uint64_t total_ = 0;
};

using IndependenceOracle = std::function<bool(
    std::span<const AssignmentPair>, const AttentionConstraints&)>;

// Largest ground set VerifyMatroidAxioms will enumerate.
inline constexpr std::size_t kMaxAxiomGroundSet = 12;

// Enumerates every subset of {0..num_users-1} x {0..num_ads-1} and checks
// downward closure (I1) and the exchange property (I2) for `oracle` (the
// C1/C2 oracle when empty). Throws Error(kLimit) when the ground set exceeds
// kMaxAxiomGroundSet pairs.
bool VerifyMatroidAxioms(const AttentionConstraints& constraints,
                         std::uint32_t num_users, std::uint32_t num_ads,
                         const IndependenceOracle& oracle = {});

}  // namespace adalloc

#endif  // ADALLOC_FEASIBILITY_HPP_
