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

// Domain model: per-ad diffusion graphs over a shared user set, the
// advertisers' prices and budgets, seed allocations and attention limits.
//
// Users and ads are dense 0-based indices. All types are plain values and are
// immutable once validated.

#ifndef ADALLOC_MODEL_HPP_
#define ADALLOC_MODEL_HPP_

#include <cstdint>
#include <istream>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adalloc {

using UserId = std::uint32_t;
using AdId = std::uint32_t;

// Attention limits at or above this value are written as "inf".
inline constexpr std::uint32_t kUnbounded =
    std::numeric_limits<std::uint32_t>::max();

struct Edge {
  UserId src = 0;
  UserId dst = 0;
  double prob = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// G = (G_1, ..., G_m): one directed edge list per ad, each edge carrying the
// ad-specific activation probability p_i(u, v).
class HyperSocialGraph {
 public:
  HyperSocialGraph() = default;

  // Validates: endpoints < num_users, probabilities in [0, 1], no duplicate
  // (src, dst) within one ad. Throws Error(kValidation).
  HyperSocialGraph(std::uint32_t num_users,
                   std::vector<std::vector<Edge>> per_ad_edges);

  std::uint32_t num_users() const { return num_users_; }
  std::uint32_t num_ads() const {
    return static_cast<std::uint32_t>(per_ad_edges_.size());
  }
  std::span<const Edge> edges(AdId ad) const { return per_ad_edges_.at(ad); }
  std::size_t num_edges() const;

  friend bool operator==(const HyperSocialGraph&,
                         const HyperSocialGraph&) = default;

 private:
  std::uint32_t num_users_ = 0;
  std::vector<std::vector<Edge>> per_ad_edges_;
};

struct Advertiser {
  double alpha = 1.0;   // price per engagement, > 0
  double budget = 0.0;  // maximum payment B_i, >= 0
};

class Campaign {
 public:
  Campaign() = default;
  explicit Campaign(std::vector<Advertiser> advertisers);

  std::uint32_t num_ads() const {
    return static_cast<std::uint32_t>(advertisers_.size());
  }
  const Advertiser& operator[](AdId ad) const { return advertisers_.at(ad); }
  std::span<const Advertiser> advertisers() const { return advertisers_; }
  double total_budget() const;

 private:
  std::vector<Advertiser> advertisers_;
};

// Sorted, duplicate-free list of user indices.
using SeedSet = std::vector<UserId>;

// One seed set per ad; the 0/1 allocation matrix X with X[u][ad] = 1 iff u is
// in seed_sets[ad].
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::uint32_t num_ads) : seed_sets_(num_ads) {}
  // Sorts and deduplicates every set.
  explicit Allocation(std::vector<SeedSet> seed_sets);

  std::uint32_t num_ads() const {
    return static_cast<std::uint32_t>(seed_sets_.size());
  }
  const SeedSet& seeds(AdId ad) const { return seed_sets_.at(ad); }
  std::span<const SeedSet> seed_sets() const { return seed_sets_; }

  bool contains(UserId user, AdId ad) const;
  // Both return false when nothing changed.
  bool insert(UserId user, AdId ad);
  bool erase(UserId user, AdId ad);
  void set_seeds(AdId ad, SeedSet seeds);

  std::size_t total_assignments() const;

  // Throws Error(kValidation) unless the allocation has `num_ads` sets and
  // every user index is < num_users.
  void Validate(std::uint32_t num_users, std::uint32_t num_ads) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<SeedSet> seed_sets_;
};

struct AttentionConstraints {
  std::vector<std::uint32_t> kappa;  // per-user limit, one per user
  std::uint32_t total_limit = kUnbounded;  // K

  static AttentionConstraints Uniform(std::uint32_t num_users,
                                      std::uint32_t kappa,
                                      std::uint32_t total_limit);
  void Validate(std::uint32_t num_users) const;
};

struct AttentionCounts {
  std::vector<std::uint32_t> per_user;  // row sums of X
  std::uint64_t total = 0;              // sum of all entries of X
};

AttentionCounts AllocationColumnSums(const Allocation& alloc,
                                     std::uint32_t num_users);

// ---------------------------------------------------------------------------
// Text formats.
//
// Graph:       optional header `users=<n> ads=<m>`, `#` comments, data lines
//              `src dst ad prob`.
// Campaign:    lines `ad alpha budget`; ads must cover 0..m-1 exactly once.
// Constraints: lines `user kappa` plus one line `K <value>`; users absent
//              from the file are unbounded. `inf` is accepted for any limit.
// ---------------------------------------------------------------------------

HyperSocialGraph ParseGraph(std::istream& in);
HyperSocialGraph ParseGraph(std::string_view text);
// Canonical text form: header line followed by edges in (ad, storage) order.
std::string SerializeGraph(const HyperSocialGraph& graph);
// Shared-topology convenience: every `src dst prob` line is copied to each ad.
HyperSocialGraph ParseSharedTopology(std::string_view text,
                                     std::uint32_t num_ads,
                                     std::uint32_t num_users = 0);
// Expands each edge into two arcs; used for undirected inputs.
HyperSocialGraph Symmetrize(const HyperSocialGraph& graph);

Campaign ParseCampaign(std::string_view text);
std::string SerializeCampaign(const Campaign& campaign);

AttentionConstraints ParseConstraints(std::string_view text,
                                      std::uint32_t num_users);

// Reads a whole file; throws Error(kIo) when it cannot be opened.
std::string ReadFile(const std::string& path);

// ---------------------------------------------------------------------------
// Synthetic instances.
// ---------------------------------------------------------------------------

enum class GraphKind { kChain, kStar, kErdosRenyi, kIsolated };

GraphKind ParseGraphKind(std::string_view name);
std::string_view GraphKindName(GraphKind kind);

// Default edge density of the Erdos-Renyi generator: each ordered pair is
// present independently with this probability (drawn separately per ad) and
// labeled with `prob`.
inline constexpr double kErdosRenyiDensity = 0.3;

// Deterministic for fixed arguments. Throws Error(kValidation) on
// num_users == 0, num_ads == 0 or a probability outside [0, 1].
HyperSocialGraph GenerateSynthetic(GraphKind kind, std::uint32_t num_users,
                                   std::uint32_t num_ads, double prob,
                                   std::uint64_t rng_seed,
                                   double density = kErdosRenyiDensity);

}  // namespace adalloc

#endif  // ADALLOC_MODEL_HPP_
