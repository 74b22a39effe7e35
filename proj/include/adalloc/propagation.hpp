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

// Independent-cascade spread under per-ad edge probabilities.
//
// Spread is always evaluated against a fixed realization of the randomness:
// either a sampled ensemble of live-edge graphs (common random numbers) or the
// full enumeration of live-edge patterns. Either way sigma(S) is a
// deterministic set function that is exactly monotone and submodular, which
// is what the greedy and double-greedy guarantees rely on.

#ifndef ADALLOC_PROPAGATION_HPP_
#define ADALLOC_PROPAGATION_HPP_

#include <cstdint>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "adalloc/model.hpp"

namespace adalloc {

// Seeds count as engagements: Spread(ad, S) >= |S| for nonempty S and
// Spread(ad, {}) == 0. `seeds` must be sorted and duplicate-free.
class SpreadEstimator {
 public:
  virtual ~SpreadEstimator() = default;

  virtual std::uint32_t num_users() const = 0;
  virtual std::uint32_t num_ads() const = 0;
  virtual double Spread(AdId ad, std::span<const UserId> seeds) const = 0;
  // True when Spread returns the exact expectation rather than a sample mean.
  virtual bool exact() const = 0;
};

// R live-edge realizations per ad. Realization (ad, r) keeps each ad-`ad`
// edge independently with its probability, drawn from a generator seeded by
// DeriveSeed(master, "live-edge", ad, r).
class LiveEdgeEnsemble final : public SpreadEstimator {
 public:
  static LiveEdgeEnsemble Sample(const HyperSocialGraph& graph,
                                 std::uint32_t num_samples,
                                 std::uint64_t rng_seed);

  std::uint32_t num_users() const override { return num_users_; }
  std::uint32_t num_ads() const override {
    return static_cast<std::uint32_t>(ads_.size());
  }
  std::uint32_t num_samples() const { return num_samples_; }
  bool exact() const override { return false; }

  // Indices into graph.edges(ad) of the edges live in sample r, ascending.
  std::vector<std::size_t> LiveEdges(AdId ad, std::uint32_t sample) const;
  bool IsLive(AdId ad, std::uint32_t sample, std::size_t edge) const;

  // Users reachable from `seeds` along live edges of sample r (seeds included).
  std::vector<UserId> Reach(AdId ad, std::uint32_t sample,
                            std::span<const UserId> seeds) const;

  // Sum over samples of |reach_r(seeds)|; exact integer arithmetic.
  std::uint64_t TotalReach(AdId ad, std::span<const UserId> seeds) const;

  double Spread(AdId ad, std::span<const UserId> seeds) const override;

 private:
  struct AdSamples {
    // Out-adjacency in CSR form; edge_index maps CSR slots back to the
    // position of the edge in graph.edges(ad).
    std::vector<std::uint32_t> offsets;
    std::vector<UserId> targets;
    std::vector<std::uint32_t> edge_index;
    std::size_t num_edges = 0;
    std::size_t words_per_sample = 0;
    std::vector<std::uint64_t> live_bits;  // num_samples * words_per_sample
  };

  std::size_t CountReach(const AdSamples& ad, std::uint32_t sample,
                         std::span<const UserId> seeds,
                         std::vector<std::uint32_t>& stamp,
                         std::uint32_t mark,
                         std::vector<UserId>& queue) const;

  std::uint32_t num_users_ = 0;
  std::uint32_t num_samples_ = 0;
  std::vector<AdSamples> ads_;
};

// Exact expectation by enumerating all 2^|E_ad| live-edge patterns weighted by
// their probability. Limited to kMaxEdgesPerAd edges per ad.
class ExactSpread final : public SpreadEstimator {
 public:
  static constexpr std::size_t kMaxEdgesPerAd = 15;

  // Throws Error(kLimit) when some ad has more than kMaxEdgesPerAd edges.
  explicit ExactSpread(const HyperSocialGraph& graph);

  std::uint32_t num_users() const override { return num_users_; }
  std::uint32_t num_ads() const override {
    return static_cast<std::uint32_t>(ads_.size());
  }
  bool exact() const override { return true; }

  double Spread(AdId ad, std::span<const UserId> seeds) const override;

 private:
  struct Pattern {
    double weight;
    // reach[k]: bitmask over local nodes reachable from local node k.
    std::vector<std::uint32_t> reach;
  };
  struct AdPatterns {
    std::vector<std::int32_t> local_of;  // user -> local node or -1
    std::vector<Pattern> patterns;
  };

  double Compute(AdId ad, std::span<const UserId> seeds) const;

  std::uint32_t num_users_ = 0;
  std::vector<AdPatterns> ads_;

  // Memo keyed by (ad, seed bitmask); only used when num_users <= 64.
  struct KeyHash {
    std::size_t operator()(const std::pair<AdId, std::uint64_t>& k) const {
      return std::hash<std::uint64_t>{}(k.second * 0x9e3779b97f4a7c15ULL ^
                                        k.first);
    }
  };
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::pair<AdId, std::uint64_t>, double, KeyHash>
      memo_;
};

// One forward IC run: seeds are active at step 0; every newly activated user
// gets one chance per inactive out-neighbor, succeeding with p_ad(u, v).
// Returns the final active set, sorted.
SeedSet SimulateCascade(const HyperSocialGraph& graph, AdId ad,
                        std::span<const UserId> seeds, std::uint64_t rng_seed);

}  // namespace adalloc

#endif  // ADALLOC_PROPAGATION_HPP_
