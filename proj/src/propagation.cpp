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

#include "adalloc/propagation.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "adalloc/error.hpp"
#include "adalloc/seeding.hpp"

namespace adalloc {

// --- LiveEdgeEnsemble -------------------------------------------------------

LiveEdgeEnsemble LiveEdgeEnsemble::Sample(const HyperSocialGraph& graph,
                                          std::uint32_t num_samples,
                                          std::uint64_t rng_seed) {
  if (num_samples == 0)
    throw Error(ErrorKind::kValidation, "ensemble needs at least one sample");

  LiveEdgeEnsemble ens;
  ens.num_users_ = graph.num_users();
  ens.num_samples_ = num_samples;
  ens.ads_.resize(graph.num_ads());

  for (AdId ad = 0; ad < graph.num_ads(); ++ad) {
    auto edges = graph.edges(ad);
    AdSamples& s = ens.ads_[ad];
    s.num_edges = edges.size();
    s.offsets.assign(graph.num_users() + 1, 0);
    for (const Edge& e : edges) ++s.offsets[e.src + 1];
    for (std::size_t u = 0; u < graph.num_users(); ++u)
      s.offsets[u + 1] += s.offsets[u];
    s.targets.resize(edges.size());
    s.edge_index.resize(edges.size());
    std::vector<std::uint32_t> cursor(s.offsets.begin(), s.offsets.end() - 1);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      std::uint32_t slot = cursor[edges[k].src]++;
      s.targets[slot] = edges[k].dst;
      s.edge_index[slot] = static_cast<std::uint32_t>(k);
    }

    s.words_per_sample = (edges.size() + 63) / 64;
    s.live_bits.assign(s.words_per_sample * num_samples, 0);
    for (std::uint32_t r = 0; r < num_samples; ++r) {
      std::mt19937_64 rng(DeriveSeed(rng_seed, "live-edge", ad, r));
      std::uint64_t* words = s.live_bits.data() + r * s.words_per_sample;
      for (std::size_t k = 0; k < edges.size(); ++k) {
        // One draw per edge regardless of p keeps the stream aligned.
        if (UniformUnit(rng) < edges[k].prob)
          words[k / 64] |= std::uint64_t{1} << (k % 64);
      }
    }
  }
  return ens;
}

bool LiveEdgeEnsemble::IsLive(AdId ad, std::uint32_t sample,
                              std::size_t edge) const {
  const AdSamples& s = ads_.at(ad);
  const std::uint64_t* words = s.live_bits.data() + sample * s.words_per_sample;
  return (words[edge / 64] >> (edge % 64)) & 1U;
}

std::vector<std::size_t> LiveEdgeEnsemble::LiveEdges(
    AdId ad, std::uint32_t sample) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < ads_.at(ad).num_edges; ++k)
    if (IsLive(ad, sample, k)) out.push_back(k);
  return out;
}

std::size_t LiveEdgeEnsemble::CountReach(const AdSamples& s,
                                         std::uint32_t sample,
                                         std::span<const UserId> seeds,
                                         std::vector<std::uint32_t>& stamp,
                                         std::uint32_t mark,
                                         std::vector<UserId>& queue) const {
  const std::uint64_t* words = s.live_bits.data() + sample * s.words_per_sample;
  queue.clear();
  for (UserId u : seeds) {
    if (stamp[u] != mark) {
      stamp[u] = mark;
      queue.push_back(u);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    UserId u = queue[head];
    for (std::uint32_t slot = s.offsets[u]; slot < s.offsets[u + 1]; ++slot) {
      std::uint32_t k = s.edge_index[slot];
      if (!((words[k / 64] >> (k % 64)) & 1U)) continue;
      UserId v = s.targets[slot];
      if (stamp[v] != mark) {
        stamp[v] = mark;
        queue.push_back(v);
      }
    }
  }
  return queue.size();
}

std::vector<UserId> LiveEdgeEnsemble::Reach(
    AdId ad, std::uint32_t sample, std::span<const UserId> seeds) const {
  std::vector<std::uint32_t> stamp(num_users_, 0);
  std::vector<UserId> queue;
  CountReach(ads_.at(ad), sample, seeds, stamp, 1, queue);
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::uint64_t LiveEdgeEnsemble::TotalReach(
    AdId ad, std::span<const UserId> seeds) const {
  if (seeds.empty()) return 0;
  const AdSamples& s = ads_.at(ad);
  if (s.num_edges == 0)
    return static_cast<std::uint64_t>(seeds.size()) * num_samples_;
  std::vector<std::uint32_t> stamp(num_users_, 0);
  std::vector<UserId> queue;
  queue.reserve(num_users_);
  std::uint64_t total = 0;
  for (std::uint32_t r = 0; r < num_samples_; ++r)
    total += CountReach(s, r, seeds, stamp, r + 1, queue);
  return total;
}

double LiveEdgeEnsemble::Spread(AdId ad, std::span<const UserId> seeds) const {
  return static_cast<double>(TotalReach(ad, seeds)) /
         static_cast<double>(num_samples_);
}

// --- ExactSpread ------------------------------------------------------------

ExactSpread::ExactSpread(const HyperSocialGraph& graph)
    : num_users_(graph.num_users()), ads_(graph.num_ads()) {
  for (AdId ad = 0; ad < graph.num_ads(); ++ad) {
    auto edges = graph.edges(ad);
    if (edges.size() > kMaxEdgesPerAd)
      throw Error(ErrorKind::kLimit,
                  "exact spread supports at most " +
                      std::to_string(kMaxEdgesPerAd) + " edges per ad; ad " +
                      std::to_string(ad) + " has " +
                      std::to_string(edges.size()));
    AdPatterns& ap = ads_[ad];
    ap.local_of.assign(num_users_, -1);
    std::int32_t num_local = 0;
    for (const Edge& e : edges) {
      if (ap.local_of[e.src] < 0) ap.local_of[e.src] = num_local++;
      if (ap.local_of[e.dst] < 0) ap.local_of[e.dst] = num_local++;
    }

    const std::size_t m = edges.size();
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
      double w = 1.0;
      for (std::size_t k = 0; k < m; ++k)
        w *= ((mask >> k) & 1U) ? edges[k].prob : 1.0 - edges[k].prob;
      if (w == 0.0) continue;

      // Transitive closure over at most 30 local nodes.
      std::vector<std::uint32_t> reach(num_local);
      for (std::int32_t k = 0; k < num_local; ++k) reach[k] = 1U << k;
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t k = 0; k < m; ++k) {
          if (!((mask >> k) & 1U)) continue;
          std::int32_t a = ap.local_of[edges[k].src];
          std::int32_t b = ap.local_of[edges[k].dst];
          for (std::int32_t x = 0; x < num_local; ++x) {
            if ((reach[x] >> a) & 1U) {
              std::uint32_t next = reach[x] | reach[b];
              if (next != reach[x]) {
                reach[x] = next;
                changed = true;
              }
            }
          }
        }
      }
      ap.patterns.push_back({w, std::move(reach)});
    }
  }
}

double ExactSpread::Compute(AdId ad, std::span<const UserId> seeds) const {
  const AdPatterns& ap = ads_.at(ad);
  double untouched = 0.0;
  std::vector<std::int32_t> locals;
  for (UserId u : seeds) {
    std::int32_t l = ap.local_of.at(u);
    if (l < 0) {
      untouched += 1.0;
    } else {
      locals.push_back(l);
    }
  }
  if (locals.empty()) return untouched;
  double expected = 0.0;
  for (const Pattern& p : ap.patterns) {
    std::uint32_t covered = 0;
    for (std::int32_t l : locals) covered |= p.reach[l];
    expected += p.weight * std::popcount(covered);
  }
  return untouched + expected;
}

double ExactSpread::Spread(AdId ad, std::span<const UserId> seeds) const {
  if (seeds.empty()) return 0.0;
  if (num_users_ > 64) return Compute(ad, seeds);
  std::uint64_t mask = 0;
  for (UserId u : seeds) mask |= std::uint64_t{1} << u;
  const auto key = std::make_pair(ad, mask);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  double value = Compute(ad, seeds);
  std::lock_guard<std::mutex> lock(memo_mutex_);
  memo_.emplace(key, value);
  return value;
}

// --- Cascade simulation -----------------------------------------------------

SeedSet SimulateCascade(const HyperSocialGraph& graph, AdId ad,
                        std::span<const UserId> seeds,
                        std::uint64_t rng_seed) {
  const auto edges = graph.edges(ad);
  std::vector<std::vector<std::size_t>> out(graph.num_users());
  for (std::size_t k = 0; k < edges.size(); ++k) out[edges[k].src].push_back(k);

  std::mt19937_64 rng(rng_seed);
  std::vector<bool> active(graph.num_users(), false);
  std::vector<UserId> frontier;
  for (UserId u : seeds) {
    if (!active.at(u)) {
      active[u] = true;
      frontier.push_back(u);
    }
  }
  std::vector<UserId> activated = frontier;
  while (!frontier.empty()) {
    std::vector<UserId> next;
    for (UserId u : frontier) {
      for (std::size_t k : out[u]) {
        UserId v = edges[k].dst;
        if (active[v]) continue;
        if (UniformUnit(rng) < edges[k].prob) {
          active[v] = true;
          next.push_back(v);
        }
      }
    }
    activated.insert(activated.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(activated.begin(), activated.end());
  return activated;
}

}  // namespace adalloc
