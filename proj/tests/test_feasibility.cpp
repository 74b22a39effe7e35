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

#include <gtest/gtest.h>

#include <random>

#include "adalloc/error.hpp"
#include "test_util.hpp"

namespace adalloc {
namespace {

using Pairs = std::vector<AssignmentPair>;

TEST(IsIndependentTest, EmptySet) {
  EXPECT_TRUE(IsIndependent(Pairs{}, AttentionConstraints::Uniform(2, 0, 0)));
}

TEST(IsIndependentTest, PerUserLimit) {
  auto c = AttentionConstraints::Uniform(2, 5, kUnbounded);
  c.kappa[0] = 1;
  EXPECT_FALSE(IsIndependent(Pairs{{0, 0}, {0, 1}}, c));
  EXPECT_TRUE(IsIndependent(Pairs{{0, 0}, {1, 1}}, c));
}

TEST(IsIndependentTest, TotalLimit) {
  const auto c = AttentionConstraints::Uniform(3, 5, 2);
  EXPECT_FALSE(IsIndependent(Pairs{{0, 0}, {1, 0}, {2, 0}}, c));
  EXPECT_TRUE(IsIndependent(Pairs{{0, 0}, {1, 0}}, c));
}

TEST(IsIndependentTest, AllocationOverloadAgrees) {
  const auto c = AttentionConstraints::Uniform(2, 1, 3);
  EXPECT_FALSE(IsIndependent(Allocation({{0}, {0}}), c));
  EXPECT_TRUE(IsIndependent(Allocation({{0}, {1}}), c));
}

TEST(CanAddTest, EmptySet) {
  EXPECT_TRUE(CanAdd(Pairs{}, {0, 0}, AttentionConstraints::Uniform(1, 1, 1)));
}

TEST(CanAddTest, UserAtLimit) {
  const auto c = AttentionConstraints::Uniform(2, 1, kUnbounded);
  EXPECT_FALSE(CanAdd(Pairs{{0, 0}}, {0, 1}, c));
  EXPECT_TRUE(CanAdd(Pairs{{0, 0}}, {1, 1}, c));
}

TEST(CanAddTest, TotalAtLimit) {
  const auto c = AttentionConstraints::Uniform(3, 2, 2);
  EXPECT_FALSE(CanAdd(Pairs{{0, 0}, {1, 0}}, {2, 0}, c));
}

TEST(CanAddTest, DuplicateCandidateRejected) {
  EXPECT_THROW(CanAdd(Pairs{{0, 0}}, {0, 0},
                      AttentionConstraints::Uniform(1, 2, 2)),
               Error);
}

TEST(AttentionLedgerTest, TracksCounts) {
  const auto c = AttentionConstraints::Uniform(2, 1, 2);
  AttentionLedger ledger(c, 2);
  EXPECT_TRUE(ledger.CanAdd(0));
  ledger.Add(0);
  EXPECT_FALSE(ledger.CanAdd(0));
  ledger.Add(1);
  EXPECT_EQ(ledger.total(), 2u);
  ledger.Remove(0);
  EXPECT_TRUE(ledger.CanAdd(0));
}

TEST(MatroidAxiomsTest, UniformKappaOneTotalUsers) {
  EXPECT_TRUE(VerifyMatroidAxioms(AttentionConstraints::Uniform(3, 1, 3), 3, 2));
}

TEST(MatroidAxiomsTest, UniformMatroid) {
  EXPECT_TRUE(VerifyMatroidAxioms(
      AttentionConstraints::Uniform(3, kUnbounded, 3), 3, 2));
}

TEST(MatroidAxiomsTest, RandomConfigurations) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t n = 1 + rng() % 4;
    const std::uint32_t m = 1 + rng() % 3;
    if (n * m > kMaxAxiomGroundSet) continue;
    AttentionConstraints c;
    c.kappa.resize(n);
    for (auto& k : c.kappa) k = rng() % (m + 1);
    c.total_limit = rng() % (n * m + 1);
    EXPECT_TRUE(VerifyMatroidAxioms(c, n, m));
  }
}

TEST(MatroidAxiomsTest, EqualityTotalCheckIsNotAMatroid) {
  const IndependenceOracle corrupted = [](std::span<const AssignmentPair> p,
                                          const AttentionConstraints& c) {
    std::vector<std::uint32_t> n(c.kappa.size(), 0);
    for (const auto& x : p)
      if (++n[x.user] > c.kappa[x.user]) return false;
    return p.size() == c.total_limit;
  };
  EXPECT_FALSE(VerifyMatroidAxioms(AttentionConstraints::Uniform(2, 2, 2), 2, 2,
                                   corrupted));
}

TEST(MatroidAxiomsTest, MissingSingletonsBreakDownwardClosure) {
  const IndependenceOracle no_singletons =
      [](std::span<const AssignmentPair> p, const AttentionConstraints&) {
        return p.size() != 1;
      };
  EXPECT_FALSE(VerifyMatroidAxioms(AttentionConstraints::Uniform(2, 2, 4), 2, 1,
                                   no_singletons));
}

TEST(MatroidAxiomsTest, GroundSetLimit) {
  try {
    VerifyMatroidAxioms(AttentionConstraints::Uniform(5, 1, 5), 5, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLimit);
  }
}

// Every maximal independent set has rank min(K, sum of min(kappa_u, ads)).
TEST(MatroidRankTest, MaximalSetsShareSize) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t n = 1 + rng() % 3;
    const std::uint32_t m = 1 + rng() % 3;
    AttentionConstraints c;
    c.kappa.resize(n);
    std::uint64_t capacity = 0;
    for (auto& k : c.kappa) {
      k = rng() % (m + 2);
      capacity += std::min<std::uint64_t>(k, m);
    }
    c.total_limit = rng() % (n * m + 2);
    const std::uint64_t rank = std::min<std::uint64_t>(capacity, c.total_limit);
    const std::uint32_t ground = n * m;
    for (std::uint32_t mask = 0; mask < (1u << ground); ++mask) {
      Pairs p;
      for (std::uint32_t k = 0; k < ground; ++k)
        if (mask & (1u << k)) p.push_back({k / m, k % m});
      if (!IsIndependent(p, c)) continue;
      bool maximal = true;
      for (std::uint32_t k = 0; k < ground && maximal; ++k)
        if (!(mask & (1u << k)) && CanAdd(p, {k / m, k % m}, c)) maximal = false;
      if (maximal) EXPECT_EQ(p.size(), rank);
    }
  }
}

TEST(IsIndependentTest, MatchesReference) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    AttentionConstraints c;
    c.kappa.resize(3);
    for (auto& k : c.kappa) k = rng() % 3;
    c.total_limit = rng() % 7;
    for (const auto& sets : testing::AllAllocations(3, 2))
      EXPECT_EQ(IsIndependent(Allocation(sets), c),
                testing::ReferenceIndependent(sets, c));
  }
}

}  // namespace
}  // namespace adalloc
