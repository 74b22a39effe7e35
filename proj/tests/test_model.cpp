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

#include "adalloc/model.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <sstream>

#include "adalloc/error.hpp"

namespace adalloc {
namespace {

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::kInternal;
}

TEST(ParseGraphTest, HeaderOnlyGivesEdgelessGraph) {
  const HyperSocialGraph g = ParseGraph(std::string_view("users=3 ads=1\n"));
  EXPECT_EQ(g.num_users(), 3u);
  EXPECT_EQ(g.num_ads(), 1u);
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(ParseGraphTest, ChainLines) {
  const HyperSocialGraph g =
      ParseGraph(std::string_view("0 1 0 1.0\n1 2 0 1.0\n"));
  EXPECT_EQ(g.num_users(), 3u);
  ASSERT_EQ(g.num_ads(), 1u);
  ASSERT_EQ(g.edges(0).size(), 2u);
  EXPECT_EQ(g.edges(0)[0], (Edge{0, 1, 1.0}));
  EXPECT_EQ(g.edges(0)[1], (Edge{1, 2, 1.0}));
}

TEST(ParseGraphTest, CommentsAndBlankLinesIgnored) {
  const HyperSocialGraph g = ParseGraph(std::string_view(
      "# a comment\nusers=4 ads=2\n\n  # indented\n0 3 1 0.25\n"));
  EXPECT_EQ(g.num_users(), 4u);
  EXPECT_EQ(g.num_ads(), 2u);
  EXPECT_TRUE(g.edges(0).empty());
  EXPECT_EQ(g.edges(1)[0], (Edge{0, 3, 0.25}));
}

TEST(ParseGraphTest, ProbabilityOutOfRange) {
  EXPECT_EQ(KindOf([] { ParseGraph(std::string_view("0 1 0 1.5\n")); }),
            ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseGraph(std::string_view("0 1 0 -0.1\n")); }),
            ErrorKind::kParse);
}

TEST(ParseGraphTest, ErrorMessageNamesLine) {
  try {
    ParseGraph(std::string_view("0 1 0 0.5\n\n0 2 0 2\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
}

TEST(ParseGraphTest, MalformedInputs) {
  for (const char* text : {"0 1 0\n", "0 1 0 0.5 9\n", "a 1 0 0.5\n",
                           "-1 1 0 0.5\n", "0 1 0 0.5\n0 1 0 0.7\n",
                           "users=2 ads=1\n0 2 0 0.5\n",
                           "users=2 ads=1\n0 1 1 0.5\n", "0 1 0 nan\n"}) {
    EXPECT_EQ(KindOf([&] { ParseGraph(std::string_view(text)); }),
              ErrorKind::kParse)
        << text;
  }
}

TEST(ParseGraphTest, SameArcUnderDifferentAdsIsAllowed) {
  const HyperSocialGraph g =
      ParseGraph(std::string_view("0 1 0 0.5\n0 1 1 0.7\n"));
  EXPECT_EQ(g.num_ads(), 2u);
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(ParseGraphTest, StreamOverload) {
  std::istringstream in("0 1 0 0.5\n");
  EXPECT_EQ(ParseGraph(in).num_edges(), 1u);
}

TEST(ParseGraphTest, SerializeRoundTrip) {
  const HyperSocialGraph g =
      GenerateSynthetic(GraphKind::kErdosRenyi, 8, 3, 0.37, 11);
  EXPECT_EQ(ParseGraph(std::string_view(SerializeGraph(g))), g);
}

TEST(HyperSocialGraphTest, ValidatesEdges) {
  EXPECT_EQ(KindOf([] { HyperSocialGraph(2, {{{0, 2, 0.5}}}); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { HyperSocialGraph(2, {{{0, 1, 1.1}}}); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] {
              HyperSocialGraph(2, {{{0, 1, 0.1}, {0, 1, 0.2}}});
            }),
            ErrorKind::kValidation);
}

TEST(SharedTopologyTest, ReplicatesEdgesAcrossAds) {
  const HyperSocialGraph g =
      ParseSharedTopology("0 1 0.5\n1 2 0.25\n", 3);
  EXPECT_EQ(g.num_ads(), 3u);
  EXPECT_EQ(g.num_users(), 3u);
  for (AdId ad = 0; ad < 3; ++ad) EXPECT_EQ(g.edges(ad).size(), 2u);
}

TEST(SymmetrizeTest, AddsReverseArcsOnce) {
  const HyperSocialGraph g =
      Symmetrize(ParseGraph(std::string_view("0 1 0 0.5\n1 0 0 0.5\n1 2 0 0.3\n")));
  EXPECT_EQ(g.edges(0).size(), 4u);
}

TEST(GenerateSyntheticTest, Isolated) {
  const HyperSocialGraph g = GenerateSynthetic(GraphKind::kIsolated, 4, 2, 0.5, 7);
  EXPECT_EQ(g.num_users(), 4u);
  EXPECT_EQ(g.num_ads(), 2u);
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(GenerateSyntheticTest, Chain) {
  const HyperSocialGraph g = GenerateSynthetic(GraphKind::kChain, 3, 1, 1.0, 7);
  ASSERT_EQ(g.edges(0).size(), 2u);
  EXPECT_EQ(g.edges(0)[0], (Edge{0, 1, 1.0}));
  EXPECT_EQ(g.edges(0)[1], (Edge{1, 2, 1.0}));
}

TEST(GenerateSyntheticTest, Star) {
  const HyperSocialGraph g = GenerateSynthetic(GraphKind::kStar, 3, 1, 0.5, 7);
  ASSERT_EQ(g.edges(0).size(), 2u);
  EXPECT_EQ(g.edges(0)[0], (Edge{0, 1, 0.5}));
  EXPECT_EQ(g.edges(0)[1], (Edge{0, 2, 0.5}));
}

TEST(GenerateSyntheticTest, ErdosRenyiDeterministicPerSeed) {
  const auto a = GenerateSynthetic(GraphKind::kErdosRenyi, 10, 2, 0.3, 7);
  const auto b = GenerateSynthetic(GraphKind::kErdosRenyi, 10, 2, 0.3, 7);
  const auto c = GenerateSynthetic(GraphKind::kErdosRenyi, 10, 2, 0.3, 8);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (AdId ad = 0; ad < a.num_ads(); ++ad)
    for (const Edge& e : a.edges(ad)) {
      EXPECT_NE(e.src, e.dst);
      EXPECT_DOUBLE_EQ(e.prob, 0.3);
    }
}

TEST(GenerateSyntheticTest, ErdosRenyiDensityExtremes) {
  EXPECT_EQ(GenerateSynthetic(GraphKind::kErdosRenyi, 6, 1, 0.5, 1, 0.0)
                .num_edges(),
            0u);
  EXPECT_EQ(GenerateSynthetic(GraphKind::kErdosRenyi, 6, 1, 0.5, 1, 1.0)
                .num_edges(),
            30u);
}

TEST(GenerateSyntheticTest, RejectsBadSpecs) {
  EXPECT_EQ(KindOf([] { GenerateSynthetic(GraphKind::kChain, 0, 1, 0.5, 1); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { GenerateSynthetic(GraphKind::kChain, 3, 0, 0.5, 1); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { GenerateSynthetic(GraphKind::kChain, 3, 1, 1.5, 1); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { ParseGraphKind("ring"); }), ErrorKind::kValidation);
  EXPECT_EQ(ParseGraphKind("er"), GraphKind::kErdosRenyi);
  EXPECT_EQ(GraphKindName(GraphKind::kStar), "star");
}

TEST(CampaignTest, ParseAndTotals) {
  const Campaign c = ParseCampaign("# ads\n1 2.0 10\n0 1.0 3\n");
  ASSERT_EQ(c.num_ads(), 2u);
  EXPECT_DOUBLE_EQ(c[0].alpha, 1.0);
  EXPECT_DOUBLE_EQ(c[1].budget, 10.0);
  EXPECT_DOUBLE_EQ(c.total_budget(), 13.0);
  EXPECT_EQ(ParseCampaign(SerializeCampaign(c)).total_budget(), 13.0);
}

TEST(CampaignTest, Rejects) {
  EXPECT_EQ(KindOf([] { ParseCampaign("0 0 1\n"); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseCampaign("0 1 -1\n"); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseCampaign("0 1 1\n0 1 2\n"); }),
            ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseCampaign("1 1 1\n"); }), ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { ParseCampaign(""); }), ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { Campaign({{-1.0, 1.0}}); }), ErrorKind::kValidation);
}

TEST(ConstraintsTest, ParseWithDefaults) {
  const AttentionConstraints c = ParseConstraints("0 1\n2 inf\nK 4\n", 3);
  ASSERT_EQ(c.kappa.size(), 3u);
  EXPECT_EQ(c.kappa[0], 1u);
  EXPECT_EQ(c.kappa[1], kUnbounded);
  EXPECT_EQ(c.kappa[2], kUnbounded);
  EXPECT_EQ(c.total_limit, 4u);
}

TEST(ConstraintsTest, Rejects) {
  EXPECT_EQ(KindOf([] { ParseConstraints("3 1\n", 3); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseConstraints("0 -1\n", 3); }), ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseConstraints("K 1\nK 2\n", 3); }),
            ErrorKind::kParse);
  EXPECT_EQ(KindOf([] { ParseConstraints("0 1\n0 2\n", 3); }),
            ErrorKind::kParse);
  AttentionConstraints bad = AttentionConstraints::Uniform(2, 1, 1);
  EXPECT_EQ(KindOf([&] { bad.Validate(3); }), ErrorKind::kValidation);
}

TEST(AllocationTest, NormalizesAndEdits) {
  Allocation a({{2, 0, 2}, {}});
  EXPECT_EQ(a.seeds(0), (SeedSet{0, 2}));
  EXPECT_TRUE(a.insert(1, 1));
  EXPECT_FALSE(a.insert(1, 1));
  EXPECT_TRUE(a.contains(1, 1));
  EXPECT_TRUE(a.erase(0, 0));
  EXPECT_FALSE(a.erase(0, 0));
  EXPECT_EQ(a.total_assignments(), 2u);
  EXPECT_EQ(KindOf([&] { a.Validate(2, 2); }), ErrorKind::kValidation);
  EXPECT_NO_THROW(a.Validate(3, 2));
  EXPECT_EQ(KindOf([&] { a.Validate(3, 3); }), ErrorKind::kValidation);
}

TEST(AllocationColumnSumsTest, Empty) {
  const AttentionCounts c = AllocationColumnSums(Allocation(2), 3);
  EXPECT_EQ(c.per_user, (std::vector<std::uint32_t>{0, 0, 0}));
  EXPECT_EQ(c.total, 0u);
}

TEST(AllocationColumnSumsTest, OneUserInBothAds) {
  const AttentionCounts c = AllocationColumnSums(Allocation({{0}, {0}}), 2);
  EXPECT_EQ(c.per_user, (std::vector<std::uint32_t>{2, 0}));
  EXPECT_EQ(c.total, 2u);
}

TEST(AllocationColumnSumsTest, Mixed) {
  const AttentionCounts c = AllocationColumnSums(Allocation({{0, 1}, {1}}), 2);
  EXPECT_EQ(c.per_user, (std::vector<std::uint32_t>{1, 2}));
  EXPECT_EQ(c.total, 3u);
}

TEST(ReadFileTest, MissingFileIsIo) {
  EXPECT_EQ(KindOf([] { ReadFile("/nonexistent/adalloc/graph.txt"); }),
            ErrorKind::kIo);
}

TEST(ErrorTest, KindNames) {
  EXPECT_EQ(ErrorKindName(ErrorKind::kIo), "io");
  EXPECT_EQ(ErrorKindName(ErrorKind::kSolverAbort), "solver");
}

}  // namespace
}  // namespace adalloc
