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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "adalloc/error.hpp"
#include "adalloc/seeding.hpp"

namespace adalloc {

namespace {

[[noreturn]] void Invalid(const std::string& msg) {
  throw Error(ErrorKind::kValidation, msg);
}

[[noreturn]] void ParseFailure(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::kParse,
              "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Splits into lines and drops blanks and `#` comments, keeping 1-based line
// numbers for diagnostics.
std::vector<std::pair<std::size_t, std::vector<std::string_view>>> DataLines(
    std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    auto tokens = SplitWhitespace(line);
    if (!tokens.empty() && tokens.front().front() != '#') {
      out.emplace_back(line_no, std::move(tokens));
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::optional<std::int64_t> ToInt(std::string_view tok) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

std::optional<double> ToDouble(std::string_view tok) {
  double v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

std::uint32_t ParseIndex(std::size_t line, std::string_view tok,
                         std::string_view what) {
  auto v = ToInt(tok);
  if (!v) ParseFailure(line, "expected integer " + std::string(what) +
                                 ", got '" + std::string(tok) + "'");
  if (*v < 0) ParseFailure(line, "negative " + std::string(what) + " index");
  if (*v >= static_cast<std::int64_t>(kUnbounded))
    ParseFailure(line, std::string(what) + " index too large");
  return static_cast<std::uint32_t>(*v);
}

std::uint32_t ParseLimit(std::size_t line, std::string_view tok) {
  if (tok == "inf" || tok == "unbounded") return kUnbounded;
  auto v = ToInt(tok);
  if (!v) ParseFailure(line, "expected nonnegative integer or 'inf', got '" +
                                 std::string(tok) + "'");
  if (*v < 0) ParseFailure(line, "negative attention limit");
  if (*v >= static_cast<std::int64_t>(kUnbounded)) return kUnbounded;
  return static_cast<std::uint32_t>(*v);
}

double ParseReal(std::size_t line, std::string_view tok,
                 std::string_view what) {
  auto v = ToDouble(tok);
  if (!v || !std::isfinite(*v))
    ParseFailure(line, "expected number for " + std::string(what) + ", got '" +
                           std::string(tok) + "'");
  return *v;
}

// `users=<n> ads=<m>`, either key optional.
bool ParseHeader(std::size_t line, const std::vector<std::string_view>& tokens,
                 std::optional<std::uint32_t>& users,
                 std::optional<std::uint32_t>& ads) {
  if (tokens.front().find('=') == std::string_view::npos) return false;
  for (auto tok : tokens) {
    auto eq = tok.find('=');
    if (eq == std::string_view::npos) ParseFailure(line, "malformed header");
    auto key = tok.substr(0, eq);
    auto value = tok.substr(eq + 1);
    if (key == "users") {
      users = ParseIndex(line, value, "user count");
    } else if (key == "ads") {
      ads = ParseIndex(line, value, "ad count");
    } else {
      ParseFailure(line, "unknown header key '" + std::string(key) + "'");
    }
  }
  return true;
}

}  // namespace

// --- HyperSocialGraph -------------------------------------------------------

HyperSocialGraph::HyperSocialGraph(std::uint32_t num_users,
                                   std::vector<std::vector<Edge>> per_ad_edges)
    : num_users_(num_users), per_ad_edges_(std::move(per_ad_edges)) {
  for (std::size_t ad = 0; ad < per_ad_edges_.size(); ++ad) {
    std::set<std::pair<UserId, UserId>> seen;
    for (const Edge& e : per_ad_edges_[ad]) {
      if (e.src >= num_users_ || e.dst >= num_users_)
        Invalid("ad " + std::to_string(ad) + ": edge (" +
                std::to_string(e.src) + "," + std::to_string(e.dst) +
                ") references a user >= " + std::to_string(num_users_));
      if (!(e.prob >= 0.0 && e.prob <= 1.0))
        Invalid("ad " + std::to_string(ad) + ": probability out of range");
      if (!seen.emplace(e.src, e.dst).second)
        Invalid("ad " + std::to_string(ad) + ": duplicate edge (" +
                std::to_string(e.src) + "," + std::to_string(e.dst) + ")");
    }
  }
}

std::size_t HyperSocialGraph::num_edges() const {
  std::size_t n = 0;
  for (const auto& edges : per_ad_edges_) n += edges.size();
  return n;
}

// --- Campaign ---------------------------------------------------------------

Campaign::Campaign(std::vector<Advertiser> advertisers)
    : advertisers_(std::move(advertisers)) {
  for (std::size_t i = 0; i < advertisers_.size(); ++i) {
    const auto& a = advertisers_[i];
    if (!(a.alpha > 0.0) || !std::isfinite(a.alpha))
      Invalid("ad " + std::to_string(i) + ": alpha must be > 0");
    if (!(a.budget >= 0.0) || !std::isfinite(a.budget))
      Invalid("ad " + std::to_string(i) + ": budget must be >= 0");
  }
}

double Campaign::total_budget() const {
  double total = 0.0;
  for (const auto& a : advertisers_) total += a.budget;
  return total;
}

// --- Allocation -------------------------------------------------------------

Allocation::Allocation(std::vector<SeedSet> seed_sets)
    : seed_sets_(std::move(seed_sets)) {
  for (auto& s : seed_sets_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
}

bool Allocation::contains(UserId user, AdId ad) const {
  const auto& s = seed_sets_.at(ad);
  return std::binary_search(s.begin(), s.end(), user);
}

bool Allocation::insert(UserId user, AdId ad) {
  auto& s = seed_sets_.at(ad);
  auto it = std::lower_bound(s.begin(), s.end(), user);
  if (it != s.end() && *it == user) return false;
  s.insert(it, user);
  return true;
}

bool Allocation::erase(UserId user, AdId ad) {
  auto& s = seed_sets_.at(ad);
  auto it = std::lower_bound(s.begin(), s.end(), user);
  if (it == s.end() || *it != user) return false;
  s.erase(it);
  return true;
}

void Allocation::set_seeds(AdId ad, SeedSet seeds) {
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  seed_sets_.at(ad) = std::move(seeds);
}

std::size_t Allocation::total_assignments() const {
  std::size_t n = 0;
  for (const auto& s : seed_sets_) n += s.size();
  return n;
}

void Allocation::Validate(std::uint32_t num_users,
                          std::uint32_t num_ads) const {
  if (seed_sets_.size() != num_ads)
    Invalid("allocation has " + std::to_string(seed_sets_.size()) +
            " seed sets, expected " + std::to_string(num_ads));
  for (const auto& s : seed_sets_)
    for (UserId u : s)
      if (u >= num_users)
        Invalid("allocation references user " + std::to_string(u) +
                " >= " + std::to_string(num_users));
}

// --- AttentionConstraints ---------------------------------------------------

AttentionConstraints AttentionConstraints::Uniform(std::uint32_t num_users,
                                                   std::uint32_t kappa,
                                                   std::uint32_t total_limit) {
  return {std::vector<std::uint32_t>(num_users, kappa), total_limit};
}

void AttentionConstraints::Validate(std::uint32_t num_users) const {
  if (kappa.size() != num_users)
    Invalid("constraints list " + std::to_string(kappa.size()) +
            " kappa values for " + std::to_string(num_users) + " users");
}

AttentionCounts AllocationColumnSums(const Allocation& alloc,
                                     std::uint32_t num_users) {
  AttentionCounts counts;
  counts.per_user.assign(num_users, 0);
  for (const auto& s : alloc.seed_sets()) {
    for (UserId u : s) ++counts.per_user.at(u);
    counts.total += s.size();
  }
  return counts;
}

// --- Text formats -----------------------------------------------------------

HyperSocialGraph ParseGraph(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  return ParseGraph(text);
}

HyperSocialGraph ParseGraph(std::string_view text) {
  std::optional<std::uint32_t> header_users, header_ads;
  std::vector<std::vector<Edge>> per_ad;
  std::set<std::tuple<AdId, UserId, UserId>> seen;
  std::uint32_t max_user_plus_one = 0;
  bool first = true;

  for (const auto& [line, tokens] : DataLines(text)) {
    if (first && ParseHeader(line, tokens, header_users, header_ads)) {
      first = false;
      continue;
    }
    first = false;
    if (tokens.size() != 4)
      ParseFailure(line, "expected 'src dst ad prob', got " +
                             std::to_string(tokens.size()) + " fields");
    UserId src = ParseIndex(line, tokens[0], "user");
    UserId dst = ParseIndex(line, tokens[1], "user");
    AdId ad = ParseIndex(line, tokens[2], "ad");
    double prob = ParseReal(line, tokens[3], "probability");
    if (!(prob >= 0.0 && prob <= 1.0))
      ParseFailure(line, "probability out of range [0,1]: " +
                             std::string(tokens[3]));
    if (!seen.emplace(ad, src, dst).second)
      ParseFailure(line, "duplicate edge (" + std::to_string(src) + "," +
                             std::to_string(dst) + ") for ad " +
                             std::to_string(ad));
    if (header_ads && ad >= *header_ads)
      ParseFailure(line, "ad index " + std::to_string(ad) +
                             " exceeds header ads=" +
                             std::to_string(*header_ads));
    if (header_users && std::max(src, dst) >= *header_users)
      ParseFailure(line, "user index exceeds header users=" +
                             std::to_string(*header_users));
    if (per_ad.size() <= ad) per_ad.resize(ad + 1);
    per_ad[ad].push_back({src, dst, prob});
    max_user_plus_one = std::max(max_user_plus_one, std::max(src, dst) + 1);
  }

  if (header_ads) per_ad.resize(*header_ads);
  if (per_ad.empty()) per_ad.resize(1);
  std::uint32_t users = header_users.value_or(max_user_plus_one);
  return HyperSocialGraph(users, std::move(per_ad));
}

std::string SerializeGraph(const HyperSocialGraph& graph) {
  std::ostringstream out;
  out.precision(17);
  out << "users=" << graph.num_users() << " ads=" << graph.num_ads() << '\n';
  for (AdId ad = 0; ad < graph.num_ads(); ++ad)
    for (const Edge& e : graph.edges(ad))
      out << e.src << ' ' << e.dst << ' ' << ad << ' ' << e.prob << '\n';
  return out.str();
}

HyperSocialGraph ParseSharedTopology(std::string_view text,
                                     std::uint32_t num_ads,
                                     std::uint32_t num_users) {
  if (num_ads == 0) Invalid("shared topology needs at least one ad");
  std::vector<Edge> edges;
  std::uint32_t users = num_users;
  for (const auto& [line, tokens] : DataLines(text)) {
    if (tokens.size() != 3)
      ParseFailure(line, "expected 'src dst prob'");
    Edge e{ParseIndex(line, tokens[0], "user"),
           ParseIndex(line, tokens[1], "user"),
           ParseReal(line, tokens[2], "probability")};
    if (!(e.prob >= 0.0 && e.prob <= 1.0))
      ParseFailure(line, "probability out of range [0,1]");
    users = std::max(users, std::max(e.src, e.dst) + 1);
    edges.push_back(e);
  }
  return HyperSocialGraph(users,
                          std::vector<std::vector<Edge>>(num_ads, edges));
}

HyperSocialGraph Symmetrize(const HyperSocialGraph& graph) {
  std::vector<std::vector<Edge>> per_ad(graph.num_ads());
  for (AdId ad = 0; ad < graph.num_ads(); ++ad) {
    std::map<std::pair<UserId, UserId>, double> arcs;
    for (const Edge& e : graph.edges(ad)) {
      arcs.try_emplace({e.src, e.dst}, e.prob);
      arcs.try_emplace({e.dst, e.src}, e.prob);
    }
    for (const auto& [key, prob] : arcs)
      per_ad[ad].push_back({key.first, key.second, prob});
  }
  return HyperSocialGraph(graph.num_users(), std::move(per_ad));
}

Campaign ParseCampaign(std::string_view text) {
  std::map<AdId, Advertiser> by_ad;
  for (const auto& [line, tokens] : DataLines(text)) {
    if (tokens.size() != 3) ParseFailure(line, "expected 'ad alpha budget'");
    AdId ad = ParseIndex(line, tokens[0], "ad");
    Advertiser a{ParseReal(line, tokens[1], "alpha"),
                 ParseReal(line, tokens[2], "budget")};
    if (!(a.alpha > 0.0)) ParseFailure(line, "alpha must be > 0");
    if (!(a.budget >= 0.0)) ParseFailure(line, "budget must be >= 0");
    if (!by_ad.emplace(ad, a).second)
      ParseFailure(line, "duplicate ad " + std::to_string(ad));
  }
  std::vector<Advertiser> ads;
  for (const auto& [ad, a] : by_ad) {
    if (ad != ads.size())
      Invalid("campaign is missing ad " + std::to_string(ads.size()));
    ads.push_back(a);
  }
  if (ads.empty()) Invalid("campaign lists no advertisers");
  return Campaign(std::move(ads));
}

std::string SerializeCampaign(const Campaign& campaign) {
  std::ostringstream out;
  out.precision(17);
  for (AdId ad = 0; ad < campaign.num_ads(); ++ad)
    out << ad << ' ' << campaign[ad].alpha << ' ' << campaign[ad].budget
        << '\n';
  return out.str();
}

AttentionConstraints ParseConstraints(std::string_view text,
                                      std::uint32_t num_users) {
  AttentionConstraints c = AttentionConstraints::Uniform(num_users, kUnbounded,
                                                         kUnbounded);
  bool saw_total = false;
  std::vector<bool> seen(num_users, false);
  for (const auto& [line, tokens] : DataLines(text)) {
    if (tokens.size() != 2) ParseFailure(line, "expected 'user kappa' or 'K n'");
    if (tokens[0] == "K") {
      if (saw_total) ParseFailure(line, "K given twice");
      c.total_limit = ParseLimit(line, tokens[1]);
      saw_total = true;
      continue;
    }
    UserId u = ParseIndex(line, tokens[0], "user");
    if (u >= num_users)
      ParseFailure(line, "user " + std::to_string(u) + " not in graph");
    if (seen[u]) ParseFailure(line, "kappa for user " + std::to_string(u) +
                                        " given twice");
    seen[u] = true;
    c.kappa[u] = ParseLimit(line, tokens[1]);
  }
  return c;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --- Synthetic instances ----------------------------------------------------

GraphKind ParseGraphKind(std::string_view name) {
  if (name == "chain") return GraphKind::kChain;
  if (name == "star") return GraphKind::kStar;
  if (name == "erdos-renyi" || name == "er") return GraphKind::kErdosRenyi;
  if (name == "isolated") return GraphKind::kIsolated;
  Invalid("unknown graph kind '" + std::string(name) + "'");
}

std::string_view GraphKindName(GraphKind kind) {
  switch (kind) {
    case GraphKind::kChain:
      return "chain";
    case GraphKind::kStar:
      return "star";
    case GraphKind::kErdosRenyi:
      return "erdos-renyi";
    case GraphKind::kIsolated:
      return "isolated";
  }
  return "unknown";
}

HyperSocialGraph GenerateSynthetic(GraphKind kind, std::uint32_t num_users,
                                   std::uint32_t num_ads, double prob,
                                   std::uint64_t rng_seed, double density) {
  if (num_users == 0) Invalid("generator needs at least one user");
  if (num_ads == 0) Invalid("generator needs at least one ad");
  if (!(prob >= 0.0 && prob <= 1.0)) Invalid("probability out of range [0,1]");
  if (!(density >= 0.0 && density <= 1.0)) Invalid("density out of range [0,1]");

  std::vector<std::vector<Edge>> per_ad(num_ads);
  for (AdId ad = 0; ad < num_ads; ++ad) {
    auto& edges = per_ad[ad];
    switch (kind) {
      case GraphKind::kChain:
        for (UserId u = 0; u + 1 < num_users; ++u)
          edges.push_back({u, u + 1, prob});
        break;
      case GraphKind::kStar:
        for (UserId u = 1; u < num_users; ++u) edges.push_back({0, u, prob});
        break;
      case GraphKind::kErdosRenyi: {
        std::mt19937_64 rng(DeriveSeed(rng_seed, "erdos-renyi", ad));
        for (UserId u = 0; u < num_users; ++u)
          for (UserId v = 0; v < num_users; ++v)
            if (u != v && UniformUnit(rng) < density)
              edges.push_back({u, v, prob});
        break;
      }
      case GraphKind::kIsolated:
        break;
    }
  }
  return HyperSocialGraph(num_users, std::move(per_ad));
}

}  // namespace adalloc
