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

#include "adalloc/serialize.hpp"

#include <cmath>
#include <sstream>

#include "adalloc/error.hpp"

namespace adalloc {

namespace {

// JSON has no infinity; unbounded values become null.
Json Real(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json AllocationToJson(const Allocation& alloc) {
  Json out = Json::array();
  for (const SeedSet& s : alloc.seed_sets()) out.push_back(s);
  return out;
}

Allocation AllocationFromJson(const Json& j) {
  try {
    if (j.is_object() && j.contains("allocation"))
      return AllocationFromJson(j.at("allocation"));
    if (j.is_object() && j.contains("matrix")) {
      const Json& rows = j.at("matrix");
      if (!rows.is_array() || rows.empty())
        throw Error(ErrorKind::kParse, "allocation matrix must be non-empty");
      const std::size_t num_ads = rows.front().size();
      std::vector<SeedSet> sets(num_ads);
      for (std::size_t u = 0; u < rows.size(); ++u) {
        if (rows[u].size() != num_ads)
          throw Error(ErrorKind::kParse, "allocation matrix rows differ in length");
        for (std::size_t ad = 0; ad < num_ads; ++ad) {
          const int x = rows[u][ad].get<int>();
          if (x != 0 && x != 1)
            throw Error(ErrorKind::kParse, "allocation matrix entries must be 0/1");
          if (x == 1) sets[ad].push_back(static_cast<UserId>(u));
        }
      }
      return Allocation(std::move(sets));
    }
    if (!j.is_array())
      throw Error(ErrorKind::kParse,
                  "allocation must be an array of per-ad user lists");
    std::vector<SeedSet> sets;
    for (const Json& per_ad : j) {
      SeedSet s;
      for (const Json& u : per_ad) {
        const auto v = u.get<std::int64_t>();
        if (v < 0) throw Error(ErrorKind::kParse, "negative user index");
        s.push_back(static_cast<UserId>(v));
      }
      sets.push_back(std::move(s));
    }
    return Allocation(std::move(sets));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("allocation JSON: ") + e.what());
  }
}

Allocation AllocationFromJsonText(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("allocation JSON: ") + e.what());
  }
  return AllocationFromJson(j);
}

Json ReportToJson(const ObjectiveReport& r, const PenaltyParams& params,
                  std::uint32_t num_users) {
  Json sigma = Json::array();
  Json per_ad = Json::array();
  for (std::size_t ad = 0; ad < r.per_ad.size(); ++ad) {
    const AdReport& a = r.per_ad[ad];
    sigma.push_back(a.sigma);
    per_ad.push_back({{"ad", ad},
                      {"alpha", a.alpha},
                      {"budget", a.budget},
                      {"sigma", a.sigma},
                      {"U", a.utility},
                      {"V", a.revenue},
                      {"num_seeds", a.num_seeds}});
  }
  Json out;
  out["sigma"] = std::move(sigma);
  out["U"] = r.U;
  out["V"] = r.V;
  out["regret"] = r.regret;
  out["C"] = r.C;
  out["C_plus"] = r.C_plus;
  out["f"] = r.f;
  out["f_prime"] = r.f_prime;
  out["phi"] = r.phi;
  out["total_budget"] = r.total_budget;
  // C keeps exp(0) = 1 per user and once globally even with no violation.
  out["cost_baseline"] =
      params.lambda1 * static_cast<double>(num_users) + params.lambda2;
  out["per_ad"] = std::move(per_ad);
  return out;
}

Json SolveResultToJson(const SolveResult& result, std::uint32_t num_users) {
  const SolverTrace& t = result.trace;
  Json insertion = Json::array();
  for (const auto& per_ad : t.insertion_order) {
    Json steps = Json::array();
    for (const Insertion& ins : per_ad)
      steps.push_back({{"user", ins.user}, {"gain", ins.gain}});
    insertion.push_back(std::move(steps));
  }
  Json removed = Json::array();
  for (const auto& r : t.removed_users)
    removed.push_back(r ? Json(*r) : Json(nullptr));

  Json trace;
  trace["stop_reason"] = StopReasonName(t.stop_reason);
  trace["insertion_order"] = std::move(insertion);
  trace["selected_gains"] = t.selected_gains;
  trace["removed_users"] = std::move(removed);
  if (result.problem == Problem::kUrmp || result.problem == Problem::kP2)
    trace["min_f_prime"] = Real(t.min_f_prime);
  trace["evaluations"] = t.evaluations;

  Json out;
  out["problem"] = ProblemName(result.problem);
  if (result.objective) out["objective"] = ObjectiveName(*result.objective);
  out["allocation"] = AllocationToJson(result.allocation);
  out["objective_values"] = ReportToJson(result.report, result.params, num_users);
  out["trace"] = std::move(trace);
  out["seed"] = result.rng_seed;
  out["params"] = {{"lambda1", result.params.lambda1},
                   {"lambda2", result.params.lambda2},
                   {"phi", result.params.phi}};
  return out;
}

Json CertifyReportToJson(const CertifyReport& report) {
  Json instances = Json::array();
  for (const InstanceOutcome& o : report.outcomes) {
    Json row;
    row["index"] = o.index;
    row["seed"] = o.seed;
    row["users"] = o.num_users;
    row["ads"] = o.num_ads;
    row["edges"] = o.num_edges;
    row["optimum"] = o.optimum;
    row["value"] = o.value;
    row["std_error"] = o.std_error;
    row["ratio"] = o.ratio;
    row["threshold"] = o.threshold;
    if (report.options.problem == Problem::kUrmp ||
        report.options.problem == Problem::kP2)
      row["min_f_prime"] = Real(o.min_f_prime);
    row["passed"] = o.passed;
    instances.push_back(std::move(row));
  }
  Json out;
  out["problem"] = ProblemName(report.options.problem);
  out["instances"] = report.options.instances;
  out["trials"] = report.options.trials;
  out["seed"] = report.options.seed;
  out["max_users"] = report.options.max_users;
  out["max_ads"] = report.options.max_ads;
  out["bound"] = report.bound;
  out["min_ratio"] = report.min_ratio;
  out["mean_ratio"] = report.mean_ratio;
  out["violations"] = report.violations;
  if (report.options.problem == Problem::kUrmp ||
      report.options.problem == Problem::kP2)
    out["nonnegative_f_prime"] = report.nonnegative_f_prime;
  out["passed"] = report.passed;
  out["results"] = std::move(instances);
  return out;
}

std::string ReportToCsv(const ObjectiveReport& report,
                        const Allocation& alloc) {
  std::ostringstream out;
  out.precision(17);
  out << "ad,alpha,budget,sigma,U_i,V_i,num_seeds,seeds\n";
  for (std::size_t ad = 0; ad < report.per_ad.size(); ++ad) {
    const AdReport& a = report.per_ad[ad];
    out << ad << ',' << a.alpha << ',' << a.budget << ',' << a.sigma << ','
        << a.utility << ',' << a.revenue << ',' << a.num_seeds << ',';
    const SeedSet& s = alloc.seeds(static_cast<AdId>(ad));
    for (std::size_t k = 0; k < s.size(); ++k) out << (k ? ";" : "") << s[k];
    out << '\n';
  }
  return out.str();
}

}  // namespace adalloc
