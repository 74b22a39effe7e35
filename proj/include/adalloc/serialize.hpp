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

// JSON and CSV views of results. Key order is fixed and doubles print with
// round-trip precision, so equal results serialize to identical bytes.

#ifndef ADALLOC_SERIALIZE_HPP_
#define ADALLOC_SERIALIZE_HPP_

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "adalloc/certify.hpp"
#include "adalloc/objectives.hpp"
#include "adalloc/solvers.hpp"

namespace adalloc {

using Json = nlohmann::ordered_json;

Json AllocationToJson(const Allocation& alloc);
// Accepts a bare array of per-ad user lists, an object with an "allocation"
// key (e.g. a solve result), or a 0/1 matrix under "matrix" (rows = users).
// Throws Error(kParse) on anything else.
Allocation AllocationFromJson(const Json& j);
Allocation AllocationFromJsonText(std::string_view text);

// {sigma, U, V, regret, C, C_plus, f, f_prime, phi, total_budget,
//  cost_baseline, per_ad: [...]}
Json ReportToJson(const ObjectiveReport& report,
                  const PenaltyParams& params,
                  std::uint32_t num_users);

// {problem, allocation, objective_values, trace, seed, params}
Json SolveResultToJson(const SolveResult& result, std::uint32_t num_users);

Json CertifyReportToJson(const CertifyReport& report);

// One row per ad: ad,alpha,budget,sigma,U_i,V_i,num_seeds,seeds
std::string ReportToCsv(const ObjectiveReport& report, const Allocation& alloc);

}  // namespace adalloc

#endif  // ADALLOC_SERIALIZE_HPP_
