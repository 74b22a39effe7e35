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

// adalloc command-line tool. Uses only the C API in adalloc/adalloc.h.
//
//   adalloc gen     --kind chain --users 3 --ads 1 --prob 0.5
//   adalloc solve   --graph g.txt --campaign c.txt --problem rmp --kappa 1
//   adalloc eval    --graph g.txt --campaign c.txt --allocation a.json
//   adalloc oracle  --graph g.txt --campaign c.txt --objective V --exact-spread
//   adalloc certify --problem urmp --instances 20 --trials 2000
//   adalloc bench   --synthetic erdos-renyi:200:4:0.05
//
// Exit status: 0 ok, 1 input error, 2 solver abort, 3 certification failed.
// Errors are reported on stdout as {"error": {"kind": ..., "message": ...}}.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adalloc/adalloc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitCertifyFailed = 3;

struct CliError {
  std::string kind;
  std::string message;
};

std::string JsonEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

int ExitCodeFor(const std::string& kind) {
  return kind == "solver" ? kExitSolver : kExitInput;
}

int ReportError(const CliError& e) {
  std::cout << "{\"error\": {\"kind\": \"" << JsonEscape(e.kind)
            << "\", \"message\": \"" << JsonEscape(e.message) << "\"}}\n";
  std::cout.flush();
  return ExitCodeFor(e.kind);
}

void Check(adalloc_status status) {
  if (status != ADALLOC_OK)
    throw CliError{adalloc_status_kind(status), adalloc_last_error()};
}

[[noreturn]] void Invalid(const std::string& message) {
  throw CliError{"validation", message};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Graph = std::unique_ptr<adalloc_graph,
                              Deleter<adalloc_graph, adalloc_graph_free>>;
using Campaign =
    std::unique_ptr<adalloc_campaign,
                    Deleter<adalloc_campaign, adalloc_campaign_free>>;
using Constraints =
    std::unique_ptr<adalloc_constraints,
                    Deleter<adalloc_constraints, adalloc_constraints_free>>;
using Model = std::unique_ptr<adalloc_model,
                              Deleter<adalloc_model, adalloc_model_free>>;
using Result = std::unique_ptr<adalloc_result,
                               Deleter<adalloc_result, adalloc_result_free>>;

// Takes ownership of a string returned by the library.
std::string TakeString(char* s) {
  std::string out = s ? s : "";
  adalloc_string_free(s);
  return out;
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{"io", "cannot open " + path + " for writing"};
  out << text;
  if (!out) throw CliError{"io", "failed writing " + path};
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"io", "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "inf" / "unbounded" or a non-negative integer.
std::optional<std::uint32_t> ParseLimit(const std::string& s) {
  if (s == "inf" || s == "unbounded") return ADALLOC_UNBOUNDED;
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    return std::nullopt;
  const unsigned long long v = std::stoull(s);
  if (v >= ADALLOC_UNBOUNDED) return ADALLOC_UNBOUNDED;
  return static_cast<std::uint32_t>(v);
}

double ParseNumber(const std::string& s, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  Invalid(flag + " expects a number, got '" + s + "'");
}

// Flags shared by solve, eval, oracle and bench.
struct InputOptions {
  std::string graph;
  std::string synthetic;  // kind:users:ads:prob[:seed]
  bool undirected = false;
  std::string campaign;
  std::string kappa;
  std::string total_limit;
  std::uint32_t samples = 10000;
  std::uint64_t seed = 1;
  bool exact = false;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::string phi;
  std::string out;
  std::string format = "json";
};

void AddInputFlags(CLI::App* app, InputOptions& o, bool need_campaign) {
  app->add_option("--graph", o.graph, "Graph file (src dst ad prob lines)");
  app->add_option("--synthetic", o.synthetic,
                  "Generated graph kind:users:ads:prob[:seed]");
  app->add_flag("--undirected", o.undirected,
                "Treat every edge as undirected (adds reverse arcs)");
  auto* c = app->add_option("--campaign", o.campaign,
                            "Campaign file (ad alpha budget lines)");
  if (need_campaign) c->required();
  app->add_option("--kappa", o.kappa,
                  "Per-user ad limit: integer, 'inf', or constraints file");
  app->add_option("--K", o.total_limit, "Total assignment limit (or 'inf')");
  app->add_option("--samples", o.samples, "Live-edge samples per ad")
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "Master random seed");
  app->add_flag("--exact-spread", o.exact,
                "Exact spread by edge-pattern enumeration (<= 15 edges/ad)");
  app->add_option("--lambda1", o.lambda1, "Per-user attention penalty weight");
  app->add_option("--lambda2", o.lambda2, "Global attention penalty weight");
  app->add_option("--phi", o.phi, "Objective shift: number or 'auto'");
  app->add_option("--out", o.out, "Output path (default stdout)");
  app->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

Graph LoadGraph(const InputOptions& o) {
  if (o.graph.empty() == o.synthetic.empty())
    Invalid("exactly one of --graph and --synthetic is required");
  adalloc_graph* g = nullptr;
  if (!o.graph.empty()) {
    Check(adalloc_graph_load(o.graph.c_str(), &g));
  } else {
    std::vector<std::string> parts;
    std::stringstream ss(o.synthetic);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() < 3 || parts.size() > 5)
      Invalid("--synthetic expects kind:users:ads[:prob[:seed]]");
    const auto users = ParseLimit(parts[1]);
    const auto ads = ParseLimit(parts[2]);
    if (!users || !ads || *users == ADALLOC_UNBOUNDED ||
        *ads == ADALLOC_UNBOUNDED)
      Invalid("--synthetic users and ads must be integers");
    const double prob =
        parts.size() > 3 ? ParseNumber(parts[3], "--synthetic prob") : 1.0;
    std::uint64_t seed = o.seed;
    if (parts.size() > 4) {
      if (parts[4].empty() ||
          parts[4].find_first_not_of("0123456789") != std::string::npos)
        Invalid("--synthetic seed must be an integer");
      seed = std::stoull(parts[4]);
    }
    Check(adalloc_graph_generate(parts[0].c_str(), *users, *ads, prob, seed,
                                 -1.0, &g));
  }
  Graph graph(g);
  if (o.undirected) {
    adalloc_graph* sym = nullptr;
    Check(adalloc_graph_symmetrize(graph.get(), &sym));
    graph.reset(sym);
  }
  return graph;
}

Campaign LoadCampaign(const InputOptions& o, const adalloc_graph* graph) {
  adalloc_campaign* c = nullptr;
  if (!o.campaign.empty()) {
    Check(adalloc_campaign_load(o.campaign.c_str(), &c));
    return Campaign(c);
  }
  // bench without a campaign: unit price, budget of half the users per ad.
  const std::uint32_t m = adalloc_graph_num_ads(graph);
  std::vector<double> alpha(m, 1.0);
  std::vector<double> budget(m, 0.5 * adalloc_graph_num_users(graph));
  Check(adalloc_campaign_create(alpha.data(), budget.data(), m, &c));
  return Campaign(c);
}

Constraints LoadConstraints(const InputOptions& o, std::uint32_t num_users) {
  adalloc_constraints* c = nullptr;
  if (o.kappa.empty()) {
    Check(adalloc_constraints_uniform(num_users, ADALLOC_UNBOUNDED,
                                      ADALLOC_UNBOUNDED, &c));
  } else if (const auto kappa = ParseLimit(o.kappa)) {
    Check(adalloc_constraints_uniform(num_users, *kappa, ADALLOC_UNBOUNDED,
                                      &c));
  } else {
    Check(adalloc_constraints_load(o.kappa.c_str(), num_users, &c));
  }
  Constraints constraints(c);
  if (!o.total_limit.empty()) {
    const auto k = ParseLimit(o.total_limit);
    if (!k) Invalid("--K expects a non-negative integer or 'inf'");
    Check(adalloc_constraints_set_total(constraints.get(), *k));
  }
  return constraints;
}

Model LoadModel(const InputOptions& o) {
  const Graph graph = LoadGraph(o);
  const Campaign campaign = LoadCampaign(o, graph.get());
  const Constraints constraints =
      LoadConstraints(o, adalloc_graph_num_users(graph.get()));
  adalloc_spread_options spread;
  adalloc_spread_options_init(&spread);
  spread.samples = o.samples;
  spread.seed = o.seed;
  spread.exact = o.exact ? 1 : 0;
  adalloc_model* m = nullptr;
  Check(adalloc_model_create(graph.get(), campaign.get(), constraints.get(),
                             &spread, &m));
  return Model(m);
}

adalloc_penalty MakePenalty(const InputOptions& o) {
  adalloc_penalty p;
  adalloc_penalty_init(&p);
  p.lambda1 = o.lambda1;
  p.lambda2 = o.lambda2;
  if (!o.phi.empty() && o.phi != "auto") {
    p.phi_auto = 0;
    p.phi = ParseNumber(o.phi, "--phi");
  }
  return p;
}

std::string RenderResult(const adalloc_result* r, const std::string& format) {
  char* text = nullptr;
  Check(format == "csv" ? adalloc_result_csv(r, &text)
                        : adalloc_result_json(r, &text));
  return TakeString(text);
}

int RunGen(const std::string& kind, std::uint32_t users, std::uint32_t ads,
           double prob, std::uint64_t seed, double density, bool undirected,
           const std::string& out) {
  adalloc_graph* g = nullptr;
  Check(adalloc_graph_generate(kind.c_str(), users, ads, prob, seed, density,
                               &g));
  Graph graph(g);
  if (undirected) {
    adalloc_graph* sym = nullptr;
    Check(adalloc_graph_symmetrize(graph.get(), &sym));
    graph.reset(sym);
  }
  char* text = nullptr;
  Check(adalloc_graph_serialize(graph.get(), &text));
  WriteOutput(out, TakeString(text));
  return kExitOk;
}

int RunSolve(const InputOptions& o, const std::string& problem_name,
             bool naive, bool strict) {
  adalloc_solve_options opts;
  adalloc_solve_options_init(&opts);
  Check(adalloc_problem_from_name(problem_name.c_str(), &opts.problem));
  const bool penalized = opts.problem == ADALLOC_PROBLEM_URMP ||
                         opts.problem == ADALLOC_PROBLEM_P2;
  if (penalized && o.phi.empty())
    Invalid("--phi (a number or 'auto') is required for --problem " +
            problem_name);
  if (!penalized && !o.phi.empty())
    Invalid("--phi applies only to --problem urmp and p2");
  opts.penalty = MakePenalty(o);
  opts.seed = o.seed;
  opts.lazy = naive ? 0 : 1;
  opts.strict = strict ? 1 : 0;
  const Model model = LoadModel(o);
  adalloc_result* r = nullptr;
  Check(adalloc_solve(model.get(), &opts, &r));
  const Result result(r);
  WriteOutput(o.out, RenderResult(result.get(), o.format));
  return kExitOk;
}

int RunEval(const InputOptions& o, const std::string& allocation_path) {
  const std::string alloc = ReadText(allocation_path);
  const Model model = LoadModel(o);
  const adalloc_penalty penalty = MakePenalty(o);
  char* text = nullptr;
  Check(adalloc_evaluate(model.get(), alloc.c_str(), &penalty,
                         o.format == "csv" ? ADALLOC_FORMAT_CSV
                                           : ADALLOC_FORMAT_JSON,
                         &text));
  WriteOutput(o.out, TakeString(text));
  return kExitOk;
}

int RunOracle(const InputOptions& o, const std::string& objective_name,
              const std::string& constraints_mode) {
  adalloc_objective objective;
  Check(adalloc_objective_from_name(objective_name.c_str(), &objective));
  bool constrained = objective == ADALLOC_OBJECTIVE_U ||
                     objective == ADALLOC_OBJECTIVE_V;
  if (constraints_mode == "hard") constrained = true;
  if (constraints_mode == "none") constrained = false;
  const Model model = LoadModel(o);
  const adalloc_penalty penalty = MakePenalty(o);
  adalloc_result* r = nullptr;
  Check(adalloc_oracle(model.get(), objective, constrained ? 1 : 0, &penalty,
                       &r));
  const Result result(r);
  WriteOutput(o.out, RenderResult(result.get(), o.format));
  return kExitOk;
}

int RunCertify(const std::string& problem_name,
               adalloc_certify_options opts, const std::string& out) {
  Check(adalloc_problem_from_name(problem_name.c_str(), &opts.problem));
  char* text = nullptr;
  int passed = 0;
  Check(adalloc_certify(&opts, &text, &passed));
  WriteOutput(out, TakeString(text));
  return passed ? kExitOk : kExitCertifyFailed;
}

std::string FormatDouble(double x) {
  std::ostringstream ss;
  ss.precision(17);
  ss << x;
  return ss.str();
}

// Wall-clock timings of ensemble construction and each solver.
int RunBench(const InputOptions& o, std::uint32_t repeat) {
  using Clock = std::chrono::steady_clock;
  const auto ms = [](Clock::duration d) {
    return std::chrono::duration<double, std::milli>(d).count();
  };
  const Graph graph = LoadGraph(o);
  const Campaign campaign = LoadCampaign(o, graph.get());
  const Constraints constraints =
      LoadConstraints(o, adalloc_graph_num_users(graph.get()));
  adalloc_spread_options spread;
  adalloc_spread_options_init(&spread);
  spread.samples = o.samples;
  spread.seed = o.seed;
  spread.exact = o.exact ? 1 : 0;

  const auto t0 = Clock::now();
  adalloc_model* m = nullptr;
  Check(adalloc_model_create(graph.get(), campaign.get(), constraints.get(),
                             &spread, &m));
  const Model model(m);
  const double build_ms = ms(Clock::now() - t0);

  std::ostringstream json;
  json << "{\n  \"users\": " << adalloc_graph_num_users(graph.get())
       << ",\n  \"ads\": " << adalloc_graph_num_ads(graph.get())
       << ",\n  \"edges\": " << adalloc_graph_num_edges(graph.get())
       << ",\n  \"samples\": " << (o.exact ? 0 : o.samples)
       << ",\n  \"repeat\": " << repeat
       << ",\n  \"build_ms\": " << FormatDouble(build_ms)
       << ",\n  \"solvers\": [";
  const char* names[] = {"rmp", "p1", "urmp", "p2"};
  for (int k = 0; k < 4; ++k) {
    adalloc_solve_options opts;
    adalloc_solve_options_init(&opts);
    opts.problem = static_cast<adalloc_problem>(k);
    opts.penalty = MakePenalty(o);
    opts.seed = o.seed;
    double best = std::numeric_limits<double>::infinity();
    double total = 0.0;
    adalloc_objectives values{};
    for (std::uint32_t rep = 0; rep < repeat; ++rep) {
      const auto start = Clock::now();
      adalloc_result* r = nullptr;
      Check(adalloc_solve(model.get(), &opts, &r));
      const Result result(r);
      const double t = ms(Clock::now() - start);
      best = std::min(best, t);
      total += t;
      Check(adalloc_result_objectives(result.get(), &values));
    }
    json << (k ? "," : "") << "\n    {\"problem\": \"" << names[k]
         << "\", \"best_ms\": " << FormatDouble(best)
         << ", \"mean_ms\": " << FormatDouble(total / repeat)
         << ", \"U\": " << FormatDouble(values.U)
         << ", \"V\": " << FormatDouble(values.V)
         << ", \"f\": " << FormatDouble(values.f) << "}";
  }
  json << "\n  ]\n}\n";
  WriteOutput(o.out, json.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seed allocation for competing advertisers on a social graph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(adalloc_version()));

  // gen
  std::string gen_kind;
  std::uint32_t gen_users = 0;
  std::uint32_t gen_ads = 1;
  double gen_prob = 1.0;
  std::uint64_t gen_seed = 1;
  double gen_density = -1.0;
  bool gen_undirected = false;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a synthetic graph file");
  gen->add_option("--kind", gen_kind, "chain, star, erdos-renyi or isolated")
      ->required();
  gen->add_option("--users", gen_users, "Number of users")->required();
  gen->add_option("--ads", gen_ads, "Number of ads");
  gen->add_option("--prob", gen_prob, "Edge activation probability");
  gen->add_option("--seed", gen_seed, "Random seed (erdos-renyi)");
  gen->add_option("--density", gen_density,
                  "Edge density for erdos-renyi (default 0.3)");
  gen->add_flag("--undirected", gen_undirected, "Add reverse arcs");
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // solve
  InputOptions solve_opts;
  std::string solve_problem;
  bool solve_naive = false;
  bool solve_strict = false;
  auto* solve = app.add_subcommand("solve", "Run an approximation algorithm");
  AddInputFlags(solve, solve_opts, true);
  solve->add_option("--problem", solve_problem, "rmp, p1, urmp or p2")
      ->required();
  solve->add_flag("--naive", solve_naive,
                  "Greedy: rescan every candidate each step");
  solve->add_flag("--strict", solve_strict,
                  "Greedy: keep adding pairs with zero gain");

  // eval
  InputOptions eval_opts;
  std::string eval_allocation;
  auto* eval = app.add_subcommand("eval", "Evaluate an allocation");
  AddInputFlags(eval, eval_opts, true);
  eval->add_option("--allocation", eval_allocation,
                   "Allocation JSON (per-ad user lists or a solve result)")
      ->required();

  // oracle
  InputOptions oracle_opts;
  std::string oracle_objective;
  std::string oracle_constraints = "default";
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum (small)");
  AddInputFlags(oracle, oracle_opts, true);
  oracle->add_option("--objective", oracle_objective, "U, V, f or fprime")
      ->required();
  oracle
      ->add_option("--attention", oracle_constraints,
                   "hard: enforce kappa/K; none: ignore them; default: hard "
                   "for U and V only")
      ->check(CLI::IsMember({"default", "hard", "none"}));

  // certify
  adalloc_certify_options cert;
  adalloc_certify_options_init(&cert);
  std::string cert_problem;
  std::string cert_out;
  auto* certify =
      app.add_subcommand("certify", "Check approximation ratios vs. oracle");
  certify->add_option("--problem", cert_problem, "rmp, p1, urmp or p2")
      ->required();
  certify->add_option("--instances", cert.instances, "Random instances");
  certify->add_option("--trials", cert.trials,
                      "Runs per instance for randomized solvers");
  certify->add_option("--seed", cert.seed, "Master random seed");
  certify->add_option("--max-users", cert.max_users, "Users per instance");
  certify->add_option("--max-ads", cert.max_ads, "Ads per instance");
  certify->add_option("--threads", cert.threads, "Worker threads (0 = all)");
  certify->add_option("--out", cert_out, "Output path (default stdout)");

  // bench
  InputOptions bench_opts;
  std::uint32_t bench_repeat = 3;
  auto* bench = app.add_subcommand("bench", "Time ensemble and solvers");
  AddInputFlags(bench, bench_opts, false);
  bench->add_option("--repeat", bench_repeat, "Runs per solver")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return ReportError({"usage", e.what()});
  }

  try {
    if (*gen)
      return RunGen(gen_kind, gen_users, gen_ads, gen_prob, gen_seed,
                    gen_density, gen_undirected, gen_out);
    if (*solve)
      return RunSolve(solve_opts, solve_problem, solve_naive, solve_strict);
    if (*eval) return RunEval(eval_opts, eval_allocation);
    if (*oracle)
      return RunOracle(oracle_opts, oracle_objective, oracle_constraints);
    if (*certify) return RunCertify(cert_problem, cert, cert_out);
    if (*bench) return RunBench(bench_opts, bench_repeat);
  } catch (const CliError& e) {
    return ReportError(e);
  } catch (const std::exception& e) {
    return ReportError({"internal", e.what()});
  }
  return kExitOk;
}
