#include "cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "faircon/bench.hpp"
#include "faircon/core.hpp"
#include "faircon/dp.hpp"
#include "faircon/errors.hpp"
#include "faircon/exact.hpp"
#include "faircon/ext.hpp"
#include "faircon/instances.hpp"
#include "faircon/io.hpp"

namespace faircon {

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kBudget = 2;
constexpr int kInvalid = 3;

void setup_logging() {
  auto logger = spdlog::get("faircon");
  if (!logger) {
    logger = spdlog::stderr_logger_mt("faircon");
    spdlog::set_default_logger(logger);
  }
  const char* env = std::getenv("FAIRCON_LOG");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

std::vector<std::uint64_t> parse_numbers(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InvalidArgument("not a positive integer: " + item);
    }
  }
  return out;
}

Graph parse_graph(std::size_t vertices, const std::string& text) {
  Graph g;
  g.vertices = vertices;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dash = item.find('-');
    auto u = parse_numbers(item.substr(0, dash == std::string::npos ? 0 : dash));
    auto v = dash == std::string::npos ? u : parse_numbers(item.substr(dash + 1));
    if (u.size() != 1 || v.size() != 1) throw InvalidArgument("edge must look like u-v: " + item);
    g.edges.emplace_back(u[0], v[0]);
  }
  return g;
}

void emit(std::ostream& out, const std::string& path, const Json& doc) {
  if (path.empty())
    out << doc.dump(2) << "\n";
  else
    write_json_file(path, doc);
}

struct SolveArgs {
  std::string instance;
  std::string method = "exact-ef";
  std::string eps;
  std::string tol = "1e-9";
  std::size_t budget_states = 5'000'000;
  std::size_t budget_lps = 10'000'000;
  bool exact_arith = false;
  std::string out;
  int f_override = -1;
  bool no_prune = false;
};

struct VerifyArgs {
  std::string instance;
  std::string contract;
  std::string notion = "ef";
  std::string eps = "0";
  std::string tol = "1e-9";
  bool exact = false;
  std::string out;
};

struct GenerateArgs {
  std::string family;
  std::string set;
  std::size_t n = 2;
  std::size_t m = 3;
  std::uint64_t seed = 1;
  std::string profile = "uniform";
  std::string eps = "1/100";
  std::string name = "5.2";
  std::size_t vertices = 0;
  std::string edges;
  std::uint64_t c_target = 1;
  std::string out;
};

int do_solve(const SolveArgs& a, std::ostream& out) {
  Instance inst = load_instance(a.instance);
  const std::string& m = a.method;
  const bool needs_eps = m == "exact-eps-ef" || m == "dp-eps-ef" || m == "dp-ef1";
  if (needs_eps && a.eps.empty()) throw InvalidArgument("--eps is required for " + m);
  const Rational eps = a.eps.empty() ? Rational(0) : parse_rational(a.eps);
  const Rational tol = parse_rational(a.tol);
  ExactOptions eo;
  eo.lp_budget = a.budget_lps;
  eo.arithmetic = a.exact_arith ? Arithmetic::Exact : Arithmetic::Float;
  FptasOptions fo;
  fo.state_budget = a.budget_states;
  fo.prune = !a.no_prune;
  if (a.f_override >= 0) fo.f_override = static_cast<std::size_t>(a.f_override);

  spdlog::info("solving {}x{} instance with {}", inst.agents(), inst.tasks(), a.method);
  SolveResult res;
  bool ok = true;
  if (m == "greedy" || m == "greedy-ef") {
    res = greedy_ef(inst);
    ok = verify_ef(inst, res.contract, tol).ok;
  } else if (m == "exact-ef") {
    res = solve_opt_ef(inst, Rational(0), eo);
    ok = verify_ef(inst, res.contract, tol).ok;
  } else if (m == "exact-eps-ef") {
    res = solve_opt_ef(inst, eps, eo);
    ok = verify_eps_ef(inst, res.contract, eps, tol).ok;
  } else if (m == "exact-ef1") {
    res = solve_opt_ef1(inst, eo);
    ok = verify_ef1(inst, res.contract, tol).ok;
  } else if (m == "exact-efs") {
    res = solve_opt_efs(inst, eo);
    ok = verify_efs(inst, res.contract, tol).ok;
  } else if (m == "dp-eps-ef") {
    res = solve_eps_ef_fptas(inst, eps, fo);
    ok = verify_eps_ef(inst, res.contract, eps, tol).ok;
  } else if (m == "dp-ef1") {
    res = solve_ef1_fptas(inst, eps, fo);
    ok = verify_ef1(inst, res.contract, tol).ok;
  } else if (m == "round-robin") {
    res = round_robin_ef1(inst);
    ok = verify_ef1(inst, res.contract, tol).ok;
  } else {
    throw InvalidArgument("unknown method: " + m);
  }
  ok = ok && verify_ir(inst, res.contract, tol).ok;
  spdlog::info("{} finished: revenue {} in {:.3f}s", res.meta.method, res.revenue.get_d(), res.meta.seconds);

  const NumberStyle style = a.exact_arith ? NumberStyle::Exact : NumberStyle::Float;
  Json doc = solve_result_to_json(res, style);
  doc["opt"] = rational_to_json(unconstrained_opt(inst), style);
  doc["verified"] = ok;
  doc["fairness"] = fairness_to_json(fairness_report(inst, res.contract, eps, tol), style);
  emit(out, a.out, doc);
  return ok ? kOk : kVerifyFailed;
}

int do_verify(const VerifyArgs& a, std::ostream& out) {
  Instance inst = load_instance(a.instance);
  Contract contract = load_contract(a.contract);
  // a bare contract without "n" only knows the agents that own tasks
  if (contract.allocation().agents() < inst.agents() && !contract.subsidies())
    contract = Contract(Allocation(inst.agents(), contract.allocation().owners()), contract.alpha());
  const Rational eps = parse_rational(a.eps);
  const Rational tol = parse_rational(a.tol);
  FairnessReport rep = fairness_report(inst, contract, eps, tol);
  bool ok = rep.ir.ok;
  if (a.notion == "ef")
    ok = ok && rep.ef.ok;
  else if (a.notion == "eps-ef")
    ok = ok && rep.eps_ef.ok;
  else if (a.notion == "ef1")
    ok = ok && rep.ef1.ok;
  else if (a.notion == "efs")
    ok = ok && verify_efs(inst, contract, tol).ok;
  else if (a.notion != "ir")
    throw InvalidArgument("unknown notion: " + a.notion);
  const NumberStyle style = a.exact ? NumberStyle::Exact : NumberStyle::Float;
  Json doc = fairness_to_json(rep, style);
  doc["notion"] = a.notion;
  doc["ok"] = ok;
  doc["revenue"] = rational_to_json(revenue(inst, contract), style);
  emit(out, a.out, doc);
  return ok ? kOk : kVerifyFailed;
}

int do_generate(const GenerateArgs& a, std::ostream& out) {
  Generated g = [&]() -> Generated {
    const std::string& f = a.family;
    if (f == "partition-ef") return gen_partition_ef(parse_numbers(a.set));
    if (f == "partition-ef1") return gen_partition_ef1(parse_numbers(a.set));
    if (f == "partition-eps-ef") return gen_partition_eps_ef(parse_numbers(a.set), parse_rational(a.eps));
    if (f == "two-agent-hard") return gen_two_agent_hard(parse_numbers(a.set));
    if (f == "independent-set") return gen_independent_set(parse_graph(a.vertices, a.edges), a.c_target);
    if (f == "pof-sqrt") return gen_pof_sqrt(a.n);
    if (f == "example") return gen_example(a.name, parse_rational(a.eps));
    if (f == "random") return gen_random(a.n, a.m, a.seed, parse_profile(a.profile));
    throw InvalidArgument("unknown family: " + f);
  }();
  Json doc = instance_to_json(g.instance, NumberStyle::Exact);
  if (a.out.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    write_json_file(a.out, doc);
    write_json_file(a.out + ".manifest.json", g.manifest);
  }
  return kOk;
}

int do_bench(const std::string& config_path, const std::string& out_path, std::ostream& out) {
  Json config = read_json_file(config_path);
  std::vector<BenchRow> rows = bench_pof(config);
  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (r.error.empty()) continue;
    ++failed;
    spdlog::warn("row {} failed: {}", r.instance_id, r.error);
  }
  std::string csv = bench_csv(rows);
  if (out_path.empty()) {
    out << csv;
  } else {
    std::ofstream f(out_path);
    if (!f) throw InvalidArgument("cannot write " + out_path);
    f << csv;
  }
  return !rows.empty() && failed == rows.size() ? kInvalid : kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  setup_logging();
  CLI::App app{"Fair linear contracts for multiple agents"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Compute a contract");
  solve->add_option("instance", sa.instance, "Instance JSON")->required();
  solve->add_option("--method", sa.method,
                    "greedy, exact-ef, exact-eps-ef, exact-ef1, exact-efs, dp-eps-ef, dp-ef1, round-robin");
  solve->add_option("--eps", sa.eps, "Relaxation or accuracy parameter");
  solve->add_option("--tol", sa.tol, "Verification tolerance");
  solve->add_option("--budget-states", sa.budget_states, "State budget per dynamic program");
  solve->add_option("--budget-lps", sa.budget_lps, "LP solve budget");
  solve->add_flag("--exact-arith", sa.exact_arith, "Rational simplex and rational output");
  solve->add_option("--f-bits", sa.f_override, "Override the utility bit bound used for guesses");
  solve->add_flag("--no-prune", sa.no_prune, "Disable state pruning in the dynamic programs");
  solve->add_option("--out", sa.out, "Output path");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a contract");
  verify->add_option("instance", va.instance, "Instance JSON")->required();
  verify->add_option("contract", va.contract, "Contract or solve result JSON")->required();
  verify->add_option("--notion", va.notion, "ir, ef, eps-ef, ef1 or efs");
  verify->add_option("--eps", va.eps, "Relaxation for eps-ef");
  verify->add_option("--tol", va.tol, "Tolerance");
  verify->add_flag("--exact-arith", va.exact, "Print slacks as rationals");
  verify->add_option("--out", va.out, "Output path");

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Write a generated instance");
  gen->add_option("family", ga.family,
                  "partition-ef, partition-ef1, partition-eps-ef, two-agent-hard, independent-set, pof-sqrt, "
                  "example, random")
      ->required();
  gen->add_option("--set", ga.set, "Comma separated positive integers");
  gen->add_option("--n", ga.n, "Agents (random) or size (pof-sqrt)");
  gen->add_option("--m", ga.m, "Tasks (random)");
  gen->add_option("--seed", ga.seed, "Random seed");
  gen->add_option("--profile", ga.profile, "uniform, cost-heavy, sparse-ability, single-agent");
  gen->add_option("--eps", ga.eps, "Epsilon parameter");
  gen->add_option("--name", ga.name, "Example name: 5.2, 5.4 or 5.7");
  gen->add_option("--vertices", ga.vertices, "Vertex count (independent-set)");
  gen->add_option("--edges", ga.edges, "Edges such as 0-1,1-2");
  gen->add_option("--c", ga.c_target, "Approximation target c (independent-set)");
  gen->add_option("--out", ga.out, "Output path; a manifest is written next to it");

  std::string bench_config, bench_out;
  auto* bench = app.add_subcommand("bench-pof", "Price-of-fairness table");
  bench->add_option("config", bench_config, "Config JSON")->required();
  bench->add_option("--out", bench_out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kInvalid;
  }

  try {
    if (*solve) return do_solve(sa, out);
    if (*verify) return do_verify(va, out);
    if (*gen) return do_generate(ga, out);
    if (*bench) return do_bench(bench_config, bench_out, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const Json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace faircon
