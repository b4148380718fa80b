#include "faircon/bench.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "faircon/core.hpp"
#include "faircon/dp.hpp"
#include "faircon/errors.hpp"
#include "faircon/exact.hpp"
#include "faircon/ext.hpp"
#include "faircon/instances.hpp"

namespace faircon {

namespace {

struct Job {
  std::string id;
  Instance instance;
  std::string ef_method;
  std::string ef1_method;
};

std::vector<std::uint64_t> numbers_of(const Json& fam) {
  std::vector<std::uint64_t> out;
  for (const auto& x : fam.at("numbers")) out.push_back(x.get<std::uint64_t>());
  return out;
}

Rational rational_or(const Json& obj, const char* key, const Rational& fallback) {
  return obj.contains(key) ? rational_from_json(obj[key]) : fallback;
}

std::vector<Json> as_list(const Json& value) {
  if (value.is_array()) return std::vector<Json>(value.begin(), value.end());
  return {value};
}

std::vector<Job> expand(const Json& config) {
  std::vector<Job> jobs;
  const std::string ef_default = config.value("ef", "exact");
  const std::string ef1_default = config.value("ef1", "exact");
  if (!config.contains("families") || !config["families"].is_array())
    throw InvalidArgument("bench config needs a \"families\" array");
  for (const auto& fam : config["families"]) {
    const std::string family = fam.at("family").get<std::string>();
    const std::string ef = fam.value("ef", ef_default);
    const std::string ef1 = fam.value("ef1", ef1_default);
    auto add = [&](std::string id, Instance inst) { jobs.push_back({std::move(id), std::move(inst), ef, ef1}); };
    if (family == "example") {
      const std::string name = fam.at("name").get<std::string>();
      for (const auto& e : as_list(fam.at("eps"))) {
        Rational eps = rational_from_json(e);
        add("example-" + name + "-eps" + to_string(eps), gen_example(name, eps).instance);
      }
    } else if (family == "random" || family == "single-agent") {
      const auto count = fam.value("count", std::size_t{1});
      const auto seed = fam.value("seed", std::uint64_t{1});
      const auto n = fam.value("n", std::size_t{1});
      const auto m = fam.at("m").get<std::size_t>();
      RandomProfile profile = family == "single-agent" ? RandomProfile::SingleAgent
                                                       : parse_profile(fam.value("profile", std::string("uniform")));
      for (std::size_t t = 0; t < count; ++t) {
        Generated g = gen_random(n, m, seed + t, profile);
        add(family + "-" + profile_name(profile) + "-n" + std::to_string(g.instance.agents()) + "-m" +
                std::to_string(m) + "-s" + std::to_string(seed + t),
            std::move(g.instance));
      }
    } else if (family == "partition-ef") {
      add("partition-ef", gen_partition_ef(numbers_of(fam)).instance);
    } else if (family == "partition-ef1") {
      add("partition-ef1", gen_partition_ef1(numbers_of(fam)).instance);
    } else if (family == "partition-eps-ef") {
      add("partition-eps-ef", gen_partition_eps_ef(numbers_of(fam), rational_or(fam, "eps", Rational(1, 10))).instance);
    } else if (family == "two-agent-hard") {
      add("two-agent-hard", gen_two_agent_hard(numbers_of(fam)).instance);
    } else if (family == "pof-sqrt") {
      for (const auto& x : as_list(fam.at("n"))) {
        auto n = x.get<std::size_t>();
        add("pof-sqrt-n" + std::to_string(n), gen_pof_sqrt(n).instance);
      }
    } else if (family == "independent-set") {
      Graph g;
      g.vertices = fam.at("vertices").get<std::size_t>();
      for (const auto& e : fam.at("edges")) g.edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
      add("independent-set", gen_independent_set(g, fam.value("c", std::uint64_t{1})).instance);
    } else if (family == "file") {
      const std::string path = fam.at("path").get<std::string>();
      add(fam.value("id", path), load_instance(path));
    } else {
      throw InvalidArgument("unknown family: " + family);
    }
  }
  return jobs;
}

BenchRow run_job(const Job& job, const Json& config) {
  ExactOptions eo;
  eo.lp_budget = config.value("budget_lps", std::size_t{10'000'000});
  FptasOptions fo;
  fo.state_budget = config.value("budget_states", std::size_t{5'000'000});
  const Rational eps = rational_or(config, "eps", Rational(1, 4));

  BenchRow row;
  row.instance_id = job.id;
  row.n = job.instance.agents();
  row.m = job.instance.tasks();
  row.opt = unconstrained_opt(job.instance);

  std::string ef_used, ef1_used;
  bool ef_is_envy_free = true;
  SolveResult ef;
  try {
    if (job.ef_method == "exact") {
      ef = solve_opt_ef(job.instance, Rational(0), eo);
    } else if (job.ef_method == "dp") {
      ef = solve_eps_ef_fptas(job.instance, eps, fo);
      ef_is_envy_free = false;
    } else if (job.ef_method == "greedy") {
      ef = greedy_ef(job.instance);
    } else {
      throw InvalidArgument("unknown ef method: " + job.ef_method);
    }
  } catch (const BudgetExceeded&) {
    ef = greedy_ef(job.instance);
  }
  ef_used = ef.meta.method;

  SolveResult ef1;
  try {
    if (job.ef1_method == "exact") {
      ef1 = solve_opt_ef1(job.instance, eo);
    } else if (job.ef1_method == "dp") {
      ef1 = solve_ef1_fptas(job.instance, eps, fo);
    } else if (job.ef1_method == "round-robin") {
      ef1 = round_robin_ef1(job.instance);
    } else {
      throw InvalidArgument("unknown ef1 method: " + job.ef1_method);
    }
  } catch (const BudgetExceeded&) {
    ef1 = round_robin_ef1(job.instance);
  }
  ef1_used = ef1.meta.method;

  row.opt_ef = ef.revenue;
  // every envy-free contract is also EF1
  row.opt_ef1_lb = ef_is_envy_free ? std::max(ef1.revenue, ef.revenue) : ef1.revenue;
  row.method = ef_used + "+" + ef1_used;
  row.runtime_states = ef.meta.states + ef.meta.lp_solves + ef1.meta.states + ef1.meta.lp_solves;
  return row;
}

std::string ratio(const Rational& num, const Rational& den) {
  if (den == 0) return "1";
  return format_float(Rational(num / den).get_d());
}

}  // namespace

std::vector<BenchRow> bench_pof(const Json& config) {
  std::vector<Job> jobs = expand(config);
  std::vector<BenchRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(jobs.size(), std::thread::hardware_concurrency()));
  auto work = [&] {
    for (std::size_t t = next++; t < jobs.size(); t = next++) {
      try {
        rows[t] = run_job(jobs[t], config);
      } catch (const std::exception& e) {
        rows[t] = BenchRow{};
        rows[t].instance_id = jobs[t].id;
        rows[t].n = jobs[t].instance.agents();
        rows[t].m = jobs[t].instance.tasks();
        rows[t].method = "failed";
        rows[t].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "instance_id,n,m,opt,opt_ef,opt_ef1_lb,ratio_ef,ratio_ef1,method,runtime_states\n";
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      out << r.instance_id << ',' << r.n << ',' << r.m << ",,,,,," << r.method << ",0\n";
      continue;
    }
    out << r.instance_id << ',' << r.n << ',' << r.m << ',' << format_float(r.opt.get_d()) << ','
        << format_float(r.opt_ef.get_d()) << ',' << format_float(r.opt_ef1_lb.get_d()) << ','
        << ratio(r.opt_ef, r.opt) << ',' << ratio(r.opt_ef1_lb, r.opt) << ',' << r.method << ','
        << r.runtime_states << '\n';
  }
  return out.str();
}

}  // namespace faircon
