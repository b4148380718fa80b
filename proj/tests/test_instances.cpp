#include <doctest.h>

#include "faircon/core.hpp"
#include "faircon/errors.hpp"
#include "faircon/exact.hpp"
#include "faircon/instances.hpp"
#include "faircon/io.hpp"
#include "helpers.hpp"

using namespace faircon;
using testing::q;

TEST_CASE("generator shapes") {
  Instance a = gen_partition_ef({1, 2, 3}).instance;
  CHECK(a.agents() == 3);
  CHECK(a.tasks() == 4);
  CHECK(a.reward(1) == q(1, 60));
  CHECK(a.prob(1, 0) == q(1, 10));
  CHECK(a.cost(0, 0) == q(1, 2));
  CHECK(a.prob(0, 2) == 0);

  Instance b = gen_partition_ef1({1, 2, 3}).instance;
  CHECK(b.agents() == 3);
  CHECK(b.tasks() == 5);

  Instance c = gen_partition_eps_ef({1, 2, 3}, q(1, 20)).instance;
  CHECK(c.tasks() == 5);
  CHECK(c.prob(1, 1) == q(1, 10));
  CHECK(c.prob(2, 1) == q(1, 10));
  CHECK(c.prob(1, 0) == q(1, 10));

  Instance d = gen_two_agent_hard({1, 2, 3}).instance;
  CHECK(d.agents() == 2);
  CHECK(d.tasks() == 5);
  CHECK(d.prob(0, 1) == q(1, 10));
  CHECK(d.prob(1, 1) == 0);
  CHECK(d.reward(2) == q(1, 30));

  Instance e = gen_pof_sqrt(9).instance;
  CHECK(e.agents() == 9);
  CHECK(e.tasks() == 9);
  CHECK(unconstrained_opt(e) == 3);
  CHECK(unconstrained_opt(gen_pof_sqrt(12).instance) == 3);

  CHECK_THROWS_AS(gen_partition_ef({}), InvalidArgument);
  CHECK_THROWS_AS(gen_partition_ef({1, 0}), InvalidArgument);
  CHECK_THROWS_AS(gen_pof_sqrt(8), InvalidArgument);
  CHECK_THROWS_AS(gen_partition_eps_ef({1}, q(0)), InvalidArgument);
}

TEST_CASE("named examples") {
  Instance a = gen_example("5.2", q(1, 100)).instance;
  CHECK(a.agents() == 2);
  CHECK(unconstrained_opt(a) == q(1, 4));
  Instance b = gen_example("5.7", q(1, 20)).instance;
  CHECK(b.agents() == 21);
  CHECK(b.tasks() == 1);
  CHECK(unconstrained_opt(b) == q(1, 4));
  CHECK_THROWS_AS(gen_example("5.7", q(1, 3) * 2), InvalidArgument);
  CHECK_THROWS_AS(gen_example("6.1", q(1, 10)), InvalidArgument);
}

TEST_CASE("independent set construction") {
  SUBCASE("single edge shape") {
    Graph g{2, {{0, 1}}};
    Instance inst = gen_independent_set(g, 1).instance;
    CHECK(inst.agents() == 2);
    CHECK(inst.tasks() == 3);
    CHECK(independent_set_delta(g, 1) == q(1, 8));
  }
  SUBCASE("triangle with a one-vertex independent set") {
    Graph g{3, {{0, 1}, {1, 2}, {0, 2}}};
    const Rational delta = independent_set_delta(g, 2);
    CHECK(delta == q(1, 64));
    Instance inst = gen_independent_set(g, 2).instance;
    CHECK(inst.agents() == 4);
    CHECK(inst.tasks() == 6);
    // vertex 0 goes to the hub at 1/2, the other vertex tasks to edge agent 1 at 0,
    // each edge task to its own agent at 1
    Contract k = testing::make_contract(4, {0, 2, 2, 1, 2, 3}, {q(1, 2), q(0), q(0), q(1), q(1), q(1)});
    CHECK(verify_ir(inst, k).ok);
    CHECK(verify_ef(inst, k).ok);
    CHECK(revenue(inst, k) == q(1, 2) + 2 * delta);
  }
  SUBCASE("isolated vertices are accepted") {
    Graph g{4, {{0, 1}}};
    Instance inst = gen_independent_set(g, 1).instance;
    CHECK(inst.tasks() == 5);
    CHECK(inst.prob(1, 3) == 0);
  }
  CHECK_THROWS_AS(gen_independent_set(Graph{2, {}}, 1), InvalidArgument);
  CHECK_THROWS_AS(gen_independent_set(Graph{2, {{0, 2}}}, 1), InvalidArgument);
}

TEST_CASE("exact optimum on small independent set instances respects the recipe") {
  // path on three vertices: the largest independent set {0, 2} has size 2
  Graph g{3, {{0, 1}, {1, 2}}};
  Instance inst = gen_independent_set(g, 1).instance;
  const Rational delta = independent_set_delta(g, 1);
  SolveResult r = solve_opt_ef(inst, 0, {10'000'000, Arithmetic::Exact});
  CHECK(r.revenue >= 1 + delta);
  CHECK(verify_ef(inst, r.contract).ok);
}

TEST_CASE("random instances") {
  const RandomProfile profiles[] = {RandomProfile::Uniform, RandomProfile::CostHeavy, RandomProfile::SparseAbility,
                                    RandomProfile::SingleAgent};
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    RandomProfile pr = profiles[seed % 4];
    Generated g = gen_random(1 + seed % 4, 1 + seed % 7, seed, pr);
    Generated h = gen_random(1 + seed % 4, 1 + seed % 7, seed, pr);
    CHECK(instance_to_json(g.instance).dump() == instance_to_json(h.instance).dump());
    // Instance::create enforces the ranges and that every task has a rational agent
    CHECK_NOTHROW(Instance::create(g.instance.rewards(), g.instance.prob_matrix(), g.instance.cost_matrix()));
    if (pr == RandomProfile::SingleAgent) CHECK(g.instance.agents() == 1);
    CHECK(g.manifest["generator"] == "random");
    CHECK(g.manifest["params"]["seed"] == seed);
  }
  CHECK(parse_profile("cost-heavy") == RandomProfile::CostHeavy);
  CHECK(profile_name(RandomProfile::SparseAbility) == "sparse-ability");
  CHECK_THROWS_AS(parse_profile("dense"), InvalidArgument);
  CHECK_THROWS_AS(gen_random(0, 3, 1), InvalidArgument);
}

TEST_CASE("manifests record parameters") {
  auto g = gen_partition_eps_ef({2, 2}, q(1, 10));
  CHECK(g.manifest["generator"] == "partition-eps-ef");
  CHECK(g.manifest["params"]["numbers"] == nlohmann::json::array({2, 2}));
  CHECK(g.manifest["params"]["eps"] == "1/10");
  CHECK(gen_pof_sqrt(10).manifest["params"]["n"] == 10);
}
