#include <doctest.h>

#include <algorithm>
#include <set>

#include "faircon/core.hpp"
#include "faircon/errors.hpp"
#include "faircon/exact.hpp"
#include "faircon/ext.hpp"
#include "faircon/instances.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace faircon;
using testing::q;

namespace {

const ExactOptions kExact{10'000'000, Arithmetic::Exact};

// Exposure sets by list position: position p in [0, |A| + 1] puts the first p - 1 agents of the
// sorted list strictly below the cut, and every agent at the top sentinel.
std::set<std::vector<std::size_t>> case4_by_definition(const Instance& inst, const std::vector<std::size_t>& bundle,
                                                       const std::vector<std::size_t>& empty) {
  const std::size_t qn = empty.size();
  std::vector<std::vector<std::size_t>> order(bundle.size());
  for (std::size_t t = 0; t < bundle.size(); ++t) {
    order[t] = empty;
    std::sort(order[t].begin(), order[t].end(), [&](std::size_t a, std::size_t b) {
      return *minimum_wage(inst, a, bundle[t]) < *minimum_wage(inst, b, bundle[t]);
    });
  }
  std::set<std::vector<std::size_t>> out;
  std::vector<std::size_t> pos(bundle.size(), 0);
  do {
    std::vector<int> count(inst.agents(), 0);
    bool ok = true;
    for (std::size_t t = 0; t < bundle.size(); ++t) {
      const std::size_t below = pos[t] == 0 ? 0 : pos[t] == qn + 1 ? qn : pos[t] - 1;
      for (std::size_t x = 0; x < below; ++x)
        if (++count[order[t][x]] > 1) ok = false;
    }
    if (ok) out.insert(pos);
  } while (oracle::next_vector(pos, qn + 2));
  return out;
}

}  // namespace

TEST_CASE("optimal EF on the two-agent example") {
  for (auto mode : {Arithmetic::Float, Arithmetic::Exact}) {
    SolveResult r = solve_opt_ef(gen_example("5.2", q(1, 100)).instance, 0, {10'000'000, mode});
    if (mode == Arithmetic::Exact) CHECK(r.revenue == q(9, 100));
    CHECK(to_double(r.revenue) == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(r.contract.allocation().owner(0) == 0);
    CHECK(r.meta.method == "exact-ef");
    CHECK(r.meta.allocations == 2);
  }
}

TEST_CASE("optimal EF on partition constructions") {
  SolveResult yes = solve_opt_ef(gen_partition_ef({1, 2, 3}).instance, 0, kExact);
  CHECK(yes.revenue == q(1, 2));

  Instance no_inst = gen_partition_ef({1, 1, 1}).instance;
  SolveResult no = solve_opt_ef(no_inst, 0, kExact);
  CHECK(no.revenue <= q(1, 5));
  CHECK(verify_ef(no_inst, no.contract).ok);
  // coarse grid never beats the solver
  auto grid = oracle::grid_search(no_inst, 10, oracle::Notion::Ef);
  CHECK(grid.revenue <= no.revenue.get_d() + 1e-9);

  CHECK(solve_opt_ef(gen_two_agent_hard({1, 2, 3}).instance, 0, kExact).revenue == q(3, 5));
  CHECK(solve_opt_ef(gen_two_agent_hard({1, 1, 1}).instance, 0, kExact).revenue < q(3, 5));
}

TEST_CASE("optimal EF against grid search") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Instance inst = gen_random(2 + seed % 2, 2, 2100 + seed).instance;
    SolveResult r = solve_opt_ef(inst, 0, kExact);
    CHECK(verify_ir(inst, r.contract).ok);
    CHECK(verify_ef(inst, r.contract).ok);
    CHECK(r.revenue == revenue(inst, r.contract));
    auto grid = oracle::grid_search(inst, 100, oracle::Notion::Ef);
    CHECK(r.revenue.get_d() >= grid.revenue - 1e-9);
  }
}

TEST_CASE("optimal eps-EF") {
  Instance inst = gen_example("5.2", q(1, 100)).instance;
  SolveResult r = solve_opt_ef(inst, q(1, 20), kExact);
  CHECK(r.meta.method == "exact-eps-ef");
  CHECK(verify_eps_ef(inst, r.contract, q(1, 20)).ok);
  // agent 1 can take the task at 1/2 once agent 0's envy of 1/25 is tolerated
  CHECK(r.revenue == q(1, 4));
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Instance x = gen_random(3, 3, 2200 + seed).instance;
    auto grid = oracle::grid_search(x, 20, oracle::Notion::EpsEf, 0.1);
    SolveResult s = solve_opt_ef(x, q(1, 10), kExact);
    CHECK(verify_eps_ef(x, s.contract, q(1, 10)).ok);
    CHECK(s.revenue.get_d() >= grid.revenue - 1e-9);
  }
}

TEST_CASE("revenue ordering across notions") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Instance inst = gen_random(2 + seed % 2, 2 + seed % 2, 2300 + seed).instance;
    Rational ef = solve_opt_ef(inst, 0, kExact).revenue;
    Rational eps = solve_opt_ef(inst, q(1, 10), kExact).revenue;
    SolveResult ef1 = solve_opt_ef1(inst, kExact);
    Rational opt = unconstrained_opt(inst);
    CHECK(greedy_ef(inst).revenue <= ef);
    CHECK(ef <= eps);
    CHECK(eps <= opt);
    CHECK(ef <= ef1.revenue);
    CHECK(ef1.revenue <= opt);
    CHECK(verify_ef1(inst, ef1.contract).ok);
    CHECK(verify_ir(inst, ef1.contract).ok);
  }
}

TEST_CASE("ties keep the smallest assignment vector") {
  Instance inst = Instance::create({q(1), q(1)}, {{q(1), q(1)}, {q(1), q(1)}}, {{q(0), q(0)}, {q(0), q(0)}});
  SolveResult r = solve_opt_ef(inst, 0, kExact);
  CHECK(r.revenue == 2);
  CHECK(r.contract.allocation().owners() == std::vector<std::size_t>{0, 0});
  SolveResult f = solve_opt_ef(inst, 0, {});
  CHECK(f.contract.allocation().owners() == std::vector<std::size_t>{0, 0});
}

TEST_CASE("enumeration budget") {
  Instance inst = gen_random(3, 6, 1).instance;
  CHECK_THROWS_AS(solve_opt_ef(inst, 0, {100, Arithmetic::Float}), BudgetExceeded);
  CHECK_THROWS_AS(solve_opt_ef1(inst, {100, Arithmetic::Float}), BudgetExceeded);
  CHECK_THROWS_AS(solve_opt_ef(inst, q(-1), {}), InvalidArgument);
}

TEST_CASE("optimal EF1") {
  SUBCASE("partition construction") {
    Instance inst = gen_partition_ef1({1, 2, 3}).instance;
    SolveResult r = solve_opt_ef1(inst, kExact);
    CHECK(r.revenue >= 1);
    CHECK(verify_ef1(inst, r.contract).ok);
  }
  SUBCASE("single agent") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Instance inst = gen_random(1, 4, 2400 + seed).instance;
      CHECK(solve_opt_ef1(inst, kExact).revenue == unconstrained_opt(inst));
    }
  }
  SUBCASE("grid search never wins") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Instance inst = gen_random(2 + seed % 2, 2 + seed % 2, 2500 + seed).instance;
      SolveResult r = solve_opt_ef1(inst);
      CHECK(verify_ef1(inst, r.contract, q(1, 1'000'000'000)).ok);
      auto grid = oracle::grid_search(inst, 20, oracle::Notion::Ef1);
      CHECK(r.revenue.get_d() >= grid.revenue - 1e-6);
      CHECK(r.meta.method == "exact-ef1");
    }
  }
  SUBCASE("envy toward empty bundles needs the bound vectors") {
    // agent 1 can only do task 0 and would envy agent 0 if the task paid above its wage
    Instance inst = Instance::create({q(1), q(1)}, {{q(1), q(1)}, {q(1, 2), q(0)}},
                                     {{q(1, 2), q(0)}, {q(1, 10), q(0)}});
    SolveResult r = solve_opt_ef1(inst, kExact);
    CHECK(verify_ef1(inst, r.contract).ok);
    auto grid = oracle::grid_search(inst, 100, oracle::Notion::Ef1);
    CHECK(r.revenue.get_d() >= grid.revenue - 1e-9);
  }
}

TEST_CASE("exposure bound enumeration") {
  SUBCASE("one task gives every list position") {
    Instance inst = gen_random(4, 2, 31).instance;
    auto b = enumerate_case4_bounds(inst, {0}, {1, 2, 3});
    CHECK(b.size() == 4 + 1);
    for (std::size_t x = 0; x < b.size(); ++x) CHECK(b[x].position[0] == x);
    CHECK(b.front().upper[0] == 0);
    CHECK(b.back().upper[0] == 1);
  }
  SUBCASE("crossing wage orders") {
    // owner 0 does both tasks for free; agents 1 and 2 have opposite wage orders
    Instance inst = Instance::create({q(1), q(1)}, {{q(1), q(1)}, {q(1), q(1)}, {q(1), q(1)}},
                                     {{q(0), q(0)}, {q(2, 10), q(6, 10)}, {q(4, 10), q(3, 10)}});
    auto got = enumerate_case4_bounds(inst, {0, 1}, {1, 2});
    std::set<std::vector<std::size_t>> positions;
    for (const auto& b : got) positions.insert(b.position);
    CHECK(positions == case4_by_definition(inst, {0, 1}, {1, 2}));
    CHECK(positions.size() < 16);
    // agent 1 below the cut on task 0 and agent 1 below the cut on task 1
    CHECK(positions.count({2, 3}) == 0);
    CHECK(positions.count({2, 2}) == 1);
  }
  SUBCASE("random instances match the positional definition") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      Instance inst = gen_random(4, 3, 2600 + seed).instance;
      std::vector<std::size_t> empty{1, 2, 3};
      bool distinct = true;
      for (std::size_t k = 0; k < 3; ++k) {
        std::set<Rational> seen;
        for (std::size_t a : empty) {
          auto w = minimum_wage(inst, a, k);
          if (!w || *w <= 0 || *w >= 1 || !seen.insert(*w).second) distinct = false;
        }
      }
      if (!distinct) continue;
      std::set<std::vector<std::size_t>> positions;
      for (const auto& b : enumerate_case4_bounds(inst, {0, 1, 2}, empty)) positions.insert(b.position);
      CHECK(positions == case4_by_definition(inst, {0, 1, 2}, empty));
    }
  }
  SUBCASE("no empty agents") {
    Instance inst = gen_partition_ef1({1, 2, 3}).instance;
    CHECK(enumerate_case4_bounds(inst, {0, 1}, {}).empty());
  }
}

TEST_CASE("optimal EFS") {
  SUBCASE("subsidy example") {
    Instance inst = gen_example("5.4", q(1, 100)).instance;
    SolveResult r = solve_opt_efs(inst, kExact);
    CHECK(r.meta.method == "exact-efs-reduction");
    CHECK(r.revenue >= q(15, 100));
    CHECK(verify_efs(inst, r.contract).ok);
  }
  SUBCASE("many weak agents") {
    Instance inst = gen_example("5.7", q(1, 20)).instance;
    SolveResult r = solve_opt_efs(inst);
    CHECK(r.meta.method == "exact-efs-direct");
    CHECK(r.revenue <= q(1, 10) + q(1, 1'000'000'000));
    CHECK(verify_efs(inst, r.contract, q(1, 1'000'000'000)).ok);
  }
  SUBCASE("reduction identity and a direct grid") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      Instance inst = gen_random(2, 1, 2700 + seed).instance;
      SolveResult r = solve_opt_efs(inst, kExact);
      CHECK(verify_efs(inst, r.contract).ok);
      AugmentedInstance aug = efs_augment(inst);
      SolveResult big = solve_opt_ef(aug.instance, 0, kExact);
      CHECK(r.revenue == big.revenue - 3);
      auto grid = oracle::grid_search(inst, 10'000, oracle::Notion::Efs);
      CHECK(std::abs(r.revenue.get_d() - grid.revenue) <= 1e-4);
      // the direct program agrees with the reduction
      SolveResult direct = solve_opt_efs(inst, {2, Arithmetic::Exact});
      CHECK(direct.meta.method == "exact-efs-direct");
      CHECK(direct.revenue == r.revenue);
    }
  }
}
