#pragma once

#include <cstddef>
#include <vector>

#include "faircon/core.hpp"
#include "faircon/instance.hpp"
#include "faircon/lp.hpp"

namespace faircon {

struct ExactOptions {
  std::size_t lp_budget = 10'000'000;
  Arithmetic arithmetic = Arithmetic::Float;
};

// Optimal (eps-)envy-free contract by enumerating allocations and solving one LP each.
// Ties keep the lexicographically smallest assignment vector.
SolveResult solve_opt_ef(const Instance& inst, const Rational& eps = 0, const ExactOptions& options = {});

// Optimal EF1 contract: allocations times witness choices times upper-bound vectors.
SolveResult solve_opt_ef1(const Instance& inst, const ExactOptions& options = {});

// Optimal envy-free-with-subsidies contract. Uses the augmented-instance reduction when
// n^(2m+n) fits in the budget and the direct subsidy LP over original allocations otherwise.
SolveResult solve_opt_efs(const Instance& inst, const ExactOptions& options = {});

// Upper-bound candidates for the tasks of one bundle when the agents in `empty_agents` own nothing.
// position[t] indexes the sorted list 0, w_(1), ..., w_(|A|), 1 for task bundle[t].
struct Case4Bound {
  std::vector<std::size_t> position;
  std::vector<Rational> upper;
};

// Returns only vectors under which each empty agent can strictly gain on at most one task.
// Empty when `empty_agents` is empty.
std::vector<Case4Bound> enumerate_case4_bounds(const Instance& inst, const std::vector<std::size_t>& bundle,
                                               const std::vector<std::size_t>& empty_agents);

}  // namespace faircon
