#pragma once

#include <cstddef>

#include "faircon/core.hpp"
#include "faircon/instance.hpp"

namespace faircon {

// Round-robin allocation with contracts fixed up front. The agent with the largest total surplus
// sets the contract for every task it can be paid to do; other tasks use the cheapest minimum wage.
SolveResult round_robin_ef1(const Instance& inst);

// Instance with m + n extra tasks (p = 1, c = 0, r = 1) appended after the original tasks.
struct AugmentedInstance {
  Instance instance;
  std::size_t original_tasks = 0;
  std::size_t added_tasks = 0;
};

AugmentedInstance efs_augment(const Instance& inst);

// Maps an envy-free contract on the augmented instance to a contract with subsidies.
// Subsidy of agent i is the total payment it receives on added tasks.
Contract extract_subsidies(const AugmentedInstance& aug, const Contract& augmented);

// Inverse direction: spreads each subsidy over ceil(s_i) added tasks. Throws if there are too few.
Contract embed_subsidies(const AugmentedInstance& aug, const Contract& with_subsidies);

}  // namespace faircon
