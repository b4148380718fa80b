#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "faircon/instance.hpp"

namespace faircon {

struct Generated {
  Instance instance;
  nlohmann::json manifest;  // generator name and parameters
};

// Three agents; agent 0 is the only one that can do task 0, the others split the integer tasks.
Generated gen_partition_ef(const std::vector<std::uint64_t>& numbers);
// As above with two heavy tasks and the scale constant C = 10.
Generated gen_partition_ef1(const std::vector<std::uint64_t>& numbers);
// Second heavy task has p = 2*eps for agents 1 and 2.
Generated gen_partition_eps_ef(const std::vector<std::uint64_t>& numbers, const Rational& eps);
// Two agents, optimum 3/5 exactly when the numbers split evenly.
Generated gen_two_agent_hard(const std::vector<std::uint64_t>& numbers);

struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Agent 0 is the hub; agent 1 + e belongs to edge e. Tasks: one per vertex, then one per edge.
Generated gen_independent_set(const Graph& graph, std::uint64_t c_target);
Rational independent_set_delta(const Graph& graph, std::uint64_t c_target);

// Instance where fair revenue stays below 2 while the optimum is floor(sqrt(n)).
Generated gen_pof_sqrt(std::size_t n);

// Small named examples: "5.2", "5.4" and "5.7".
Generated gen_example(const std::string& name, const Rational& eps);

enum class RandomProfile { Uniform, CostHeavy, SparseAbility, SingleAgent };

RandomProfile parse_profile(const std::string& name);
std::string profile_name(RandomProfile profile);

// Values on a grid of step 1/20, repaired so every task has a rational agent.
Generated gen_random(std::size_t n, std::size_t m, std::uint64_t seed,
                     RandomProfile profile = RandomProfile::Uniform);

}  // namespace faircon
