#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "faircon/core.hpp"
#include "faircon/instance.hpp"

namespace faircon {

// Points k * step for k = 0..top. A zero step is the single point {0}.
struct UniformGrid {
  Rational step = 0;
  std::uint32_t top = 0;

  // Smallest level whose point is >= x; nonpositive x maps to 0. Throws if x exceeds the grid.
  std::uint32_t ceil_level(const Rational& x) const;
  Rational point(std::uint32_t level) const { return step * level; }
};

struct Discretization {
  std::vector<std::vector<Rational>> contracts;  // per task, ascending and distinct
  std::vector<UniformGrid> agent;                // per agent utility grid
  UniformGrid principal;
};

// Every task uses {0, 1/K, ..., 1}; every utility grid has step 1/K.
Discretization uniform_discretization(const Instance& inst, std::uint32_t K);

// Grid adapted to the guessed agent utilities, with K + 1 points per (agent, task) segment.
Discretization adaptive_grid(const Instance& inst, const std::vector<Rational>& guess, std::uint32_t K);

// Largest alpha in [0,1] with alpha * p_ij r_j - c_ij <= U.
Rational alpha_cap(const Instance& inst, std::size_t i, std::size_t j, const Rational& U);

// Optional state filters. Components are indexed like profiles: 0 is the principal, 1 + i*n + j is v_ij.
struct DpPruning {
  std::vector<std::uint32_t> cap;  // empty means no caps
  std::uint32_t min_final_principal = 0;
};

struct DpOptions {
  std::size_t state_budget = 5'000'000;
  std::optional<DpPruning> pruning;
};

// Final layer of the dynamic program with back-pointers to rebuild each representative.
class DpTable {
 public:
  std::size_t width() const { return width_; }
  std::size_t size() const { return final_count_; }
  std::size_t states() const { return states_; }
  const std::uint32_t* profile(std::size_t idx) const { return profiles_.data() + idx * width_; }
  // Owner and contract index per task for the representative idx.
  void trace(std::size_t idx, std::vector<std::uint32_t>& owner, std::vector<std::uint32_t>& level) const;
  Contract contract(std::size_t idx) const;

 private:
  friend DpTable dp_enumerate(const Instance&, const Discretization&, const DpOptions&);
  struct Step {
    std::uint32_t parent;
    std::uint32_t move;
  };
  struct Move {
    std::uint32_t owner;
    std::uint32_t level;
  };
  std::size_t n_ = 0;
  std::size_t width_ = 0;
  std::size_t final_count_ = 0;
  std::size_t states_ = 0;
  std::vector<std::vector<Step>> steps_;  // per layer
  std::vector<std::vector<Move>> moves_;  // per task
  std::vector<std::vector<Rational>> contracts_;
  std::vector<std::uint32_t> profiles_;
};

// Profiles are (h; v_11, v_12, ..., v_nn) in grid levels; one representative per distinct profile,
// the first one met in the order alpha, agent, previous state.
DpTable dp_enumerate(const Instance& inst, const Discretization& disc, const DpOptions& options = {});

struct FptasOptions {
  std::size_t state_budget = 5'000'000;
  // Overrides the bit-length bound f(I) on the smallest positive agent utility.
  std::optional<std::size_t> f_override;
  // Drops states that cannot lie on the path of the profile used in the guarantee.
  bool prune = true;
};

// eps-EF contract with revenue at least OPT-EF - eps.
SolveResult solve_eps_ef_fptas(const Instance& inst, const Rational& eps, const FptasOptions& options = {});

// EF1 contract with revenue at least OPT-EF - 2 min(eps, 1/(6m)).
SolveResult solve_ef1_fptas(const Instance& inst, const Rational& eps, const FptasOptions& options = {});

// Total bits of all numerators and denominators in the instance.
std::size_t instance_bit_length(const Instance& inst);

// {0} and m 2^-i for i = 0..f + ceil(log2 m).
std::vector<Rational> utility_guesses(std::size_t m, std::size_t f);

}  // namespace faircon
