#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "faircon/instance.hpp"
#include "faircon/rational.hpp"
#include "faircon/simplex.hpp"

namespace faircon {

enum class RowTag { IR, EnvyPair, Linearization, UpperBound };

struct LpVariable {
  std::string name;
  Rational lower = 0;
  std::optional<Rational> upper;
};

struct LpRow {
  std::string name;
  RowTag tag = RowTag::IR;
  std::vector<std::pair<std::size_t, Rational>> terms;
  simplex::Sense sense = simplex::Sense::GreaterEqual;
  Rational rhs = 0;
};

// Revenue-maximisation program for one fixed allocation. Variables are
// alpha_k (one per task), t_ik (one per agent/task pair) and optionally s_i.
struct LpModel {
  std::size_t agents = 0;
  std::size_t tasks = 0;
  bool has_subsidies = false;
  std::vector<LpVariable> vars;
  std::vector<LpRow> rows;
  std::vector<Rational> objective;  // per variable
  Rational objective_constant = 0;

  std::size_t alpha_var(std::size_t k) const { return k; }
  std::size_t aux_var(std::size_t i, std::size_t k) const { return tasks + i * tasks + k; }
  std::size_t subsidy_var(std::size_t i) const { return tasks + agents * tasks + i; }
};

// Pairs (i, j) in the both-nonempty case, each with the chosen task removed from j's bundle.
using WitnessMap = std::map<std::pair<std::size_t, std::size_t>, std::size_t>;

LpModel build_ef_lp(const Instance& inst, const Allocation& alloc, const Rational& eps = 0);
LpModel build_ef1_lp(const Instance& inst, const Allocation& alloc, const WitnessMap& witnesses,
                     const std::vector<std::optional<Rational>>& alpha_upper);
// Subsidy variables enter the objective with weight -1 and both sides of each envy row.
LpModel build_efs_lp(const Instance& inst, const Allocation& alloc);

enum class Arithmetic { Float, Exact };

struct LpOptions {
  Arithmetic arithmetic = Arithmetic::Float;
  double pivot_tolerance = 1e-10;
};

struct LpSolution {
  simplex::Status status = simplex::Status::Infeasible;
  std::vector<Rational> values;
  Rational objective = 0;
  std::size_t pivots = 0;
};

LpSolution solve_lp(const LpModel& model, const LpOptions& options = {});

// CPLEX LP text format, for debugging with external solvers.
std::string write_lp_text(const LpModel& model);

}  // namespace faircon
