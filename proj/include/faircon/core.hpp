#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "faircon/instance.hpp"
#include "faircon/rational.hpp"

namespace faircon {

struct SolveMeta {
  std::string method;
  std::optional<Rational> epsilon;
  std::optional<Rational> delta;
  std::optional<Rational> nu;
  std::optional<std::vector<Rational>> guess;
  std::size_t states = 0;
  std::size_t lp_solves = 0;
  std::size_t allocations = 0;
  std::size_t guesses = 0;
  double seconds = 0.0;
};

struct SolveResult {
  Contract contract;
  Rational revenue;
  SolveMeta meta;
};

// alpha_k * p_ik * r_k - c_ik
Rational agent_task_utility(const Instance& inst, const std::vector<Rational>& alpha, std::size_t i,
                            std::size_t k);
Rational clamped_task_utility(const Instance& inst, const std::vector<Rational>& alpha, std::size_t i,
                              std::size_t k);

// Principal's expected revenue, subsidies subtracted.
Rational revenue(const Instance& inst, const Contract& contract);

// Sum over tasks of max_i (p_ij r_j - c_ij)^+.
Rational unconstrained_opt(const Instance& inst);

// Which left-hand side the envy checks used. The clamped form applies when IR fails.
enum class EnvyForm { Simplified, Clamped };

struct IrReport {
  bool ok = true;
  std::vector<Rational> slack;  // owner's utility per task
};

struct EnvyReport {
  bool ok = true;
  EnvyForm form = EnvyForm::Simplified;
  Rational epsilon;
  Rational tolerance;
  std::vector<std::vector<Rational>> slack;  // slack[i][j]: agent i looking at agent j
};

struct Ef1Report {
  bool ok = true;
  EnvyForm form = EnvyForm::Simplified;
  Rational tolerance;
  std::vector<std::vector<Rational>> slack;
  std::vector<std::vector<std::optional<std::size_t>>> witness;
};

IrReport verify_ir(const Instance& inst, const Contract& contract, const Rational& tol = 0);
EnvyReport verify_ef(const Instance& inst, const Contract& contract, const Rational& tol = 0);
EnvyReport verify_eps_ef(const Instance& inst, const Contract& contract, const Rational& eps,
                         const Rational& tol = 0);
Ef1Report verify_ef1(const Instance& inst, const Contract& contract, const Rational& tol = 0);
// Throws InvalidArgument when the contract carries no subsidies.
EnvyReport verify_efs(const Instance& inst, const Contract& contract, const Rational& tol = 0);

struct FairnessReport {
  IrReport ir;
  EnvyReport ef;
  EnvyReport eps_ef;
  Ef1Report ef1;
  std::optional<EnvyReport> efs;  // only for contracts with subsidies
  bool full_allocation = true;
};

FairnessReport fairness_report(const Instance& inst, const Contract& contract, const Rational& eps,
                               const Rational& tol);

// Smallest alpha making (i, k) individually rational. Zero when c = 0; nullopt when p*r = 0 < c.
std::optional<Rational> minimum_wage(const Instance& inst, std::size_t i, std::size_t k);

// Each task goes to the agent with the cheapest minimum wage among those with p*r - c >= 0.
SolveResult greedy_ef(const Instance& inst);

}  // namespace faircon
