#include "faircon/core.hpp"

#include <chrono>

#include "faircon/errors.hpp"

namespace faircon {

namespace {

Rational positive_part(const Rational& x) { return x > 0 ? x : Rational(0); }

struct EnvyTerms {
  EnvyForm form;
  std::vector<Rational> own;               // LHS per agent
  std::vector<std::vector<Rational>> rhs;  // rhs[i][j]
  std::vector<std::vector<std::size_t>> bundles;
};

EnvyTerms envy_terms(const Instance& inst, const Contract& contract, const Rational& tol) {
  check_compatible(inst, contract);
  const std::size_t n = inst.agents();
  EnvyTerms t;
  t.form = verify_ir(inst, contract, tol).ok ? EnvyForm::Simplified : EnvyForm::Clamped;
  t.bundles = contract.allocation().bundles();
  t.own.assign(n, Rational(0));
  t.rhs.assign(n, std::vector<Rational>(n, Rational(0)));
  const auto& alpha = contract.alpha();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k : t.bundles[i]) {
      Rational u = agent_task_utility(inst, alpha, i, k);
      t.own[i] += t.form == EnvyForm::Simplified ? u : positive_part(u);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k : t.bundles[j]) t.rhs[i][j] += clamped_task_utility(inst, alpha, i, k);
    }
  }
  return t;
}

EnvyReport pairwise(const Instance& inst, const Contract& contract, const Rational& eps,
                    const Rational& tol, bool with_subsidies) {
  if (eps < 0) throw InvalidArgument("epsilon must be nonnegative");
  if (tol < 0) throw InvalidArgument("tolerance must be nonnegative");
  if (with_subsidies && contract.subsidies() && contract.subsidies()->size() != inst.agents())
    throw DimensionMismatch("subsidy vector has wrong length");
  EnvyTerms t = envy_terms(inst, contract, tol);
  const std::size_t n = inst.agents();
  EnvyReport rep;
  rep.form = t.form;
  rep.epsilon = eps;
  rep.tolerance = tol;
  rep.slack.assign(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Rational slack = t.own[i] - t.rhs[i][j] + eps;
      if (with_subsidies) slack += contract.subsidy(i) - contract.subsidy(j);
      if (slack < -tol) rep.ok = false;
      rep.slack[i][j] = std::move(slack);
    }
  }
  return rep;
}

}  // namespace

Rational agent_task_utility(const Instance& inst, const std::vector<Rational>& alpha, std::size_t i,
                            std::size_t k) {
  if (k >= alpha.size()) throw IndexOutOfRange("task index out of range");
  return alpha[k] * inst.value(i, k) - inst.cost(i, k);
}

Rational clamped_task_utility(const Instance& inst, const std::vector<Rational>& alpha, std::size_t i,
                              std::size_t k) {
  return positive_part(agent_task_utility(inst, alpha, i, k));
}

Rational revenue(const Instance& inst, const Contract& contract) {
  check_compatible(inst, contract);
  Rational total = 0;
  const auto& alloc = contract.allocation();
  for (std::size_t k = 0; k < inst.tasks(); ++k)
    total += (1 - contract.alpha(k)) * inst.value(alloc.owner(k), k);
  for (std::size_t i = 0; i < inst.agents(); ++i) total -= contract.subsidy(i);
  return total;
}

Rational unconstrained_opt(const Instance& inst) {
  Rational total = 0;
  for (std::size_t j = 0; j < inst.tasks(); ++j) {
    Rational best = 0;
    for (std::size_t i = 0; i < inst.agents(); ++i) {
      Rational s = inst.value(i, j) - inst.cost(i, j);
      if (s > best) best = s;
    }
    total += best;
  }
  return total;
}

IrReport verify_ir(const Instance& inst, const Contract& contract, const Rational& tol) {
  check_compatible(inst, contract);
  if (tol < 0) throw InvalidArgument("tolerance must be nonnegative");
  IrReport rep;
  for (std::size_t k = 0; k < inst.tasks(); ++k) {
    Rational u = agent_task_utility(inst, contract.alpha(), contract.allocation().owner(k), k);
    if (u < -tol) rep.ok = false;
    rep.slack.push_back(std::move(u));
  }
  return rep;
}

EnvyReport verify_ef(const Instance& inst, const Contract& contract, const Rational& tol) {
  return pairwise(inst, contract, Rational(0), tol, false);
}

EnvyReport verify_eps_ef(const Instance& inst, const Contract& contract, const Rational& eps,
                         const Rational& tol) {
  return pairwise(inst, contract, eps, tol, false);
}

EnvyReport verify_efs(const Instance& inst, const Contract& contract, const Rational& tol) {
  if (!contract.subsidies()) throw InvalidArgument("contract has no subsidies");
  return pairwise(inst, contract, Rational(0), tol, true);
}

Ef1Report verify_ef1(const Instance& inst, const Contract& contract, const Rational& tol) {
  if (tol < 0) throw InvalidArgument("tolerance must be nonnegative");
  EnvyTerms t = envy_terms(inst, contract, tol);
  const std::size_t n = inst.agents();
  Ef1Report rep;
  rep.form = t.form;
  rep.tolerance = tol;
  rep.slack.assign(n, std::vector<Rational>(n, Rational(0)));
  rep.witness.assign(n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (t.bundles[j].empty()) {
        rep.slack[i][j] = t.own[i];
        continue;
      }
      std::size_t best = t.bundles[j].front();
      Rational best_u = clamped_task_utility(inst, contract.alpha(), i, best);
      for (std::size_t k : t.bundles[j]) {
        Rational u = clamped_task_utility(inst, contract.alpha(), i, k);
        if (u > best_u) {
          best_u = u;
          best = k;
        }
      }
      rep.witness[i][j] = best;
      rep.slack[i][j] = t.own[i] - (t.rhs[i][j] - best_u);
      if (rep.slack[i][j] < -tol) rep.ok = false;
    }
  }
  return rep;
}

FairnessReport fairness_report(const Instance& inst, const Contract& contract, const Rational& eps,
                               const Rational& tol) {
  FairnessReport rep;
  rep.ir = verify_ir(inst, contract, tol);
  rep.ef = verify_ef(inst, contract, tol);
  rep.eps_ef = verify_eps_ef(inst, contract, eps, tol);
  rep.ef1 = verify_ef1(inst, contract, tol);
  if (contract.subsidies()) rep.efs = verify_efs(inst, contract, tol);
  rep.full_allocation = contract.allocation().tasks() == inst.tasks();
  return rep;
}

std::optional<Rational> minimum_wage(const Instance& inst, std::size_t i, std::size_t k) {
  const Rational& v = inst.value(i, k);
  const Rational& c = inst.cost(i, k);
  if (c == 0) return Rational(0);
  if (v == 0) return std::nullopt;
  return Rational(c / v);
}

SolveResult greedy_ef(const Instance& inst) {
  auto start = std::chrono::steady_clock::now();
  const std::size_t n = inst.agents(), m = inst.tasks();
  std::vector<std::size_t> owner(m);
  std::vector<Rational> alpha(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::optional<std::size_t> pick;
    Rational pick_wage;
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.value(i, j) < inst.cost(i, j)) continue;
      // inside this set p*r = 0 forces c = 0, so a wage always exists
      Rational w = *minimum_wage(inst, i, j);
      if (!pick || w < pick_wage) {
        pick = i;
        pick_wage = w;
      }
    }
    owner[j] = *pick;
    alpha[j] = pick_wage;
  }
  SolveResult res{Contract(Allocation(n, std::move(owner)), std::move(alpha)), Rational(0), {}};
  res.revenue = revenue(inst, res.contract);
  res.meta.method = "greedy-ef";
  res.meta.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace faircon
