#include "faircon/ext.hpp"

#include <chrono>
#include <string>

#include "faircon/errors.hpp"

namespace faircon {

SolveResult round_robin_ef1(const Instance& inst) {
  auto start = std::chrono::steady_clock::now();
  const std::size_t n = inst.agents(), m = inst.tasks();

  std::size_t lead = 0;
  Rational lead_total = -1;
  for (std::size_t i = 0; i < n; ++i) {
    Rational total = 0;
    for (std::size_t j = 0; j < m; ++j) {
      Rational s = inst.value(i, j) - inst.cost(i, j);
      if (s > 0) total += s;
    }
    if (total > lead_total) {
      lead_total = total;
      lead = i;
    }
  }

  std::vector<Rational> alpha(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (inst.value(lead, j) >= inst.cost(lead, j)) {
      alpha[j] = *minimum_wage(inst, lead, j);
      continue;
    }
    std::optional<Rational> best;
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.value(i, j) < inst.cost(i, j)) continue;
      Rational w = *minimum_wage(inst, i, j);
      if (!best || w < *best) best = w;
    }
    alpha[j] = *best;
  }

  std::vector<std::size_t> order{lead};
  for (std::size_t i = 0; i < n; ++i)
    if (i != lead) order.push_back(i);

  const std::size_t unassigned = n;
  std::vector<std::size_t> owner(m, unassigned);
  std::size_t remaining = m;
  bool progress = true;
  while (remaining > 0 && progress) {
    progress = false;
    for (std::size_t i : order) {
      if (remaining == 0) break;
      std::optional<std::size_t> pick;
      Rational pick_u, pick_rev;
      for (std::size_t j = 0; j < m; ++j) {
        if (owner[j] != unassigned) continue;
        Rational u = agent_task_utility(inst, alpha, i, j);
        if (u < 0) continue;
        Rational rev = (1 - alpha[j]) * inst.value(i, j);
        if (!pick || u > pick_u || (u == pick_u && rev > pick_rev)) {
          pick = j;
          pick_u = std::move(u);
          pick_rev = std::move(rev);
        }
      }
      if (!pick) continue;
      owner[*pick] = i;
      --remaining;
      progress = true;
    }
  }
  // Every task is rational for at least one agent under these contracts, so this sweep is a safeguard.
  for (std::size_t j = 0; j < m; ++j) {
    if (owner[j] != unassigned) continue;
    for (std::size_t i = 0; i < n && owner[j] == unassigned; ++i)
      if (agent_task_utility(inst, alpha, i, j) >= 0) owner[j] = i;
    if (owner[j] == unassigned) owner[j] = lead;
  }

  SolveResult res{Contract(Allocation(n, std::move(owner)), std::move(alpha)), Rational(0), {}};
  res.revenue = revenue(inst, res.contract);
  res.meta.method = "round-robin";
  res.meta.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

AugmentedInstance efs_augment(const Instance& inst) {
  const std::size_t n = inst.agents(), m = inst.tasks();
  const std::size_t extra = m + n;
  std::vector<Rational> r = inst.rewards();
  auto p = inst.prob_matrix();
  auto c = inst.cost_matrix();
  r.resize(m + extra, Rational(1));
  for (std::size_t i = 0; i < n; ++i) {
    p[i].resize(m + extra, Rational(1));
    c[i].resize(m + extra, Rational(0));
  }
  return AugmentedInstance{Instance::create(std::move(r), std::move(p), std::move(c)), m, extra};
}

Contract extract_subsidies(const AugmentedInstance& aug, const Contract& augmented) {
  check_compatible(aug.instance, augmented);
  const std::size_t n = aug.instance.agents(), m = aug.original_tasks;
  std::vector<std::size_t> owner(m);
  std::vector<Rational> alpha(m);
  std::vector<Rational> subsidy(n, Rational(0));
  for (std::size_t k = 0; k < m; ++k) {
    owner[k] = augmented.allocation().owner(k);
    alpha[k] = augmented.alpha(k);
  }
  for (std::size_t k = m; k < m + aug.added_tasks; ++k)
    subsidy[augmented.allocation().owner(k)] += augmented.alpha(k) * aug.instance.value(augmented.allocation().owner(k), k);
  return Contract(Allocation(n, std::move(owner)), std::move(alpha), std::move(subsidy));
}

Contract embed_subsidies(const AugmentedInstance& aug, const Contract& with_subsidies) {
  const std::size_t n = aug.instance.agents(), m = aug.original_tasks;
  if (with_subsidies.allocation().agents() != n || with_subsidies.allocation().tasks() != m)
    throw DimensionMismatch("contract does not match the original instance");
  std::vector<std::size_t> owner(with_subsidies.allocation().owners());
  std::vector<Rational> alpha(with_subsidies.alpha());
  for (std::size_t i = 0; i < n; ++i) {
    Rational left = with_subsidies.subsidy(i);
    while (left > 0) {
      if (owner.size() == m + aug.added_tasks)
        throw InvalidArgument("subsidies need more than " + std::to_string(aug.added_tasks) + " added tasks");
      Rational piece = left > 1 ? Rational(1) : left;
      owner.push_back(i);
      alpha.push_back(piece);
      left -= piece;
    }
  }
  while (owner.size() < m + aug.added_tasks) {
    owner.push_back(0);
    alpha.push_back(Rational(0));
  }
  return Contract(Allocation(n, std::move(owner)), std::move(alpha));
}

}  // namespace faircon
