#include "faircon/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "faircon/errors.hpp"
#include "faircon/ext.hpp"

namespace faircon {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

void check_allocation_budget(std::size_t n, std::size_t m, std::size_t budget) {
  double count = std::pow(static_cast<double>(n), static_cast<double>(m));
  if (count > static_cast<double>(budget))
    throw BudgetExceeded(std::to_string(n) + "^" + std::to_string(m) +
                         " allocations exceed the LP budget of " + std::to_string(budget));
}

// Lexicographic successor; returns false after the last vector.
bool next_assignment(std::vector<std::size_t>& owner, std::size_t n) {
  for (std::size_t t = owner.size(); t-- > 0;) {
    if (++owner[t] < n) return true;
    owner[t] = 0;
  }
  return false;
}

// With alpha <= 1 an owner needs p*r >= c, otherwise the IR row is infeasible.
bool ir_possible(const Instance& inst, const std::vector<std::size_t>& owner) {
  for (std::size_t k = 0; k < owner.size(); ++k)
    if (inst.value(owner[k], k) < inst.cost(owner[k], k)) return false;
  return true;
}

std::vector<Rational> alpha_from_lp(const LpSolution& sol, std::size_t m) {
  std::vector<Rational> alpha(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(m));
  for (auto& a : alpha) {
    if (a < 0) a = 0;
    if (a > 1) a = 1;
  }
  return alpha;
}

class Incumbent {
 public:
  explicit Incumbent(Arithmetic arith) : margin_(arith == Arithmetic::Exact ? 0 : Rational(1, 1000000000000)) {}

  void offer(Contract contract, Rational rev) {
    if (best_ && !(rev > best_->revenue + margin_)) return;
    best_ = SolveResult{std::move(contract), std::move(rev), {}};
  }

  bool has() const { return best_.has_value(); }
  SolveResult take() { return std::move(*best_); }

 private:
  Rational margin_;
  std::optional<SolveResult> best_;
};

LpOptions lp_options(const ExactOptions& o) {
  LpOptions lo;
  lo.arithmetic = o.arithmetic;
  return lo;
}

SolveResult finish(Incumbent& inc, const char* method, SolveMeta meta, Clock::time_point start) {
  if (!inc.has()) throw std::logic_error(std::string(method) + ": no feasible allocation found");
  SolveResult res = inc.take();
  meta.method = method;
  meta.seconds = seconds_since(start);
  res.meta = std::move(meta);
  return res;
}

std::vector<std::size_t> witness_candidates(const Instance& inst, std::size_t i,
                                            const std::vector<std::size_t>& bundle) {
  // Removing a task that can never be worth anything to i is dominated by removing one that can.
  std::vector<std::size_t> out;
  for (std::size_t k : bundle)
    if (inst.value(i, k) > inst.cost(i, k)) out.push_back(k);
  if (out.empty()) out.push_back(bundle.front());
  return out;
}

SolveResult solve_efs_direct(const Instance& inst, const ExactOptions& options) {
  auto start = Clock::now();
  const std::size_t n = inst.agents(), m = inst.tasks();
  check_allocation_budget(n, m, options.lp_budget);
  Incumbent inc(options.arithmetic);
  SolveMeta meta;
  std::vector<std::size_t> owner(m, 0);
  do {
    ++meta.allocations;
    if (!ir_possible(inst, owner)) continue;
    Allocation alloc(n, owner);
    LpModel lp = build_efs_lp(inst, alloc);
    LpSolution sol = solve_lp(lp, lp_options(options));
    ++meta.lp_solves;
    if (sol.status != simplex::Status::Optimal) continue;
    std::vector<Rational> subsidy(n);
    for (std::size_t i = 0; i < n; ++i) subsidy[i] = sol.values[lp.subsidy_var(i)] < 0 ? Rational(0) : sol.values[lp.subsidy_var(i)];
    Contract contract(alloc, alpha_from_lp(sol, m), std::move(subsidy));
    Rational rev = revenue(inst, contract);
    inc.offer(std::move(contract), std::move(rev));
  } while (next_assignment(owner, n));
  return finish(inc, "exact-efs-direct", std::move(meta), start);
}

}  // namespace

SolveResult solve_opt_ef(const Instance& inst, const Rational& eps, const ExactOptions& options) {
  if (eps < 0) throw InvalidArgument("epsilon must be nonnegative");
  auto start = Clock::now();
  const std::size_t n = inst.agents(), m = inst.tasks();
  check_allocation_budget(n, m, options.lp_budget);
  Incumbent inc(options.arithmetic);
  SolveMeta meta;
  if (eps != 0) meta.epsilon = eps;
  std::vector<std::size_t> owner(m, 0);
  do {
    ++meta.allocations;
    if (!ir_possible(inst, owner)) continue;
    Allocation alloc(n, owner);
    LpSolution sol = solve_lp(build_ef_lp(inst, alloc, eps), lp_options(options));
    ++meta.lp_solves;
    if (sol.status != simplex::Status::Optimal) continue;
    Contract contract(alloc, alpha_from_lp(sol, m));
    Rational rev = revenue(inst, contract);
    inc.offer(std::move(contract), std::move(rev));
  } while (next_assignment(owner, n));
  return finish(inc, eps == 0 ? "exact-ef" : "exact-eps-ef", std::move(meta), start);
}

std::vector<Case4Bound> enumerate_case4_bounds(const Instance& inst, const std::vector<std::size_t>& bundle,
                                               const std::vector<std::size_t>& empty_agents) {
  std::vector<Case4Bound> out;
  if (empty_agents.empty() || bundle.empty()) return out;
  const std::size_t q = empty_agents.size();
  const std::size_t len = bundle.size();
  // candidate bounds per task: 0, sorted wages of the empty agents (capped at 1), then 1
  std::vector<std::vector<Rational>> bounds(len);
  for (std::size_t t = 0; t < len; ++t) {
    const std::size_t k = bundle[t];
    std::vector<std::pair<std::optional<Rational>, std::size_t>> order;
    for (std::size_t a : empty_agents) order.emplace_back(minimum_wage(inst, a, k), a);
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
      if (x.first.has_value() != y.first.has_value()) return x.first.has_value();
      if (x.first && *x.first != *y.first) return *x.first < *y.first;
      return x.second < y.second;
    });
    bounds[t].push_back(Rational(0));
    for (const auto& [w, a] : order) bounds[t].push_back(w && *w < 1 ? *w : Rational(1));
    bounds[t].push_back(Rational(1));
  }
  std::vector<std::size_t> pos(len, 0);
  std::vector<std::size_t> exposed(q);
  for (;;) {
    std::fill(exposed.begin(), exposed.end(), 0);
    bool ok = true;
    for (std::size_t t = 0; t < len && ok; ++t) {
      const std::size_t k = bundle[t];
      const Rational& ub = bounds[t][pos[t]];
      for (std::size_t x = 0; x < q && ok; ++x) {
        const std::size_t a = empty_agents[x];
        if (inst.value(a, k) == 0) continue;
        // strictly below the cut means a positive payoff is possible for a
        if (inst.cost(a, k) < ub * inst.value(a, k) && ++exposed[x] > 1) ok = false;
      }
    }
    if (ok) {
      Case4Bound b;
      b.position = pos;
      for (std::size_t t = 0; t < len; ++t) b.upper.push_back(bounds[t][pos[t]]);
      out.push_back(std::move(b));
    }
    std::size_t t = len;
    while (t-- > 0) {
      if (++pos[t] < q + 2) break;
      pos[t] = 0;
    }
    if (t == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

SolveResult solve_opt_ef1(const Instance& inst, const ExactOptions& options) {
  auto start = Clock::now();
  const std::size_t n = inst.agents(), m = inst.tasks();
  check_allocation_budget(n, m, options.lp_budget);
  Incumbent inc(options.arithmetic);
  SolveMeta meta;
  std::vector<std::size_t> owner(m, 0);
  do {
    ++meta.allocations;
    if (!ir_possible(inst, owner)) continue;
    Allocation alloc(n, owner);
    auto bundles = alloc.bundles();
    std::vector<std::size_t> empty;
    for (std::size_t i = 0; i < n; ++i)
      if (bundles[i].empty()) empty.push_back(i);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::vector<std::size_t>> witness_choices;
    for (std::size_t i = 0; i < n; ++i) {
      if (bundles[i].empty()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || bundles[j].empty()) continue;
        pairs.emplace_back(i, j);
        witness_choices.push_back(witness_candidates(inst, i, bundles[j]));
      }
    }
    // one list of upper-bound vectors per nonempty bundle, deduplicated by value
    std::vector<std::size_t> bounded_owner;
    std::vector<std::vector<std::vector<Rational>>> bound_choices;
    bool feasible = true;
    if (!empty.empty()) {
      for (std::size_t j = 0; j < n && feasible; ++j) {
        if (bundles[j].empty()) continue;
        std::vector<std::vector<Rational>> uniq;
        for (auto& b : enumerate_case4_bounds(inst, bundles[j], empty)) {
          bool below_wage = false;
          for (std::size_t t = 0; t < bundles[j].size() && !below_wage; ++t) {
            const std::size_t k = bundles[j][t];
            below_wage = b.upper[t] * inst.value(j, k) < inst.cost(j, k);
          }
          if (below_wage) continue;
          if (std::find(uniq.begin(), uniq.end(), b.upper) == uniq.end()) uniq.push_back(std::move(b.upper));
        }
        if (uniq.empty()) feasible = false;
        bounded_owner.push_back(j);
        bound_choices.push_back(std::move(uniq));
      }
    }
    if (!feasible) continue;

    const std::size_t slots = witness_choices.size() + bound_choices.size();
    std::vector<std::size_t> radix;
    for (const auto& w : witness_choices) radix.push_back(w.size());
    for (const auto& b : bound_choices) radix.push_back(b.size());
    std::vector<std::size_t> pick(slots, 0);
    for (;;) {
      if (meta.lp_solves >= options.lp_budget)
        throw BudgetExceeded("EF1 enumeration exceeded the LP budget of " + std::to_string(options.lp_budget));
      WitnessMap witnesses;
      for (std::size_t x = 0; x < pairs.size(); ++x) witnesses[pairs[x]] = witness_choices[x][pick[x]];
      std::vector<std::optional<Rational>> upper(m);
      for (std::size_t y = 0; y < bound_choices.size(); ++y) {
        const auto& vec = bound_choices[y][pick[pairs.size() + y]];
        const auto& bundle = bundles[bounded_owner[y]];
        for (std::size_t t = 0; t < bundle.size(); ++t)
          if (vec[t] < 1) upper[bundle[t]] = vec[t];
      }
      LpSolution sol = solve_lp(build_ef1_lp(inst, alloc, witnesses, upper), lp_options(options));
      ++meta.lp_solves;
      if (sol.status == simplex::Status::Optimal) {
        Contract contract(alloc, alpha_from_lp(sol, m));
        Rational rev = revenue(inst, contract);
        inc.offer(std::move(contract), std::move(rev));
      }
      std::size_t s = slots;
      while (s-- > 0) {
        if (++pick[s] < radix[s]) break;
        pick[s] = 0;
      }
      if (s == static_cast<std::size_t>(-1)) break;
    }
  } while (next_assignment(owner, n));
  return finish(inc, "exact-ef1", std::move(meta), start);
}

SolveResult solve_opt_efs(const Instance& inst, const ExactOptions& options) {
  const std::size_t n = inst.agents(), m = inst.tasks();
  const double reduced = std::pow(static_cast<double>(n), static_cast<double>(2 * m + n));
  if (reduced > static_cast<double>(options.lp_budget)) return solve_efs_direct(inst, options);
  auto start = Clock::now();
  AugmentedInstance aug = efs_augment(inst);
  SolveResult inner = solve_opt_ef(aug.instance, Rational(0), options);
  SolveResult res{extract_subsidies(aug, inner.contract), Rational(0), inner.meta};
  res.revenue = revenue(inst, res.contract);
  res.meta.method = "exact-efs-reduction";
  res.meta.seconds = seconds_since(start);
  return res;
}

}  // namespace faircon
