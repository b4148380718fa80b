#include "faircon/lp.hpp"

#include <sstream>
#include <type_traits>

#include "faircon/errors.hpp"

namespace faircon {

namespace {

using simplex::Sense;

LpModel base_model(const Instance& inst, const Allocation& alloc, bool subsidies) {
  if (alloc.agents() != inst.agents() || alloc.tasks() != inst.tasks())
    throw DimensionMismatch("allocation does not match instance");
  const std::size_t n = inst.agents(), m = inst.tasks();
  LpModel lp;
  lp.agents = n;
  lp.tasks = m;
  lp.has_subsidies = subsidies;
  for (std::size_t k = 0; k < m; ++k) lp.vars.push_back({"a" + std::to_string(k), 0, Rational(1)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k)
      lp.vars.push_back({"t" + std::to_string(i) + "_" + std::to_string(k), 0, std::nullopt});
  if (subsidies)
    for (std::size_t i = 0; i < n; ++i) lp.vars.push_back({"s" + std::to_string(i), 0, std::nullopt});
  lp.objective.assign(lp.vars.size(), Rational(0));
  for (std::size_t k = 0; k < m; ++k) {
    const Rational& v = inst.value(alloc.owner(k), k);
    lp.objective[lp.alpha_var(k)] = -v;
    lp.objective_constant += v;
  }
  if (subsidies)
    for (std::size_t i = 0; i < n; ++i) lp.objective[lp.subsidy_var(i)] = -1;

  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t a = alloc.owner(k);
    LpRow row{"ir_" + std::to_string(k), RowTag::IR, {}, Sense::GreaterEqual, inst.cost(a, k)};
    if (inst.value(a, k) != 0) row.terms.emplace_back(lp.alpha_var(k), inst.value(a, k));
    lp.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      LpRow row{"lin_" + std::to_string(i) + "_" + std::to_string(k), RowTag::Linearization, {},
                Sense::GreaterEqual, Rational(-inst.cost(i, k))};
      row.terms.emplace_back(lp.aux_var(i, k), Rational(1));
      if (inst.value(i, k) != 0) row.terms.emplace_back(lp.alpha_var(k), Rational(-inst.value(i, k)));
      lp.rows.push_back(std::move(row));
    }
  }
  return lp;
}

LpRow envy_row(const Instance& inst, const LpModel& lp, const std::vector<std::vector<std::size_t>>& bundles,
               std::size_t i, std::size_t j, std::optional<std::size_t> skip, const Rational& eps) {
  LpRow row{"env_" + std::to_string(i) + "_" + std::to_string(j), RowTag::EnvyPair, {},
            Sense::GreaterEqual, Rational(-eps)};
  for (std::size_t k : bundles[i]) {
    if (inst.value(i, k) != 0) row.terms.emplace_back(lp.alpha_var(k), inst.value(i, k));
    row.rhs += inst.cost(i, k);
  }
  for (std::size_t k : bundles[j]) {
    if (skip && *skip == k) continue;
    row.terms.emplace_back(lp.aux_var(i, k), Rational(-1));
  }
  if (lp.has_subsidies) {
    row.terms.emplace_back(lp.subsidy_var(i), Rational(1));
    row.terms.emplace_back(lp.subsidy_var(j), Rational(-1));
  }
  return row;
}

template <class T>
T convert(const Rational& q);

template <>
double convert<double>(const Rational& q) {
  return q.get_d();
}

template <>
Rational convert<Rational>(const Rational& q) {
  return q;
}

template <class T>
LpSolution run(const LpModel& model, T eps) {
  const std::size_t nv = model.vars.size();
  simplex::Problem<T> prob;
  prob.cols = nv;
  prob.c.assign(nv, T(0));
  for (std::size_t v = 0; v < nv; ++v) prob.c[v] = convert<T>(model.objective[v]);
  Rational constant = model.objective_constant;
  for (std::size_t v = 0; v < nv; ++v) constant += model.objective[v] * model.vars[v].lower;
  for (const auto& row : model.rows) {
    std::vector<T> a(nv, T(0));
    Rational rhs = row.rhs;
    for (const auto& [v, coef] : row.terms) {
      a[v] += convert<T>(coef);
      rhs -= coef * model.vars[v].lower;
    }
    prob.a.push_back(std::move(a));
    prob.sense.push_back(row.sense);
    prob.b.push_back(convert<T>(rhs));
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (!model.vars[v].upper) continue;
    std::vector<T> a(nv, T(0));
    a[v] = T(1);
    prob.a.push_back(std::move(a));
    prob.sense.push_back(Sense::LessEqual);
    prob.b.push_back(convert<T>(*model.vars[v].upper - model.vars[v].lower));
  }
  auto res = simplex::solve(prob, eps);
  LpSolution out;
  out.status = res.status;
  out.pivots = res.pivots;
  if (res.status != simplex::Status::Optimal) return out;
  out.values.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    Rational x;
    if constexpr (std::is_same_v<T, double>) {
      x = rational_from_double(res.x[v]);
    } else {
      x = res.x[v];
    }
    out.values[v] = x + model.vars[v].lower;
  }
  out.objective = constant;
  for (std::size_t v = 0; v < nv; ++v) out.objective += model.objective[v] * out.values[v];
  return out;
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    default: return "=";
  }
}

}  // namespace

LpModel build_ef_lp(const Instance& inst, const Allocation& alloc, const Rational& eps) {
  if (eps < 0) throw InvalidArgument("epsilon must be nonnegative");
  LpModel lp = base_model(inst, alloc, false);
  auto bundles = alloc.bundles();
  for (std::size_t i = 0; i < inst.agents(); ++i)
    for (std::size_t j = 0; j < inst.agents(); ++j)
      if (i != j) lp.rows.push_back(envy_row(inst, lp, bundles, i, j, std::nullopt, eps));
  return lp;
}

LpModel build_ef1_lp(const Instance& inst, const Allocation& alloc, const WitnessMap& witnesses,
                     const std::vector<std::optional<Rational>>& alpha_upper) {
  LpModel lp = base_model(inst, alloc, false);
  if (!alpha_upper.empty() && alpha_upper.size() != inst.tasks())
    throw DimensionMismatch("upper-bound vector has wrong length");
  auto bundles = alloc.bundles();
  for (const auto& [pair, w] : witnesses) {
    auto [i, j] = pair;
    if (i >= inst.agents() || j >= inst.agents() || i == j) throw InvalidArgument("bad witness pair");
    if (w >= inst.tasks() || alloc.owner(w) != j)
      throw InvalidArgument("witness task " + std::to_string(w) + " is not in agent " +
                            std::to_string(j) + "'s bundle");
    lp.rows.push_back(envy_row(inst, lp, bundles, i, j, w, Rational(0)));
  }
  for (std::size_t k = 0; k < alpha_upper.size(); ++k) {
    if (!alpha_upper[k]) continue;
    lp.rows.push_back({"ub_" + std::to_string(k), RowTag::UpperBound, {{lp.alpha_var(k), Rational(1)}},
                       Sense::LessEqual, *alpha_upper[k]});
  }
  return lp;
}

LpModel build_efs_lp(const Instance& inst, const Allocation& alloc) {
  LpModel lp = base_model(inst, alloc, true);
  auto bundles = alloc.bundles();
  for (std::size_t i = 0; i < inst.agents(); ++i)
    for (std::size_t j = 0; j < inst.agents(); ++j)
      if (i != j) lp.rows.push_back(envy_row(inst, lp, bundles, i, j, std::nullopt, Rational(0)));
  return lp;
}

LpSolution solve_lp(const LpModel& model, const LpOptions& options) {
  if (options.arithmetic == Arithmetic::Exact) return run<Rational>(model, Rational(0));
  return run<double>(model, options.pivot_tolerance);
}

std::string write_lp_text(const LpModel& model) {
  std::ostringstream out;
  auto term = [&](const Rational& coef, std::size_t v, bool first) {
    if (coef < 0)
      out << " - ";
    else if (!first)
      out << " + ";
    out << format_float(Rational(abs(coef)).get_d()) << " " << model.vars[v].name;
  };
  out << "\\ constant " << format_float(model.objective_constant.get_d()) << "\nMaximize\n obj:";
  bool first = true;
  for (std::size_t v = 0; v < model.vars.size(); ++v) {
    if (model.objective[v] == 0) continue;
    term(model.objective[v], v, first);
    first = false;
  }
  if (first) out << " 0 " << model.vars.front().name;
  out << "\nSubject To\n";
  for (const auto& row : model.rows) {
    out << " " << row.name << ":";
    first = true;
    for (const auto& [v, coef] : row.terms) {
      term(coef, v, first);
      first = false;
    }
    if (first) out << " 0 " << model.vars.front().name;
    out << " " << sense_text(row.sense) << " " << format_float(row.rhs.get_d()) << "\n";
  }
  out << "Bounds\n";
  for (const auto& var : model.vars) {
    out << " " << format_float(var.lower.get_d()) << " <= " << var.name;
    if (var.upper) out << " <= " << format_float(var.upper->get_d());
    out << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace faircon
