#include "faircon/dp.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "faircon/errors.hpp"

namespace faircon {

namespace {

using Clock = std::chrono::steady_clock;

class ProfileSet {
 public:
  explicit ProfileSet(std::size_t width) : width_(width), slots_(1024, 0), mask_(1023) {}

  std::size_t size() const { return count_; }
  const std::uint32_t* key(std::size_t idx) const { return keys_.data() + idx * width_; }
  std::vector<std::uint32_t> release() { return std::move(keys_); }

  // Returns true when the key was not present.
  bool insert(const std::uint32_t* key) {
    if ((count_ + 1) * 2 > slots_.size()) grow();
    std::size_t s = hash(key) & mask_;
    while (slots_[s] != 0) {
      if (std::equal(key, key + width_, keys_.data() + (slots_[s] - 1) * width_)) return false;
      s = (s + 1) & mask_;
    }
    keys_.insert(keys_.end(), key, key + width_);
    slots_[s] = static_cast<std::uint32_t>(++count_);
    return true;
  }

 private:
  std::uint64_t hash(const std::uint32_t* key) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (std::size_t c = 0; c < width_; ++c) {
      h ^= key[c];
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 32;
    }
    return h;
  }

  void grow() {
    std::vector<std::uint32_t> bigger(slots_.size() * 2, 0);
    mask_ = bigger.size() - 1;
    for (std::size_t idx = 0; idx < count_; ++idx) {
      std::size_t s = hash(key(idx)) & mask_;
      while (bigger[s] != 0) s = (s + 1) & mask_;
      bigger[s] = static_cast<std::uint32_t>(idx + 1);
    }
    slots_.swap(bigger);
  }

  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<std::uint32_t> keys_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_;
};

Rational unit_fraction(std::uint32_t K) { return Rational(1, K); }

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

enum class Notion { EpsEf, Ef1 };

class Selector {
 public:
  Selector(const Instance& inst, Notion notion, Rational eps)
      : inst_(inst), notion_(notion), eps_(std::move(eps)), eps_d_(eps_.get_d()) {}

  void scan(const DpTable& table, const Discretization& disc, const std::vector<Rational>* guess,
            std::size_t tag = 0) {
    const std::size_t n = inst_.agents(), m = inst_.tasks();
    std::vector<std::vector<double>> alpha_d(m);
    for (std::size_t j = 0; j < m; ++j)
      for (const auto& a : disc.contracts[j]) alpha_d[j].push_back(a.get_d());
    std::vector<std::uint32_t> owner, level;
    std::vector<double> u(n * m);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      table.trace(idx, owner, level);
      double rev = 0;
      for (std::size_t k = 0; k < m; ++k) rev += (1 - alpha_d[k][level[k]]) * inst_.value_d(owner[k], k);
      if (best_ && rev < best_d_ - 1e-9) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k)
          u[i * m + k] = alpha_d[k][level[k]] * inst_.value_d(i, k) - inst_.cost_d(i, k);
      if (!fast_check(owner, u)) continue;
      Contract c = table.contract(idx);
      if (!exact_check(c)) continue;
      Rational r = revenue(inst_, c);
      if (best_ && !(r > best_->revenue)) continue;
      best_d_ = r.get_d();
      best_ = SolveResult{std::move(c), std::move(r), {}};
      if (guess) best_guess_ = *guess;
      best_tag_ = tag;
    }
  }

  // Keeps the higher revenue, and the lower tag on ties, so merge order does not matter.
  void merge(Selector&& other) {
    if (!other.best_) return;
    if (best_ && (best_->revenue > other.best_->revenue ||
                  (best_->revenue == other.best_->revenue && best_tag_ < other.best_tag_)))
      return;
    best_ = std::move(other.best_);
    best_d_ = other.best_d_;
    best_guess_ = std::move(other.best_guess_);
    best_tag_ = other.best_tag_;
  }

  bool has() const { return best_.has_value(); }
  SolveResult take() { return std::move(*best_); }
  const std::vector<Rational>& best_guess() const { return best_guess_; }

 private:
  bool fast_check(const std::vector<std::uint32_t>& owner, const std::vector<double>& u) const {
    const std::size_t n = inst_.agents(), m = inst_.tasks();
    constexpr double slack = 1e-9;
    std::vector<double> own(n, 0.0);
    for (std::size_t k = 0; k < m; ++k) own[owner[k]] += u[owner[k] * m + k];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        double rhs = 0, top = 0;
        bool any = false;
        for (std::size_t k = 0; k < m; ++k) {
          if (owner[k] != j) continue;
          any = true;
          double v = std::max(u[i * m + k], 0.0);
          rhs += v;
          top = std::max(top, v);
        }
        if (!any) continue;
        double need = notion_ == Notion::EpsEf ? rhs - eps_d_ : rhs - top;
        if (own[i] < need - slack) return false;
      }
    }
    return true;
  }

  bool exact_check(const Contract& c) const {
    if (!verify_ir(inst_, c).ok) return false;
    if (notion_ == Notion::EpsEf) return verify_eps_ef(inst_, c, eps_).ok;
    return verify_ef1(inst_, c).ok;
  }

  const Instance& inst_;
  Notion notion_;
  Rational eps_;
  double eps_d_;
  std::optional<SolveResult> best_;
  double best_d_ = 0;
  std::vector<Rational> best_guess_;
  std::size_t best_tag_ = 0;
};

// Largest principal level any move on tasks after `layer` can add, summed.
std::vector<std::uint32_t> principal_headroom(const Instance& inst, const Discretization& disc) {
  const std::size_t m = inst.tasks();
  std::vector<std::uint32_t> head(m + 1, 0);
  for (std::size_t j = m; j-- > 0;) {
    std::uint32_t best = 0;
    for (std::size_t i = 0; i < inst.agents(); ++i) {
      for (const auto& a : disc.contracts[j]) {
        if (a * inst.value(i, j) < inst.cost(i, j)) continue;
        best = std::max(best, disc.principal.ceil_level((1 - a) * inst.value(i, j)));
        break;  // smallest rational alpha gives the largest principal share
      }
    }
    head[j] = head[j + 1] + best;
  }
  return head;
}

std::uint32_t principal_floor(const Rational& lower_bound, std::uint32_t K, std::size_t m) {
  Rational x = lower_bound * K - static_cast<long>(m);
  if (x <= 0) return 0;
  return static_cast<std::uint32_t>(ceil_to_integer(x).get_num().get_ui());
}

std::uint32_t grid_size(const Rational& inv) {
  Rational c = ceil_to_integer(inv);
  if (c > 100000000) throw BudgetExceeded("grid resolution too fine");
  return static_cast<std::uint32_t>(c.get_num().get_ui());
}

}  // namespace

std::uint32_t UniformGrid::ceil_level(const Rational& x) const {
  if (x <= 0) return 0;
  if (step == 0) throw std::logic_error("positive value on the zero grid");
  Rational k = ceil_to_integer(x / step);
  if (k > top) throw std::logic_error("value " + to_string(x) + " above grid maximum");
  return static_cast<std::uint32_t>(k.get_num().get_ui());
}

Discretization uniform_discretization(const Instance& inst, std::uint32_t K) {
  if (K == 0) throw InvalidArgument("grid size must be positive");
  Discretization d;
  std::vector<Rational> pts;
  for (std::uint32_t k = 0; k <= K; ++k) pts.push_back(Rational(k, K));
  for (auto& p : pts) p.canonicalize();
  d.contracts.assign(inst.tasks(), pts);
  d.agent.assign(inst.agents(), UniformGrid{unit_fraction(K), K});
  d.principal = UniformGrid{unit_fraction(K), K};
  return d;
}

Rational alpha_cap(const Instance& inst, std::size_t i, std::size_t j, const Rational& U) {
  const Rational& v = inst.value(i, j);
  if (v == 0 || v - inst.cost(i, j) <= U) return Rational(1);
  return Rational((U + inst.cost(i, j)) / v);
}

Discretization adaptive_grid(const Instance& inst, const std::vector<Rational>& guess, std::uint32_t K) {
  const std::size_t n = inst.agents(), m = inst.tasks();
  if (guess.size() != n) throw DimensionMismatch("guess vector has wrong length");
  if (K == 0) throw InvalidArgument("grid size must be positive");
  Discretization d;
  d.contracts.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    Rational cap = 1;
    for (std::size_t i = 0; i < n; ++i) cap = std::min(cap, alpha_cap(inst, i, j, guess[i]));
    std::vector<Rational>& pts = d.contracts[j];
    for (std::size_t i = 0; i < n; ++i) {
      auto w = minimum_wage(inst, i, j);
      if (!w || *w > cap) continue;
      const Rational span = cap - *w;
      for (std::uint32_t k = 0; k <= K; ++k) {
        Rational x = *w + Rational(k, K) * span;
        x.canonicalize();
        pts.push_back(std::move(x));
      }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) throw std::logic_error("empty contract grid for task " + std::to_string(j));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Rational step = guess[i] / K;
    d.agent.push_back(UniformGrid{step, step == 0 ? 0u : K});
  }
  d.principal = UniformGrid{unit_fraction(K), K};
  return d;
}

void DpTable::trace(std::size_t idx, std::vector<std::uint32_t>& owner, std::vector<std::uint32_t>& level) const {
  const std::size_t m = steps_.size();
  owner.resize(m);
  level.resize(m);
  for (std::size_t l = m; l-- > 0;) {
    const Step& s = steps_[l][idx];
    const Move& mv = moves_[l][s.move];
    owner[l] = mv.owner;
    level[l] = mv.level;
    idx = s.parent;
  }
}

Contract DpTable::contract(std::size_t idx) const {
  std::vector<std::uint32_t> owner, level;
  trace(idx, owner, level);
  std::vector<std::size_t> own(owner.begin(), owner.end());
  std::vector<Rational> alpha;
  for (std::size_t l = 0; l < level.size(); ++l) alpha.push_back(contracts_[l][level[l]]);
  return Contract(Allocation(n_, std::move(own)), std::move(alpha));
}

DpTable dp_enumerate(const Instance& inst, const Discretization& disc, const DpOptions& options) {
  const std::size_t n = inst.agents(), m = inst.tasks();
  if (disc.contracts.size() != m || disc.agent.size() != n)
    throw DimensionMismatch("discretization does not match instance");
  const std::size_t width = n * n + 1;
  DpTable table;
  table.n_ = n;
  table.width_ = width;
  table.contracts_ = disc.contracts;
  table.moves_.resize(m);
  table.steps_.resize(m);

  // deltas[j][move] = (principal level, then level for each evaluating agent)
  std::vector<std::vector<std::uint32_t>> deltas(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::uint32_t a = 0; a < disc.contracts[j].size(); ++a) {
      const Rational& alpha = disc.contracts[j][a];
      for (std::uint32_t k = 0; k < n; ++k) {
        if (alpha * inst.value(k, j) < inst.cost(k, j)) continue;
        table.moves_[j].push_back({k, a});
        deltas[j].push_back(disc.principal.ceil_level((1 - alpha) * inst.value(k, j)));
        for (std::size_t i = 0; i < n; ++i)
          deltas[j].push_back(disc.agent[i].ceil_level(alpha * inst.value(i, j) - inst.cost(i, j)));
      }
    }
  }

  const DpPruning* prune = options.pruning ? &*options.pruning : nullptr;
  if (prune && !prune->cap.empty() && prune->cap.size() != width)
    throw DimensionMismatch("pruning caps have wrong length");
  std::vector<std::uint32_t> headroom;
  if (prune) headroom = principal_headroom(inst, disc);

  std::vector<std::uint32_t> prev(width, 0);
  std::size_t prev_count = 1;
  std::vector<std::uint32_t> key(width);
  for (std::size_t j = 0; j < m; ++j) {
    ProfileSet next(width);
    auto& steps = table.steps_[j];
    const std::size_t stride = n + 1;
    for (std::uint32_t mv = 0; mv < table.moves_[j].size(); ++mv) {
      const std::uint32_t owner = table.moves_[j][mv].owner;
      const std::uint32_t* d = deltas[j].data() + mv * stride;
      for (std::size_t s = 0; s < prev_count; ++s) {
        const std::uint32_t* base = prev.data() + s * width;
        std::copy(base, base + width, key.begin());
        key[0] += d[0];
        for (std::size_t i = 0; i < n; ++i) key[1 + i * n + owner] += d[1 + i];
        if (prune) {
          if (key[0] + headroom[j + 1] < prune->min_final_principal) continue;
          if (!prune->cap.empty()) {
            bool over = false;
            for (std::size_t c = 0; c < width && !over; ++c) over = key[c] > prune->cap[c];
            if (over) continue;
          }
        }
        if (!next.insert(key.data())) continue;
        steps.push_back({static_cast<std::uint32_t>(s), mv});
        if (++table.states_ > options.state_budget)
          throw BudgetExceeded("dynamic program exceeded the state budget of " +
                               std::to_string(options.state_budget));
      }
    }
    prev_count = next.size();
    prev = next.release();
  }
  table.final_count_ = prev_count;
  table.profiles_ = std::move(prev);
  return table;
}

std::size_t instance_bit_length(const Instance& inst) {
  std::size_t bits = 0;
  for (std::size_t j = 0; j < inst.tasks(); ++j) bits += bit_length(inst.reward(j));
  for (std::size_t i = 0; i < inst.agents(); ++i)
    for (std::size_t j = 0; j < inst.tasks(); ++j) bits += bit_length(inst.prob(i, j)) + bit_length(inst.cost(i, j));
  return bits;
}

std::vector<Rational> utility_guesses(std::size_t m, std::size_t f) {
  std::size_t log_m = 0;
  while ((std::size_t{1} << log_m) < m) ++log_m;
  std::vector<Rational> out{Rational(0)};
  for (std::size_t i = 0; i <= f + log_m; ++i) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, i);
    Rational g(mpz_class(static_cast<unsigned long>(m)), den);
    g.canonicalize();
    out.push_back(std::move(g));
  }
  return out;
}

SolveResult solve_eps_ef_fptas(const Instance& inst, const Rational& eps, const FptasOptions& options) {
  if (eps <= 0 || eps > 1) throw InvalidArgument("epsilon must lie in (0, 1]");
  auto start = Clock::now();
  const std::size_t m = inst.tasks();
  // eps' = eps / 3 and delta = eps' / m, rounded so that 1/delta is an integer
  const std::uint32_t K = grid_size(Rational(3 * static_cast<long>(m)) / eps);
  Discretization disc = uniform_discretization(inst, K);
  DpOptions dopt;
  dopt.state_budget = options.state_budget;
  if (options.prune) {
    DpPruning p;
    p.min_final_principal = principal_floor(greedy_ef(inst).revenue, K, m);
    dopt.pruning = p;
  }
  DpTable table = dp_enumerate(inst, disc, dopt);
  Selector sel(inst, Notion::EpsEf, eps);
  sel.scan(table, disc, nullptr);
  if (!sel.has()) throw std::logic_error("no eps-EF candidate survived");
  SolveResult res = sel.take();
  res.meta.method = "dp-eps-ef";
  res.meta.epsilon = eps;
  res.meta.delta = unit_fraction(K);
  res.meta.states = table.states();
  res.meta.seconds = seconds_since(start);
  return res;
}

SolveResult solve_ef1_fptas(const Instance& inst, const Rational& eps, const FptasOptions& options) {
  if (eps <= 0 || eps > 1) throw InvalidArgument("epsilon must lie in (0, 1]");
  auto start = Clock::now();
  const std::size_t n = inst.agents(), m = inst.tasks();
  const Rational sixth(1, 6 * static_cast<long>(m));
  const Rational nu = eps < sixth ? eps : sixth;
  const std::uint32_t K = grid_size(Rational(static_cast<long>(m)) / nu);
  const std::size_t f = options.f_override ? *options.f_override : instance_bit_length(inst);
  const std::vector<Rational> G = utility_guesses(m, f);

  // an agent's utility never exceeds its total surplus, so larger guesses cannot be the right one
  std::vector<std::vector<Rational>> per_agent(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational surplus = 0;
    for (std::size_t j = 0; j < m; ++j) {
      Rational s = inst.value(i, j) - inst.cost(i, j);
      if (s > 0) surplus += s;
    }
    for (const auto& g : G)
      if (!options.prune || g <= 2 * surplus) per_agent[i].push_back(g);
  }

  DpOptions dopt;
  dopt.state_budget = options.state_budget;
  DpPruning base;
  if (options.prune) {
    base.min_final_principal = principal_floor(greedy_ef(inst).revenue, K, m);
    base.cap.assign(n * n + 1, 0);
    base.cap[0] = static_cast<std::uint32_t>(m) * K;
  }

  // guess vectors in lexicographic order of their per-agent indices
  std::vector<std::vector<Rational>> guesses;
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    std::vector<Rational> guess(n);
    for (std::size_t i = 0; i < n; ++i) guess[i] = per_agent[i][pick[i]];
    guesses.push_back(std::move(guess));
    std::size_t i = n;
    while (i-- > 0) {
      if (++pick[i] < per_agent[i].size()) break;
      pick[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }

  auto run_guess = [&](std::size_t g, Selector& sel) -> std::size_t {
    const std::vector<Rational>& guess = guesses[g];
    Discretization disc = adaptive_grid(inst, guess, K);
    DpOptions local = dopt;
    if (options.prune) {
      DpPruning p = base;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const std::uint32_t bound = K + static_cast<std::uint32_t>((i == j ? 2 : 4) * m);
          p.cap[1 + i * n + j] = guess[i] == 0 ? 0 : bound;
        }
      }
      local.pruning = p;
    }
    DpTable table = dp_enumerate(inst, disc, local);
    sel.scan(table, disc, &guess, g);
    return table.states();
  };

  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(guesses.size(), std::thread::hardware_concurrency()));
  std::vector<Selector> partial(workers, Selector(inst, Notion::Ef1, Rational(0)));
  std::atomic<std::size_t> next{0}, states{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](std::size_t w) {
    for (std::size_t g; (g = next.fetch_add(1)) < guesses.size();) {
      try {
        states += run_guess(g, partial[w]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = guesses.size();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  Selector sel(inst, Notion::Ef1, Rational(0));
  for (auto& p : partial) sel.merge(std::move(p));
  SolveMeta meta;
  meta.states = states;
  meta.guesses = guesses.size();
  if (!sel.has()) throw std::logic_error("no EF1 candidate survived");
  std::vector<Rational> best_guess = sel.best_guess();
  SolveResult res = sel.take();
  meta.method = "dp-ef1";
  meta.epsilon = eps;
  meta.nu = nu;
  meta.delta = unit_fraction(K);
  meta.guess = best_guess;
  meta.seconds = seconds_since(start);
  res.meta = std::move(meta);
  return res;
}

}  // namespace faircon
