#include "faircon/instances.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "faircon/errors.hpp"

namespace faircon {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

Rational q(long num, long den = 1) {
  Rational x(num, den);
  x.canonicalize();
  return x;
}

std::uint64_t checked_sum(const std::vector<std::uint64_t>& numbers) {
  if (numbers.empty()) throw InvalidArgument("number list is empty");
  std::uint64_t total = 0;
  for (auto x : numbers) {
    if (x == 0) throw InvalidArgument("numbers must be positive");
    total += x;
  }
  return total;
}

// Three-agent construction shared by the partition families.
Generated partition_family(const std::vector<std::uint64_t>& numbers, std::size_t heavy,
                           const Rational& second_heavy_p, std::uint64_t scale, const char* name) {
  const std::uint64_t total = checked_sum(numbers);
  const std::size_t m = heavy + numbers.size();
  std::vector<Rational> r(m);
  Matrix p(3, std::vector<Rational>(m)), c(3, std::vector<Rational>(m));
  for (std::size_t h = 0; h < heavy; ++h) {
    const Rational& side = h == 1 ? second_heavy_p : q(1, 10);
    r[h] = 1;
    p[0][h] = 1;
    p[1][h] = side;
    p[2][h] = side;
    c[0][h] = q(1, 2);
  }
  const mpz_class big = mpz_class(std::to_string(scale)) * mpz_class(std::to_string(total));
  for (std::size_t t = 0; t < numbers.size(); ++t) {
    const std::size_t j = heavy + t;
    r[j] = Rational(mpz_class(std::to_string(numbers[t])), big);
    r[j].canonicalize();
    p[1][j] = 1;
    p[2][j] = 1;
  }
  Generated g{Instance::create(std::move(r), std::move(p), std::move(c)), {}};
  g.manifest = {{"generator", name}, {"params", {{"numbers", numbers}}}};
  return g;
}

}  // namespace

Generated gen_partition_ef(const std::vector<std::uint64_t>& numbers) {
  return partition_family(numbers, 1, q(1, 10), 10, "partition-ef");
}

Generated gen_partition_ef1(const std::vector<std::uint64_t>& numbers) {
  return partition_family(numbers, 2, q(1, 10), 10, "partition-ef1");
}

Generated gen_partition_eps_ef(const std::vector<std::uint64_t>& numbers, const Rational& eps) {
  if (eps <= 0 || 2 * eps > 1) throw InvalidArgument("eps must lie in (0, 1/2]");
  Generated g = partition_family(numbers, 2, Rational(2 * eps), 10, "partition-eps-ef");
  g.manifest["params"]["eps"] = to_string(eps);
  return g;
}

Generated gen_two_agent_hard(const std::vector<std::uint64_t>& numbers) {
  const std::uint64_t total = checked_sum(numbers);
  const std::size_t m = 2 + numbers.size();
  std::vector<Rational> r(m);
  Matrix p(2, std::vector<Rational>(m)), c(2, std::vector<Rational>(m));
  r[0] = 1;
  p[0][0] = 1;
  p[1][0] = q(1, 10);
  c[0][0] = q(1, 2);
  r[1] = 1;
  p[0][1] = q(1, 10);
  for (std::size_t t = 0; t < numbers.size(); ++t) {
    const std::size_t j = 2 + t;
    r[j] = Rational(mpz_class(std::to_string(numbers[t])), 5 * mpz_class(std::to_string(total)));
    r[j].canonicalize();
    p[0][j] = 1;
    p[1][j] = q(1, 2);
  }
  Generated g{Instance::create(std::move(r), std::move(p), std::move(c)), {}};
  g.manifest = {{"generator", "two-agent-hard"}, {"params", {{"numbers", numbers}}}};
  return g;
}

Rational independent_set_delta(const Graph& graph, std::uint64_t c_target) {
  if (c_target == 0) throw InvalidArgument("c must be positive");
  std::vector<std::size_t> degree(graph.vertices, 0);
  for (auto [u, v] : graph.edges) {
    if (u >= graph.vertices || v >= graph.vertices || u == v) throw InvalidArgument("bad edge");
    ++degree[u];
    ++degree[v];
  }
  std::size_t k = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
  if (k == 0) throw InvalidArgument("graph needs at least one edge");
  Rational delta(1, mpz_class(std::to_string(8 * c_target * k * k)));
  delta.canonicalize();
  return delta;
}

Generated gen_independent_set(const Graph& graph, std::uint64_t c_target) {
  const Rational delta = independent_set_delta(graph, c_target);
  const std::size_t nv = graph.vertices, ne = graph.edges.size();
  const std::size_t n = 1 + ne, m = nv + ne;
  std::vector<Rational> r(m);
  Matrix p(n, std::vector<Rational>(m)), c(n, std::vector<Rational>(m));
  for (std::size_t v = 0; v < nv; ++v) {
    r[v] = 1;
    p[0][v] = 1;
    c[0][v] = q(1, 2);
  }
  for (std::size_t e = 0; e < ne; ++e) {
    auto [u, v] = graph.edges[e];
    p[1 + e][u] = delta;
    p[1 + e][v] = delta;
    r[nv + e] = delta / 2;
    p[1 + e][nv + e] = 1;
  }
  Generated g{Instance::create(std::move(r), std::move(p), std::move(c)), {}};
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : graph.edges) edges.push_back({u, v});
  g.manifest = {{"generator", "independent-set"},
                {"params", {{"vertices", nv}, {"edges", edges}, {"c", c_target}, {"delta", to_string(delta)}}}};
  return g;
}

Generated gen_pof_sqrt(std::size_t n) {
  if (n < 9) throw InvalidArgument("n must be at least 9");
  std::size_t b = 1;
  while ((b + 1) * (b + 1) <= n) ++b;
  const std::size_t m = n;
  std::vector<Rational> r(m, Rational(1));
  Matrix p(n, std::vector<Rational>(m, Rational(0))), c(n, std::vector<Rational>(m, Rational(1)));
  for (std::size_t i = 0; i + 1 < b; ++i) {
    for (std::size_t j = i * b; j < (i + 1) * b; ++j) {
      p[i][j] = 1;
      c[i][j] = q(static_cast<long>(b - 1), static_cast<long>(b));
    }
  }
  const std::size_t tail = n - b * (b - 1);
  for (std::size_t j = b * (b - 1); j < n; ++j) {
    p[b - 1][j] = 1;
    c[b - 1][j] = q(static_cast<long>(tail - 1), static_cast<long>(tail));
  }
  for (std::size_t i = b; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      p[i][j] = q(2, static_cast<long>(n));
      c[i][j] = q(1, static_cast<long>(n));
    }
  }
  Generated g{Instance::create(std::move(r), std::move(p), std::move(c)), {}};
  g.manifest = {{"generator", "pof-sqrt"}, {"params", {{"n", n}}}};
  return g;
}

Generated gen_example(const std::string& name, const Rational& eps) {
  if (eps <= 0) throw InvalidArgument("eps must be positive");
  std::vector<Rational> r{Rational(1)};
  Matrix p, c;
  if (name == "5.2" || name == "5.4") {
    if (10 * eps > 1) throw InvalidArgument("eps must be at most 1/10");
    p = {{Rational(10 * eps)}, {q(1, 2)}};
    c = {{eps}, {q(1, 4)}};
  } else if (name == "5.7") {
    Rational inv = 1 / eps;
    if (inv.get_den() != 1 || 2 * eps > 1) throw InvalidArgument("1/eps must be an integer and eps <= 1/2");
    const std::size_t others = inv.get_num().get_ui();
    p.push_back({q(1, 2)});
    c.push_back({q(1, 4)});
    for (std::size_t i = 0; i < others; ++i) {
      p.push_back({Rational(2 * eps)});
      c.push_back({Rational(0)});
    }
  } else {
    throw InvalidArgument("unknown example: " + name);
  }
  Generated g{Instance::create(std::move(r), std::move(p), std::move(c)), {}};
  g.manifest = {{"generator", "example"}, {"params", {{"name", name}, {"eps", to_string(eps)}}}};
  return g;
}

RandomProfile parse_profile(const std::string& name) {
  if (name == "uniform") return RandomProfile::Uniform;
  if (name == "cost-heavy") return RandomProfile::CostHeavy;
  if (name == "sparse-ability") return RandomProfile::SparseAbility;
  if (name == "single-agent") return RandomProfile::SingleAgent;
  throw InvalidArgument("unknown profile: " + name);
}

std::string profile_name(RandomProfile profile) {
  switch (profile) {
    case RandomProfile::Uniform: return "uniform";
    case RandomProfile::CostHeavy: return "cost-heavy";
    case RandomProfile::SparseAbility: return "sparse-ability";
    case RandomProfile::SingleAgent: return "single-agent";
  }
  return "uniform";
}

Generated gen_random(std::size_t n, std::size_t m, std::uint64_t seed, RandomProfile profile) {
  if (profile == RandomProfile::SingleAgent) n = 1;
  if (n == 0 || m == 0) throw InvalidArgument("need at least one agent and one task");
  constexpr long kDen = 20;
  std::mt19937_64 rng(seed);
  // modulo draw keeps the stream identical across standard libraries
  auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  std::vector<Rational> r(m);
  Matrix p(n, std::vector<Rational>(m)), c(n, std::vector<Rational>(m));
  for (std::size_t j = 0; j < m; ++j) r[j] = q(draw(1, kDen), kDen);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      long pn = draw(0, kDen);
      long cn = draw(0, kDen);
      if (profile == RandomProfile::CostHeavy) cn = kDen / 2 + cn / 2;
      if (profile == RandomProfile::SparseAbility && draw(0, 1) == 0) pn = 0;
      p[i][j] = q(pn, kDen);
      c[i][j] = q(cn, kDen);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    bool ok = false;
    for (std::size_t i = 0; i < n && !ok; ++i) ok = p[i][j] * r[j] >= c[i][j];
    if (ok) continue;
    const std::size_t a = static_cast<std::size_t>(draw(0, static_cast<long>(n) - 1));
    if (p[a][j] == 0) p[a][j] = q(draw(1, kDen), kDen);
    Rational v = p[a][j] * r[j] * kDen;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    c[a][j] = Rational(fl, kDen);
    c[a][j].canonicalize();
  }
  Generated g{Instance::create(std::move(r), std::move(p), std::move(c)), {}};
  g.manifest = {{"generator", "random"},
                {"params", {{"n", n}, {"m", m}, {"seed", seed}, {"profile", profile_name(profile)}}}};
  return g;
}

}  // namespace faircon
