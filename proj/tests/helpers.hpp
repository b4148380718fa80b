#pragma once

#include <concepts>
#include <string>
#include <vector>

#include "faircon/instance.hpp"
#include "faircon/rational.hpp"

namespace testing {

using faircon::Allocation;
using faircon::Contract;
using faircon::Instance;
using faircon::Rational;

inline Rational q(const char* text) { return faircon::parse_rational(text); }
template <std::integral A, std::integral B = long>
Rational q(A num, B den = 1) {
  Rational x(static_cast<long>(num), static_cast<long>(den));
  x.canonicalize();
  return x;
}

inline Contract make_contract(std::size_t n, std::vector<std::size_t> owner, std::vector<Rational> alpha) {
  return Contract(Allocation(n, std::move(owner)), std::move(alpha));
}

inline Contract make_contract(std::size_t n, std::vector<std::size_t> owner, std::vector<Rational> alpha,
                              std::vector<Rational> subsidies) {
  return Contract(Allocation(n, std::move(owner)), std::move(alpha), std::move(subsidies));
}

// One task, r = 1, agent i has (p_i, c_i).
inline Instance one_task(const std::vector<std::pair<Rational, Rational>>& agents) {
  std::vector<std::vector<Rational>> p, c;
  for (const auto& [pi, ci] : agents) {
    p.push_back({pi});
    c.push_back({ci});
  }
  return Instance::create({Rational(1)}, p, c);
}

}  // namespace testing
