#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "faircon/rational.hpp"

namespace faircon {

// n agents, m tasks. Rewards r_j, success probabilities p_ij and costs c_ij, all in [0, 1].
class Instance {
 public:
  // Validates ranges and the feasibility assumption: every task has some agent with p*r - c >= 0.
  static Instance create(std::vector<Rational> reward, std::vector<std::vector<Rational>> prob,
                         std::vector<std::vector<Rational>> cost);

  std::size_t agents() const { return n_; }
  std::size_t tasks() const { return m_; }

  const Rational& reward(std::size_t j) const;
  const Rational& prob(std::size_t i, std::size_t j) const;
  const Rational& cost(std::size_t i, std::size_t j) const;

  // p_ij * r_j, cached.
  const Rational& value(std::size_t i, std::size_t j) const;

  double reward_d(std::size_t j) const { return reward_d_[j]; }
  double value_d(std::size_t i, std::size_t j) const { return value_d_[i * m_ + j]; }
  double cost_d(std::size_t i, std::size_t j) const { return cost_d_[i * m_ + j]; }

  const std::vector<Rational>& rewards() const { return reward_; }
  std::vector<std::vector<Rational>> prob_matrix() const;
  std::vector<std::vector<Rational>> cost_matrix() const;

 private:
  Instance() = default;
  void check(std::size_t i, std::size_t j) const;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<Rational> reward_;
  std::vector<Rational> prob_;
  std::vector<Rational> cost_;
  std::vector<Rational> value_;
  std::vector<double> reward_d_;
  std::vector<double> value_d_;
  std::vector<double> cost_d_;
};

class Allocation {
 public:
  Allocation() = default;
  Allocation(std::size_t agents, std::vector<std::size_t> owner);

  std::size_t agents() const { return n_; }
  std::size_t tasks() const { return owner_.size(); }
  std::size_t owner(std::size_t j) const { return owner_[j]; }
  const std::vector<std::size_t>& owners() const { return owner_; }
  std::vector<std::vector<std::size_t>> bundles() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> owner_;
};

class Contract {
 public:
  Contract() = default;
  Contract(Allocation allocation, std::vector<Rational> alpha,
           std::optional<std::vector<Rational>> subsidies = std::nullopt);

  const Allocation& allocation() const { return allocation_; }
  const std::vector<Rational>& alpha() const { return alpha_; }
  const Rational& alpha(std::size_t j) const { return alpha_[j]; }
  const std::optional<std::vector<Rational>>& subsidies() const { return subsidies_; }
  Rational subsidy(std::size_t i) const;

 private:
  Allocation allocation_;
  std::vector<Rational> alpha_;
  std::optional<std::vector<Rational>> subsidies_;
};

// Throws DimensionMismatch when the contract does not fit the instance.
void check_compatible(const Instance& inst, const Contract& contract);

}  // namespace faircon
