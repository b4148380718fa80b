#include "faircon/instance.hpp"

#include <string>

#include "faircon/errors.hpp"

namespace faircon {

namespace {

void require_unit(const Rational& x, const char* what) {
  if (x < 0 || x > 1) throw InvalidInstance(std::string(what) + " outside [0,1]: " + to_string(x));
}

}  // namespace

Instance Instance::create(std::vector<Rational> reward, std::vector<std::vector<Rational>> prob,
                          std::vector<std::vector<Rational>> cost) {
  Instance inst;
  inst.n_ = prob.size();
  inst.m_ = reward.size();
  if (inst.n_ == 0) throw InvalidInstance("instance needs at least one agent");
  if (inst.m_ == 0) throw InvalidInstance("instance needs at least one task");
  if (cost.size() != inst.n_) throw InvalidInstance("cost matrix has wrong number of rows");
  for (std::size_t i = 0; i < inst.n_; ++i) {
    if (prob[i].size() != inst.m_ || cost[i].size() != inst.m_)
      throw InvalidInstance("row " + std::to_string(i) + " has wrong length");
  }
  for (auto& x : reward) {
    x.canonicalize();
    require_unit(x, "reward");
  }
  const std::size_t n = inst.n_, m = inst.m_;
  inst.prob_.reserve(n * m);
  inst.cost_.reserve(n * m);
  inst.value_.reserve(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      prob[i][j].canonicalize();
      cost[i][j].canonicalize();
      require_unit(prob[i][j], "probability");
      require_unit(cost[i][j], "cost");
      inst.prob_.push_back(prob[i][j]);
      inst.cost_.push_back(cost[i][j]);
      inst.value_.push_back(prob[i][j] * reward[j]);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    bool ok = false;
    for (std::size_t i = 0; i < n && !ok; ++i) ok = inst.value_[i * m + j] >= inst.cost_[i * m + j];
    if (!ok)
      throw InvalidInstance("task " + std::to_string(j) +
                            " has no agent with nonnegative surplus p*r - c");
  }
  inst.reward_ = std::move(reward);
  for (const auto& x : inst.reward_) inst.reward_d_.push_back(x.get_d());
  for (const auto& x : inst.value_) inst.value_d_.push_back(x.get_d());
  for (const auto& x : inst.cost_) inst.cost_d_.push_back(x.get_d());
  return inst;
}

void Instance::check(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= m_)
    throw IndexOutOfRange("index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
}

const Rational& Instance::reward(std::size_t j) const {
  if (j >= m_) throw IndexOutOfRange("task index out of range");
  return reward_[j];
}

const Rational& Instance::prob(std::size_t i, std::size_t j) const {
  check(i, j);
  return prob_[i * m_ + j];
}

const Rational& Instance::cost(std::size_t i, std::size_t j) const {
  check(i, j);
  return cost_[i * m_ + j];
}

const Rational& Instance::value(std::size_t i, std::size_t j) const {
  check(i, j);
  return value_[i * m_ + j];
}

std::vector<std::vector<Rational>> Instance::prob_matrix() const {
  std::vector<std::vector<Rational>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(prob_.begin() + i * m_, prob_.begin() + (i + 1) * m_);
  return out;
}

std::vector<std::vector<Rational>> Instance::cost_matrix() const {
  std::vector<std::vector<Rational>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(cost_.begin() + i * m_, cost_.begin() + (i + 1) * m_);
  return out;
}

Allocation::Allocation(std::size_t agents, std::vector<std::size_t> owner)
    : n_(agents), owner_(std::move(owner)) {
  for (std::size_t j = 0; j < owner_.size(); ++j) {
    if (owner_[j] >= n_)
      throw IndexOutOfRange("task " + std::to_string(j) + " assigned to unknown agent " +
                            std::to_string(owner_[j]));
  }
}

std::vector<std::vector<std::size_t>> Allocation::bundles() const {
  std::vector<std::vector<std::size_t>> out(n_);
  for (std::size_t j = 0; j < owner_.size(); ++j) out[owner_[j]].push_back(j);
  return out;
}

Contract::Contract(Allocation allocation, std::vector<Rational> alpha,
                   std::optional<std::vector<Rational>> subsidies)
    : allocation_(std::move(allocation)), alpha_(std::move(alpha)), subsidies_(std::move(subsidies)) {
  if (alpha_.size() != allocation_.tasks())
    throw DimensionMismatch("alpha has " + std::to_string(alpha_.size()) + " entries for " +
                            std::to_string(allocation_.tasks()) + " tasks");
  for (auto& a : alpha_) {
    a.canonicalize();
    if (a < 0 || a > 1) throw InvalidArgument("alpha outside [0,1]: " + to_string(a));
  }
  if (subsidies_) {
    if (subsidies_->size() != allocation_.agents())
      throw DimensionMismatch("subsidy vector has wrong length");
    for (auto& s : *subsidies_) {
      s.canonicalize();
      if (s < 0) throw InvalidArgument("negative subsidy: " + to_string(s));
    }
  }
}

Rational Contract::subsidy(std::size_t i) const {
  if (!subsidies_) return Rational(0);
  return (*subsidies_)[i];
}

void check_compatible(const Instance& inst, const Contract& contract) {
  if (contract.allocation().agents() != inst.agents())
    throw DimensionMismatch("contract has " + std::to_string(contract.allocation().agents()) +
                            " agents, instance has " + std::to_string(inst.agents()));
  if (contract.allocation().tasks() != inst.tasks())
    throw DimensionMismatch("contract covers " + std::to_string(contract.allocation().tasks()) +
                            " tasks, instance has " + std::to_string(inst.tasks()));
}

}  // namespace faircon
