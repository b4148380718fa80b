#pragma once

// Dense two-phase tableau simplex with Bland's pivoting rule.
// Works for double (with a pivot tolerance) and for exact rationals (tolerance zero).

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace faircon::simplex {

enum class Sense { LessEqual, GreaterEqual, Equal };
enum class Status { Optimal, Infeasible, Unbounded };

template <class T>
struct Problem {
  std::size_t cols = 0;
  std::vector<std::vector<T>> a;  // dense rows of length cols
  std::vector<Sense> sense;
  std::vector<T> b;
  std::vector<T> c;  // maximize c.x, x >= 0
};

template <class T>
struct Result {
  Status status = Status::Infeasible;
  std::vector<T> x;
  T objective{};
  std::size_t pivots = 0;
};

template <class T>
class Tableau {
 public:
  Tableau(const Problem<T>& prob, T eps) : eps_(std::move(eps)) {
    rows_ = prob.a.size();
    structural_ = prob.cols;
    std::size_t slack_count = 0, art_count = 0;
    for (auto s : prob.sense)
      if (s != Sense::Equal) ++slack_count;
    // sense flips when b < 0, so count artificials after normalising
    std::vector<Sense> sense = prob.sense;
    std::vector<bool> flip(rows_, false);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (prob.b[r] < T(0)) {
        flip[r] = true;
        if (sense[r] == Sense::LessEqual)
          sense[r] = Sense::GreaterEqual;
        else if (sense[r] == Sense::GreaterEqual)
          sense[r] = Sense::LessEqual;
      }
      if (sense[r] != Sense::LessEqual) ++art_count;
    }
    art_begin_ = structural_ + slack_count;
    cols_ = art_begin_ + art_count;
    width_ = cols_ + 1;
    t_.assign((rows_ + 1) * width_, T(0));
    basis_.assign(rows_, 0);
    std::size_t slack = structural_, art = art_begin_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const T sign = flip[r] ? T(-1) : T(1);
      for (std::size_t j = 0; j < structural_; ++j)
        if (prob.a[r][j] != T(0)) at(r, j) = sign * prob.a[r][j];
      at(r, cols_) = sign * prob.b[r];
      if (prob.sense[r] != Sense::Equal) {
        at(r, slack) = sense[r] == Sense::LessEqual ? T(1) : T(-1);
        if (sense[r] == Sense::LessEqual) basis_[r] = slack;
        ++slack;
      }
      if (sense[r] != Sense::LessEqual) {
        at(r, art) = T(1);
        basis_[r] = art;
        ++art;
      }
    }
    cost_ = prob.c;
  }

  Result<T> run() {
    Result<T> res;
    // phase one: maximise minus the sum of artificials
    std::vector<T> phase1(cols_, T(0));
    for (std::size_t j = art_begin_; j < cols_; ++j) phase1[j] = T(-1);
    load_objective(phase1);
    if (!iterate(cols_, res.pivots)) throw std::logic_error("phase one cannot be unbounded");
    if (at(rows_, cols_) < -eps_) {
      res.status = Status::Infeasible;
      return res;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < art_begin_) continue;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (abs_val(at(r, j)) > eps_) {
          pivot(r, j);
          ++res.pivots;
          break;
        }
      }
    }
    std::vector<T> phase2(cols_, T(0));
    for (std::size_t j = 0; j < structural_; ++j) phase2[j] = cost_[j];
    load_objective(phase2);
    if (!iterate(art_begin_, res.pivots)) {
      res.status = Status::Unbounded;
      return res;
    }
    res.status = Status::Optimal;
    res.x.assign(structural_, T(0));
    for (std::size_t r = 0; r < rows_; ++r)
      if (basis_[r] < structural_) res.x[basis_[r]] = at(r, cols_);
    res.objective = at(rows_, cols_);
    return res;
  }

 private:
  static T abs_val(const T& x) { return x < T(0) ? T(-x) : x; }
  T& at(std::size_t r, std::size_t j) { return t_[r * width_ + j]; }

  void load_objective(const std::vector<T>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) at(rows_, j) = j < cols_ ? T(-c[j]) : T(0);
    for (std::size_t r = 0; r < rows_; ++r) {
      const T cb = c[basis_[r]];
      if (cb == T(0)) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (at(r, j) != T(0)) at(rows_, j) += cb * at(r, j);
    }
  }

  // Returns false when unbounded. Only columns below `limit` may enter.
  bool iterate(std::size_t limit, std::size_t& pivots) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (at(rows_, j) < -eps_) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = rows_;
      T best{};
      for (std::size_t r = 0; r < rows_; ++r) {
        const T& a = at(r, enter);
        if (!(a > eps_)) continue;
        T ratio = at(r, cols_) / a;
        if (leave == rows_ || ratio < best - eps_ ||
            (!(ratio > best + eps_) && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
      if (++pivots > 1000000) throw std::runtime_error("simplex iteration limit reached");
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    const T inv = T(1) / at(r, e);
    for (std::size_t j = 0; j <= cols_; ++j)
      if (at(r, j) != T(0)) at(r, j) *= inv;
    at(r, e) = T(1);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j)
      if (at(r, j) != T(0)) nz.push_back(j);
    for (std::size_t q = 0; q <= rows_; ++q) {
      if (q == r) continue;
      const T f = at(q, e);
      if (f == T(0)) continue;
      for (std::size_t j : nz) at(q, j) -= f * at(r, j);
      at(q, e) = T(0);
    }
    basis_[r] = e;
  }

  T eps_;
  std::size_t rows_ = 0, structural_ = 0, art_begin_ = 0, cols_ = 0, width_ = 0;
  std::vector<T> t_;
  std::vector<std::size_t> basis_;
  std::vector<T> cost_;
};

template <class T>
Result<T> solve(const Problem<T>& prob, T eps) {
  if (prob.sense.size() != prob.a.size() || prob.b.size() != prob.a.size() || prob.c.size() != prob.cols)
    throw std::invalid_argument("inconsistent simplex problem dimensions");
  Tableau<T> tab(prob, std::move(eps));
  return tab.run();
}

}  // namespace faircon::simplex
