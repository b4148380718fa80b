#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "faircon/io.hpp"
#include "faircon/rational.hpp"

namespace faircon {

struct BenchRow {
  std::string instance_id;
  std::size_t n = 0;
  std::size_t m = 0;
  Rational opt;
  Rational opt_ef;
  Rational opt_ef1_lb;
  std::string method;
  std::size_t runtime_states = 0;
  std::string error;  // empty when the row succeeded
};

// Config: {"families": [{"family": ..., ...}], "ef": "exact"|"dp"|"greedy",
// "ef1": "exact"|"dp"|"round-robin", "eps": ..., "budget_lps": ..., "budget_states": ...}.
// Families may override the method keys. Rows come back in config order; a row that throws
// keeps its id and records the message in `error`.
std::vector<BenchRow> bench_pof(const Json& config);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace faircon
