#pragma once

#include <string>

#include <json.hpp>

#include "faircon/core.hpp"
#include "faircon/instance.hpp"

namespace faircon {

using Json = nlohmann::json;

// Exact writes "num/den" strings; Float writes numbers with 12 significant digits.
enum class NumberStyle { Float, Exact };

Json rational_to_json(const Rational& q, NumberStyle style);
// Accepts numbers and "num/den" or decimal strings.
Rational rational_from_json(const Json& value);

Json instance_to_json(const Instance& inst, NumberStyle style = NumberStyle::Exact);
Instance instance_from_json(const Json& doc);

Json contract_to_json(const Contract& contract, NumberStyle style);
// Also accepts a solve result and reads its "contract" member.
Contract contract_from_json(const Json& doc);

Json fairness_to_json(const FairnessReport& report, NumberStyle style);
Json solve_result_to_json(const SolveResult& result, NumberStyle style);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);
Instance load_instance(const std::string& path);
Contract load_contract(const std::string& path);

}  // namespace faircon
