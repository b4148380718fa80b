#include "faircon/io.hpp"

#include <fstream>
#include <sstream>

#include "faircon/errors.hpp"

namespace faircon {

namespace {

Json number(double x) { return Json::parse(format_float(x)); }

std::vector<Rational> vector_from_json(const Json& arr, const char* what) {
  if (!arr.is_array()) throw InvalidInstance(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : arr) out.push_back(rational_from_json(x));
  return out;
}

Json vector_to_json(const std::vector<Rational>& xs, NumberStyle style) {
  Json arr = Json::array();
  for (const auto& x : xs) arr.push_back(rational_to_json(x, style));
  return arr;
}

Json matrix_to_json(const std::vector<std::vector<Rational>>& rows, NumberStyle style) {
  Json arr = Json::array();
  for (const auto& row : rows) arr.push_back(vector_to_json(row, style));
  return arr;
}

const char* form_name(EnvyForm f) { return f == EnvyForm::Simplified ? "simplified" : "clamped"; }

Json envy_to_json(const EnvyReport& rep, NumberStyle style) {
  return {{"ok", rep.ok},
          {"form", form_name(rep.form)},
          {"epsilon", rational_to_json(rep.epsilon, style)},
          {"tolerance", rational_to_json(rep.tolerance, style)},
          {"slack", matrix_to_json(rep.slack, style)}};
}

}  // namespace

Json rational_to_json(const Rational& q, NumberStyle style) {
  if (style == NumberStyle::Exact) return to_string(q);
  return number(q.get_d());
}

Rational rational_from_json(const Json& value) {
  try {
    if (value.is_number_integer()) return Rational(mpz_class(value.dump()));
    if (value.is_number()) return rational_from_double(value.get<double>());
    if (value.is_string()) return parse_rational(value.get<std::string>());
  } catch (const InvalidArgument& e) {
    throw InvalidInstance(e.what());
  }
  throw InvalidInstance("expected a number or a rational string, got " + value.dump());
}

Json instance_to_json(const Instance& inst, NumberStyle style) {
  return {{"n", inst.agents()},
          {"m", inst.tasks()},
          {"r", vector_to_json(inst.rewards(), style)},
          {"p", matrix_to_json(inst.prob_matrix(), style)},
          {"c", matrix_to_json(inst.cost_matrix(), style)}};
}

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidInstance("instance must be a JSON object");
  for (const char* key : {"n", "m", "r", "p", "c"})
    if (!doc.contains(key)) throw InvalidInstance(std::string("instance is missing \"") + key + "\"");
  auto count = [](const Json& v) { return v.is_number_integer() && v.get<long long>() >= 0; };
  if (!count(doc["n"]) || !count(doc["m"]))
    throw InvalidInstance("n and m must be nonnegative integers");
  const auto n = doc["n"].get<std::size_t>();
  const auto m = doc["m"].get<std::size_t>();
  auto r = vector_from_json(doc["r"], "r");
  if (r.size() != m) throw InvalidInstance("r has " + std::to_string(r.size()) + " entries, expected m");
  std::vector<std::vector<Rational>> p, c;
  for (const char* key : {"p", "c"}) {
    const Json& mat = doc[key];
    if (!mat.is_array() || mat.size() != n)
      throw InvalidInstance(std::string(key) + " must have n rows");
    auto& out = key[0] == 'p' ? p : c;
    for (const auto& row : mat) {
      out.push_back(vector_from_json(row, key));
      if (out.back().size() != m) throw InvalidInstance(std::string(key) + " rows must have m entries");
    }
  }
  return Instance::create(std::move(r), std::move(p), std::move(c));
}

Json contract_to_json(const Contract& contract, NumberStyle style) {
  Json doc = {{"n", contract.allocation().agents()},
              {"assignment", contract.allocation().owners()},
              {"alpha", vector_to_json(contract.alpha(), style)}};
  if (contract.subsidies()) doc["subsidies"] = vector_to_json(*contract.subsidies(), style);
  return doc;
}

Contract contract_from_json(const Json& doc) {
  if (doc.is_object() && doc.contains("contract")) return contract_from_json(doc["contract"]);
  if (!doc.is_object() || !doc.contains("assignment") || !doc.contains("alpha"))
    throw InvalidInstance("contract needs \"assignment\" and \"alpha\"");
  std::vector<std::size_t> owner;
  for (const auto& x : doc["assignment"]) {
    if (!x.is_number_integer() || x.get<long long>() < 0)
      throw InvalidInstance("assignment entries must be agent indices");
    owner.push_back(x.get<std::size_t>());
  }
  std::size_t n = 0;
  for (auto a : owner) n = std::max(n, a + 1);
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 0)
      throw InvalidInstance("n must be a nonnegative integer");
    n = doc["n"].get<std::size_t>();
  }
  std::optional<std::vector<Rational>> subsidies;
  if (doc.contains("subsidies") && !doc["subsidies"].is_null()) {
    subsidies = vector_from_json(doc["subsidies"], "subsidies");
    n = std::max(n, subsidies->size());
  }
  return Contract(Allocation(n, std::move(owner)), vector_from_json(doc["alpha"], "alpha"), std::move(subsidies));
}

Json fairness_to_json(const FairnessReport& rep, NumberStyle style) {
  Json ef1 = {{"ok", rep.ef1.ok},
              {"form", form_name(rep.ef1.form)},
              {"tolerance", rational_to_json(rep.ef1.tolerance, style)},
              {"slack", matrix_to_json(rep.ef1.slack, style)}};
  Json witnesses = Json::array();
  for (const auto& row : rep.ef1.witness) {
    Json r = Json::array();
    for (const auto& w : row) r.push_back(w ? Json(*w) : Json(nullptr));
    witnesses.push_back(r);
  }
  ef1["witness"] = witnesses;
  return {{"full_allocation", rep.full_allocation},
          {"ir", {{"ok", rep.ir.ok}, {"slack", vector_to_json(rep.ir.slack, style)}}},
          {"ef", envy_to_json(rep.ef, style)},
          {"eps_ef", envy_to_json(rep.eps_ef, style)},
          {"ef1", ef1},
          {"efs", rep.efs ? envy_to_json(*rep.efs, style) : Json(nullptr)}};
}

Json solve_result_to_json(const SolveResult& res, NumberStyle style) {
  Json meta = {{"method", res.meta.method},
               {"states", res.meta.states},
               {"lp_solves", res.meta.lp_solves},
               {"allocations", res.meta.allocations},
               {"guesses", res.meta.guesses},
               {"seconds", number(res.meta.seconds)}};
  if (res.meta.epsilon) meta["epsilon"] = rational_to_json(*res.meta.epsilon, style);
  if (res.meta.delta) meta["delta"] = rational_to_json(*res.meta.delta, style);
  if (res.meta.nu) meta["nu"] = rational_to_json(*res.meta.nu, style);
  if (res.meta.guess) meta["guess"] = vector_to_json(*res.meta.guess, style);
  return {{"method", res.meta.method},
          {"revenue", rational_to_json(res.revenue, style)},
          {"contract", contract_to_json(res.contract, style)},
          {"meta", meta}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InvalidInstance(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << doc.dump(2) << "\n";
}

Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

Contract load_contract(const std::string& path) {
  try {
    return contract_from_json(read_json_file(path));
  } catch (const Json::exception& e) {
    throw InvalidInstance(path + ": " + e.what());
  }
}

}  // namespace faircon
