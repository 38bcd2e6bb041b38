#pragma once

// Canonical JSON (de)serialization for instances and solutions. Rationals
// travel as exact strings ("p/q" or an integer string); floating point shows
// up only in advisory *_approx fields that are never read back.

#include <string>
#include <vector>

#include <json.hpp>

#include "efo/errors.hpp"
#include "efo/model.hpp"
#include "efo/rational.hpp"

namespace efo {

using Json = nlohmann::ordered_json;

namespace json_detail {

inline Rational rational_field(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw_input("bad-json", "missing field: " + key);
  if (!j[key].is_string())
    throw_input("bad-json", "field " + key + " must be a rational string");
  auto parsed = parse_rational(j[key].get<std::string>());
  if (!parsed)
    throw_input("bad-json", "unparsable rational in field " + key + ": " +
                                j[key].get<std::string>());
  return *parsed;
}

inline long long int_field(const Json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw_input("bad-json", "missing or non-integer field: " + key);
  return j[key].get<long long>();
}

inline std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::plain_additive: return "plain-additive";
    case FamilyKind::additive_capped: return "additive-capped";
    case FamilyKind::all_or_nothing_degree: return "all-or-nothing-degree";
    case FamilyKind::unit_demand: return "unit-demand";
  }
  throw_internal("bad-family");
}

inline FamilyKind family_kind(const std::string& name) {
  if (name == "plain-additive") return FamilyKind::plain_additive;
  if (name == "additive-capped") return FamilyKind::additive_capped;
  if (name == "all-or-nothing-degree") return FamilyKind::all_or_nothing_degree;
  if (name == "unit-demand") return FamilyKind::unit_demand;
  throw_input("bad-json", "unknown family: " + name);
}

}  // namespace json_detail

inline Json instance_to_json(const Instance& ins) {
  Json j;
  j["agents"] = ins.n();
  j["edges"] = Json::array();
  for (const Edge& e : ins.graph.edges) {
    Json je;
    je["id"] = e.id;
    je["u"] = e.u;
    je["v"] = e.v;
    je["vu"] = to_string(ins.valuation.edge_values[e.id].at_u);
    je["vv"] = to_string(ins.valuation.edge_values[e.id].at_v);
    j["edges"].push_back(je);
  }
  if (ins.valuation.additive) {
    j["valuation"] = Json{{"type", "additive"}};
  } else {
    Json families = Json::array();
    for (const MonotoneFamily& f : ins.valuation.families) {
      Json jf;
      jf["family"] = json_detail::family_name(f.kind);
      if (f.kind == FamilyKind::additive_capped) jf["cap"] = to_string(f.cap);
      if (f.kind == FamilyKind::all_or_nothing_degree) jf["threshold"] = f.threshold;
      families.push_back(jf);
    }
    j["valuation"] = Json{{"type", "monotone"}, {"families", families}};
  }
  return j;
}

inline std::string serialize_instance(const Instance& ins) {
  return instance_to_json(ins).dump(2) + "\n";
}

inline Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw_input("bad-json", "instance must be an object");
  Instance ins;
  ins.graph.n_agents = static_cast<int>(json_detail::int_field(j, "agents"));
  if (!j.contains("edges") || !j["edges"].is_array())
    throw_input("bad-json", "missing edges array");
  for (const Json& je : j["edges"]) {
    Edge e;
    e.id = static_cast<int>(json_detail::int_field(je, "id"));
    e.u = static_cast<int>(json_detail::int_field(je, "u"));
    e.v = static_cast<int>(json_detail::int_field(je, "v"));
    ins.graph.edges.push_back(e);
    ins.valuation.edge_values.push_back({json_detail::rational_field(je, "vu"),
                                         json_detail::rational_field(je, "vv")});
  }
  if (!j.contains("valuation") || !j["valuation"].is_object())
    throw_input("bad-json", "missing valuation object");
  const Json& jv = j["valuation"];
  std::string type = jv.contains("type") && jv["type"].is_string()
                         ? jv["type"].get<std::string>()
                         : "";
  if (type == "additive") {
    ins.valuation.additive = true;
  } else if (type == "monotone") {
    ins.valuation.additive = false;
    if (!jv.contains("families") || !jv["families"].is_array())
      throw_input("bad-json", "monotone valuation needs a families array");
    for (const Json& jf : jv["families"]) {
      MonotoneFamily f;
      if (!jf.contains("family") || !jf["family"].is_string())
        throw_input("bad-json", "family entry needs a family name");
      f.kind = json_detail::family_kind(jf["family"].get<std::string>());
      if (f.kind == FamilyKind::additive_capped)
        f.cap = json_detail::rational_field(jf, "cap");
      if (f.kind == FamilyKind::all_or_nothing_degree)
        f.threshold = json_detail::int_field(jf, "threshold");
      ins.valuation.families.push_back(f);
    }
  } else {
    throw_input("bad-json", "valuation type must be additive or monotone");
  }
  ins.validate();
  return ins;
}

inline Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw_input("bad-json", e.what());
  }
  return instance_from_json(j);
}

inline Json solution_to_json(const Solution& sol, const std::string& bound_used) {
  Json j;
  j["orientation"] = sol.orientation.owner;
  j["payments"] = Json::array();
  j["payments_approx"] = Json::array();
  for (const Rational& p : sol.payments) {
    j["payments"].push_back(to_string(p));
    j["payments_approx"].push_back(to_double(p));
  }
  Rational total = sol.total_payment();
  j["total_subsidy"] = to_string(total);
  j["total_subsidy_approx"] = to_double(total);
  j["bound_used"] = bound_used;
  Json diag = Json::object();
  auto emit = [&diag](const char* key,
                      const std::optional<std::vector<Rational>>& values) {
    if (!values) return;
    Json arr = Json::array();
    for (const Rational& v : *values) arr.push_back(to_string(v));
    diag[key] = arr;
  };
  emit("b", sol.diagnostics.thresholds);
  emit("w", sol.diagnostics.shortfalls);
  emit("t", sol.diagnostics.carried);
  if (!diag.empty()) j["diagnostics"] = diag;
  return j;
}

inline std::string serialize_solution(const Solution& sol,
                                      const std::string& bound_used) {
  return solution_to_json(sol, bound_used).dump(2) + "\n";
}

inline Solution solution_from_json(const Json& j) {
  if (!j.is_object()) throw_input("bad-json", "solution must be an object");
  Solution sol;
  if (!j.contains("orientation") || !j["orientation"].is_array())
    throw_input("bad-json", "missing orientation array");
  for (const Json& o : j["orientation"]) {
    if (!o.is_number_integer()) throw_input("bad-json", "orientation entries are ids");
    sol.orientation.owner.push_back(o.get<int>());
  }
  if (!j.contains("payments") || !j["payments"].is_array())
    throw_input("bad-json", "missing payments array");
  for (std::size_t k = 0; k < j["payments"].size(); ++k) {
    const Json& p = j["payments"][k];
    if (!p.is_string()) throw_input("bad-json", "payments are rational strings");
    auto parsed = parse_rational(p.get<std::string>());
    if (!parsed) throw_input("bad-json", "unparsable payment: " + p.get<std::string>());
    sol.payments.push_back(*parsed);
  }
  return sol;
}

inline Solution parse_solution(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw_input("bad-json", e.what());
  }
  return solution_from_json(j);
}

}  // namespace efo
