#pragma once

// Instance documents:
//
//   {"family": "matching", "left": [1, 3],
//    "elements": [{"id": 1, "fixed": false, "u": 1, "v": 2, "w": 1.0}, ...]}
//
//   {"family": "flow", "source": 5, "sink": 6,
//    "elements": [{"id": 4, "fixed": true, "tail": 5, "head": 0, "cap": 2},
//                 {"id": 5, "fixed": true, "tail": 0, "head": 1, "cap": "inf"}, ...]}
//
// Orderable elements are those with "fixed": false (the default), taken in
// ascending id order.

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "permsched/subproblems/instance.hpp"

namespace permsched {

namespace detail {

using nlohmann::json;

inline const json& require(const json& obj, const char* field, const std::string& where) {
  auto it = obj.find(field);
  if (it == obj.end()) throw ValidationError(where + ": missing field '" + field + "'");
  return *it;
}

inline int require_vertex(const json& obj, const char* field, const std::string& where) {
  const json& v = require(obj, field, where);
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1'000'000) {
    throw ValidationError(where + ": field '" + field + "' must be a nonnegative integer");
  }
  return v.get<int>();
}

inline double require_number(const json& obj, const char* field, const std::string& where) {
  const json& v = require(obj, field, where);
  if (!v.is_number()) throw ValidationError(where + ": field '" + field + "' must be a number");
  return v.get<double>();
}

}  // namespace detail

inline Instance parse_instance(const nlohmann::json& doc) {
  using detail::json;
  if (!doc.is_object()) throw ValidationError("instance document must be an object");
  const json& family = detail::require(doc, "family", "instance");
  if (!family.is_string()) throw ValidationError("instance: field 'family' must be a string");
  const json& elements = detail::require(doc, "elements", "instance");
  if (!elements.is_array()) throw ValidationError("instance: field 'elements' must be an array");

  const std::string tag = family.get<std::string>();
  if (tag != "matching" && tag != "flow") {
    throw ValidationError("instance: unknown family '" + tag + "'");
  }

  Instance inst;
  int max_vertex = -1;
  std::vector<std::pair<int, bool>> members;  // id, fixed
  MatchingInstance g;
  FlowInstance d;
  if (tag == "matching") {
    const json& left = detail::require(doc, "left", "instance");
    if (!left.is_array()) throw ValidationError("instance: field 'left' must be an array");
    for (const auto& v : left) {
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ValidationError("instance: 'left' entries must be nonnegative integers");
      }
      g.left.push_back(v.get<int>());
      max_vertex = std::max(max_vertex, g.left.back());
    }
  } else {
    d.source = detail::require_vertex(doc, "source", "instance");
    d.sink = detail::require_vertex(doc, "sink", "instance");
    max_vertex = std::max(d.source, d.sink);
  }

  for (std::size_t k = 0; k < elements.size(); ++k) {
    const json& el = elements[k];
    std::string where = "elements[" + std::to_string(k) + "]";
    if (!el.is_object()) throw ValidationError(where + ": must be an object");
    const json& id = detail::require(el, "id", where);
    if (!id.is_number_integer()) throw ValidationError(where + ": field 'id' must be an integer");
    where = "element " + std::to_string(id.get<long long>());
    bool fixed = false;
    if (auto it = el.find("fixed"); it != el.end()) {
      if (!it->is_boolean()) throw ValidationError(where + ": field 'fixed' must be a boolean");
      fixed = it->get<bool>();
    }
    members.emplace_back(id.get<int>(), fixed);
    if (tag == "matching") {
      Edge e{id.get<int>(), detail::require_vertex(el, "u", where),
             detail::require_vertex(el, "v", where), detail::require_number(el, "w", where)};
      if (e.weight < 0.0) {
        throw ValidationError(where + ": negative weight " + std::to_string(e.weight));
      }
      max_vertex = std::max({max_vertex, e.u, e.v});
      g.edges.push_back(e);
    } else {
      Arc a{id.get<int>(), detail::require_vertex(el, "tail", where),
            detail::require_vertex(el, "head", where), 0.0, false};
      const json& cap = detail::require(el, "cap", where);
      if (cap.is_string() && cap.get<std::string>() == "inf") {
        a.uncapacitated = true;
      } else if (cap.is_number()) {
        a.capacity = cap.get<double>();
        if (a.capacity < 0.0) {
          throw ValidationError(where + ": negative capacity " + std::to_string(a.capacity));
        }
      } else {
        throw ValidationError(where + ": field 'cap' must be a number or \"inf\"");
      }
      max_vertex = std::max({max_vertex, a.tail, a.head});
      d.arcs.push_back(a);
    }
  }

  if (tag == "matching") {
    g.vertex_count = max_vertex + 1;
    inst.data = std::move(g);
  } else {
    d.node_count = max_vertex + 1;
    inst.data = std::move(d);
  }
  std::sort(members.begin(), members.end());
  for (const auto& [id, fixed] : members) (fixed ? inst.fixed : inst.orderable).push_back(id);
  validate(inst);
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed instance document: ") + e.what());
  }
  return parse_instance(doc);
}

inline nlohmann::json to_json(const Instance& inst) {
  using detail::json;
  json doc;
  json elements = json::array();
  auto is_fixed = [&](int id) {
    return std::find(inst.fixed.begin(), inst.fixed.end(), id) != inst.fixed.end();
  };
  if (inst.family() == Family::Matching) {
    const auto& g = inst.matching();
    doc["family"] = "matching";
    doc["left"] = g.left;
    for (const auto& e : g.edges) {
      elements.push_back({{"id", e.id}, {"fixed", is_fixed(e.id)}, {"u", e.u}, {"v", e.v}, {"w", e.weight}});
    }
  } else {
    const auto& d = inst.flow();
    doc["family"] = "flow";
    doc["source"] = d.source;
    doc["sink"] = d.sink;
    for (const auto& a : d.arcs) {
      json cap = a.uncapacitated ? json("inf") : json(a.capacity);
      elements.push_back(
          {{"id", a.id}, {"fixed", is_fixed(a.id)}, {"tail", a.tail}, {"head", a.head}, {"cap", cap}});
    }
  }
  doc["elements"] = std::move(elements);
  return doc;
}

inline std::string serialize_instance(const Instance& inst) { return to_json(inst).dump(2) + "\n"; }

}  // namespace permsched
