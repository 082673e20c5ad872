#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "quilt/errors.hpp"
#include "quilt/glue.hpp"
#include "quilt/rational.hpp"
#include "quilt/topology.hpp"
#include "quilt/uv.hpp"

namespace quilt {

using Json = nlohmann::json;

struct TopologyInstance {
  std::vector<std::string> points;
  std::vector<std::string> value_points;
  FiniteTopology space;
  FiniteTopology value_space;
  Collection<BitSet64> collection;
};

struct UvDeskInstance {
  std::vector<std::string> points;
  DeskFamily u;
  DeskFamily v;
  Collection<BitSet64> collection;
};

struct PrfInstance {
  std::size_t arity = 1;
  bool members_are_complements = false;
  std::vector<std::string> piece_names;
  std::vector<std::set<std::uint64_t>> member_sets;  // tuple codes
  std::vector<PartialEvaluator> evaluators;

  GlueInstance to_glue() const {
    std::vector<Enumeration<std::uint64_t>> enums;
    for (const auto& s : member_sets)
      enums.push_back(
          Enumeration<std::uint64_t>::from_items({s.begin(), s.end()}));
    return make_glue_instance(arity, evaluators,
                              members_are_complements
                                  ? separators_from_complements(enums)
                                  : separators_from_re(enums));
  }
};

struct RealInstance {
  std::vector<Rational> cut_points;
};

using Instance =
    std::variant<TopologyInstance, UvDeskInstance, PrfInstance, RealInstance>;

namespace detail {

inline const Json& require_field(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError("missing field: " + key);
  return j.at(key);
}

inline std::vector<std::string> parse_point_labels(const Json& j) {
  if (!j.is_array() || j.empty())
    throw SchemaError("points: expected a non-empty array of labels");
  std::vector<std::string> pts;
  for (const auto& p : j) {
    if (!p.is_string()) throw SchemaError("points: labels must be strings");
    pts.push_back(p.get<std::string>());
  }
  if (std::set<std::string>(pts.begin(), pts.end()).size() != pts.size())
    throw SchemaError("points: labels must be distinct");
  if (pts.size() > 16) throw SchemaError("points: at most 16 supported");
  return pts;
}

inline BitSet64 parse_point_set(const Json& j,
                                const std::vector<std::string>& labels) {
  if (!j.is_array()) throw SchemaError("set: expected an array of labels");
  BitSet64 s;
  for (const auto& p : j) {
    if (!p.is_string()) throw SchemaError("set: labels must be strings");
    auto it = std::ranges::find(labels, p.get<std::string>());
    if (it == labels.end())
      throw SchemaError("set: unknown point " + p.get<std::string>());
    s.insert(static_cast<unsigned>(it - labels.begin()));
  }
  return s;
}

inline FiniteTopology parse_topology(const Json& j,
                                     const std::vector<std::string>& labels) {
  FiniteTopology t{static_cast<unsigned>(labels.size()), {}};
  for (const auto& open : require_field(j, "opens"))
    t.opens.push_back(parse_point_set(open, labels));
  if (!is_topology(t))
    throw SchemaError("opens: not closed under union/intersection or "
                      "missing the empty set or carrier");
  return t;
}

inline Collection<BitSet64> parse_collection(
    const Json& j, const std::vector<std::string>& labels) {
  if (!j.is_array() || j.empty())
    throw SchemaError("collection: expected a non-empty array");
  Collection<BitSet64> a;
  for (const auto& m : j)
    a.members.push_back(
        {require_field(m, "name").get<std::string>(),
         parse_point_set(require_field(m, "set"), labels)});
  return a;
}

inline std::vector<BitSet64> parse_family(
    const Json& j, const std::vector<std::string>& labels) {
  if (!j.is_array() || j.empty())
    throw SchemaError("family: expected a non-empty array of sets");
  std::vector<BitSet64> members;
  for (const auto& m : j) members.push_back(parse_point_set(m, labels));
  if (members.size() > 16) throw SchemaError("family: at most 16 members");
  return members;
}

inline std::set<std::uint64_t> parse_member_codes(const Json& j,
                                                  std::size_t arity) {
  std::string type = require_field(j, "type").get<std::string>();
  std::set<std::uint64_t> out;
  if (type == "list") {
    for (const auto& tup : require_field(j, "tuples")) {
      if (!tup.is_array() || tup.size() != arity)
        throw SchemaError("member tuples must match the arity");
      std::vector<std::uint64_t> x;
      for (const auto& v : tup) x.push_back(v.get<std::uint64_t>());
      out.insert(tuple_code(x));
    }
    return out;
  }
  if (type == "progression") {
    if (arity != 1)
      throw SchemaError("progression members need arity 1");
    std::uint64_t start = require_field(j, "start").get<std::uint64_t>();
    std::uint64_t stride = require_field(j, "stride").get<std::uint64_t>();
    std::uint64_t count = require_field(j, "count").get<std::uint64_t>();
    if (stride == 0 || count > 100000)
      throw SchemaError("progression: bad stride or count");
    for (std::uint64_t i = 0; i < count; ++i) out.insert(start + i * stride);
    return out;
  }
  throw SchemaError("member: unknown type " + type);
}

inline PartialEvaluator parse_evaluator(const Json& j, std::size_t arity) {
  std::string type = require_field(j, "type").get<std::string>();
  if (type == "const")
    return PartialEvaluator::constant(
        require_field(j, "value").get<std::uint64_t>());
  if (type == "projection") {
    std::size_t index = require_field(j, "index").get<std::size_t>();
    if (index >= arity) throw SchemaError("projection: index out of range");
    return PartialEvaluator::projection(index);
  }
  if (type == "table") {
    std::map<std::vector<std::uint64_t>, PartialEvaluator::TableEntry> table;
    for (const auto& e : require_field(j, "entries")) {
      const auto& xs = require_field(e, "x");
      if (!xs.is_array() || xs.size() != arity)
        throw SchemaError("table entry arity mismatch");
      std::vector<std::uint64_t> x;
      for (const auto& v : xs) x.push_back(v.get<std::uint64_t>());
      PartialEvaluator::TableEntry entry;
      entry.value = require_field(e, "y").get<std::uint64_t>();
      entry.halt_stage = e.contains("halt") ? e.at("halt").get<std::uint64_t>() : 1;
      if (entry.halt_stage == 0)
        throw SchemaError("table entry: halt stage must be positive");
      table[std::move(x)] = entry;
    }
    return PartialEvaluator::table(std::move(table));
  }
  throw SchemaError("phi: unknown type " + type);
}

}  // namespace detail

inline Instance parse_instance(const Json& j) {
  std::string kind = detail::require_field(j, "kind").get<std::string>();
  if (kind == "topology") {
    TopologyInstance inst;
    const Json& space = detail::require_field(j, "space");
    inst.points = detail::parse_point_labels(
        detail::require_field(space, "points"));
    inst.space = detail::parse_topology(space, inst.points);
    const Json& vs = detail::require_field(j, "value_space");
    inst.value_points = detail::parse_point_labels(
        detail::require_field(vs, "points"));
    inst.value_space = detail::parse_topology(vs, inst.value_points);
    inst.collection = detail::parse_collection(
        detail::require_field(j, "collection"), inst.points);
    return inst;
  }
  if (kind == "uv_desk") {
    UvDeskInstance inst;
    inst.points = detail::parse_point_labels(
        detail::require_field(j, "points"));
    unsigned n = static_cast<unsigned>(inst.points.size());
    inst.u = DeskFamily{
        n, detail::parse_family(detail::require_field(j, "u_members"),
                                inst.points)};
    inst.v = DeskFamily{
        n, detail::parse_family(detail::require_field(j, "v_members"),
                                inst.points)};
    inst.collection = detail::parse_collection(
        detail::require_field(j, "collection"), inst.points);
    if (!set_is_subset(union_all(inst.collection), inst.u.ground()))
      throw SchemaError(
          "collection: members must lie inside the union of u_members");
    return inst;
  }
  if (kind == "prf") {
    PrfInstance inst;
    inst.arity = detail::require_field(j, "arity").get<std::size_t>();
    if (inst.arity < 1 || inst.arity > 4)
      throw SchemaError("arity: expected 1..4");
    if (j.contains("members_are_complements"))
      inst.members_are_complements =
          j.at("members_are_complements").get<bool>();
    const Json& pieces = detail::require_field(j, "pieces");
    if (!pieces.is_array() || pieces.empty())
      throw SchemaError("pieces: expected a non-empty array");
    if (pieces.size() > 8) throw SchemaError("pieces: at most 8 supported");
    for (const auto& p : pieces) {
      inst.piece_names.push_back(
          detail::require_field(p, "name").get<std::string>());
      inst.member_sets.push_back(detail::parse_member_codes(
          detail::require_field(p, "member"), inst.arity));
      inst.evaluators.push_back(detail::parse_evaluator(
          detail::require_field(p, "phi"), inst.arity));
    }
    return inst;
  }
  if (kind == "real") {
    RealInstance inst;
    for (const auto& c : detail::require_field(j, "cut_points")) {
      if (!c.is_string())
        throw SchemaError("cut_points: rationals are \"num/den\" strings");
      inst.cut_points.push_back(parse_rational(c.get<std::string>()));
    }
    if (inst.cut_points.empty())
      throw SchemaError("cut_points: expected at least one");
    for (std::size_t i = 1; i < inst.cut_points.size(); ++i)
      if (!(inst.cut_points[i - 1] < inst.cut_points[i]))
        throw SchemaError("cut_points: must be strictly ascending");
    return inst;
  }
  throw SchemaError("unknown instance kind: " + kind);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open instance file: " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw SchemaError("malformed JSON in " + path);
  return parse_instance(j);
}

inline Json point_set_json(BitSet64 s,
                           const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (unsigned x : set_elements(s))
    if (x < labels.size()) out.push_back(labels[x]);
  return out;
}

}  // namespace quilt
