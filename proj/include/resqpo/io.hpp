#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "resqpo/constraints.hpp"
#include "resqpo/errors.hpp"
#include "resqpo/graph.hpp"
#include "resqpo/morphism.hpp"
#include "resqpo/overlaps.hpp"
#include "resqpo/rules.hpp"

namespace resqpo::io {

using json = nlohmann::json;

namespace detail {

inline void expect_object(const json& j, const char* what, std::initializer_list<const char*> required,
                          std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw format_error(std::string(what) + " must be a JSON object");
  std::set<std::string> known;
  for (const char* k : required) {
    if (!j.contains(k)) throw format_error(std::string(what) + " is missing key '" + k + "'");
    known.insert(k);
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw format_error(std::string(what) + " has unknown key '" + k + "'");
}

inline const std::string& as_string(const json& j, const char* what) {
  if (!j.is_string()) throw format_error(std::string(what) + " must be a string");
  return j.get_ref<const std::string&>();
}

inline const json& as_array(const json& j, const char* what) {
  if (!j.is_array()) throw format_error(std::string(what) + " must be an array");
  return j;
}

inline std::map<std::string, std::string> as_id_map(const json& j, const char* what) {
  if (!j.is_object()) throw format_error(std::string(what) + " must be an object of ids");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = as_string(v, what);
  return out;
}

}  // namespace detail

inline json to_json(const Graph& g) {
  json es = json::array();
  for (const auto& e : g.edges()) es.push_back({{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}});
  return {{"vertices", g.vertices()}, {"edges", es}};
}

inline Graph graph_from_json(const json& j) {
  detail::expect_object(j, "graph", {"vertices", "edges"});
  std::vector<std::string> vs;
  for (const auto& v : detail::as_array(j["vertices"], "vertices")) vs.push_back(detail::as_string(v, "vertex id"));
  std::vector<Edge> es;
  for (const auto& e : detail::as_array(j["edges"], "edges")) {
    detail::expect_object(e, "edge", {"id", "src", "tgt"});
    es.push_back({detail::as_string(e["id"], "edge id"), detail::as_string(e["src"], "edge src"),
                  detail::as_string(e["tgt"], "edge tgt")});
  }
  return Graph(std::move(vs), std::move(es));
}

inline json to_json(const Morphism& m) {
  json vm = json::object(), em = json::object();
  for (const auto& [k, v] : m.vmap_ids()) vm[k] = v;
  for (const auto& [k, v] : m.emap_ids()) em[k] = v;
  return {{"vmap", vm}, {"emap", em}};
}

inline Morphism morphism_from_json(const json& j, const Graph& source, const Graph& target) {
  detail::expect_object(j, "morphism", {"vmap", "emap"});
  Morphism m = Morphism::from_maps(source, target, detail::as_id_map(j["vmap"], "vmap"), detail::as_id_map(j["emap"], "emap"));
  if (!m.is_homomorphism()) throw format_error("morphism does not preserve sources and targets");
  return m;
}

inline json to_json(const ConstraintSet& c) {
  json ps = json::array();
  for (const Graph& p : c.patterns()) ps.push_back(to_json(p));
  return {{"patterns", ps}};
}

inline ConstraintSet constraints_from_json(const json& j) {
  detail::expect_object(j, "constraint set", {"patterns"});
  std::vector<Graph> ps;
  for (const auto& p : detail::as_array(j["patterns"], "patterns")) ps.push_back(graph_from_json(p));
  return ConstraintSet(ps);
}

inline json to_json(const ForbiddenRelationSet& s) {
  json rs = json::array();
  for (const auto& r : s.relations)
    rs.push_back({{"C1", to_json(r.c1())},
                  {"D", to_json(r.d())},
                  {"C2", to_json(r.c2())},
                  {"leg1", to_json(r.span.left)},
                  {"leg2", to_json(r.span.right)},
                  {"pattern", r.pattern}});
  return {{"relations", rs}};
}


inline SpanPredicate span_from_json(const json& j) {
  detail::expect_object(j, "span", {"left", "right", "pv", "pe"});
  Graph a = graph_from_json(j["left"]);
  Graph b = graph_from_json(j["right"]);
  auto pairs = [](const json& arr, const char* what) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : detail::as_array(arr, what)) {
      if (!p.is_array() || p.size() != 2) throw format_error(std::string(what) + " entries must be [a, b] pairs");
      out.emplace_back(detail::as_string(p[0], what), detail::as_string(p[1], what));
    }
    return out;
  };
  return SpanPredicate::from_ids(a, b, pairs(j["pv"], "pv"), pairs(j["pe"], "pe"));
}

inline json to_json(const ConditionalRule& r) {
  json nacs = json::array();
  for (const auto& n : r.nacs) nacs.push_back({{"P", to_json(n.context())}, {"embedding", to_json(n.embedding())}});
  return {{"O", to_json(r.rule.output())}, {"K", to_json(r.rule.interface())}, {"I", to_json(r.rule.input())},
          {"ko", to_json(r.rule.ko)},      {"ki", to_json(r.rule.ki)},         {"nacs", nacs}};
}

inline ConditionalRule rule_from_json(const json& j) {
  detail::expect_object(j, "rule", {"O", "K", "I", "ko", "ki"}, {"nacs"});
  Graph o = graph_from_json(j["O"]), k = graph_from_json(j["K"]), i = graph_from_json(j["I"]);
  Rule r(morphism_from_json(j["ko"], k, o), morphism_from_json(j["ki"], k, i));
  std::vector<NegativeCondition> nacs;
  if (j.contains("nacs"))
    for (const auto& n : detail::as_array(j["nacs"], "nacs")) {
      detail::expect_object(n, "negative condition", {"P", "embedding"});
      nacs.emplace_back(morphism_from_json(n["embedding"], i, graph_from_json(n["P"])));
    }
  return ConditionalRule(std::move(r), std::move(nacs));
}

inline json to_json(const GluedGraph& g) {
  return {{"graph", to_json(g.graph)}, {"from_left", to_json(g.from_left)}, {"from_right", to_json(g.from_right)}};
}

namespace detail {

inline json id_pairs(const SpanPredicate& phi) {
  json pv = json::array(), pe = json::array();
  for (auto [a, b] : phi.pv()) pv.push_back({phi.left().vertex_id(a), phi.right().vertex_id(b)});
  for (auto [a, b] : phi.pe()) pe.push_back({phi.left().edge(a).id, phi.right().edge(b).id});
  return {{"pv", pv}, {"pe", pe}};
}

}  // namespace detail

inline json to_json(const SpanPredicate& phi) {
  json j = detail::id_pairs(phi);
  j["left"] = to_json(phi.left());
  j["right"] = to_json(phi.right());
  return j;
}

/// Overlap without its (shared) left and right graphs.
inline json to_json(const CuratedOverlap& o) {
  json j = detail::id_pairs(o.span);
  j["pushout"] = to_json(o.pushout);
  return j;
}

inline json to_json(const CompositionDiagram& d) {
  return {{"match", detail::id_pairs(d.match)}, {"N21", to_json(d.n21.graph)}, {"composite", to_json(d.composite)}};
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw format_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Pretty-printed with sorted keys and a trailing newline, so equal values
/// give identical files.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw format_error("cannot write '" + path + "'");
  out << dump(j);
}

}  // namespace resqpo::io
