#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string_view>

#include "gapr/assignment.hpp"
#include "gapr/netmodel.hpp"
#include "gapr/pathgen.hpp"
#include "json.hpp"

namespace gapr {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void expect_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> required,
                 std::initializer_list<std::string_view> optional = {}) {
  if (!obj.is_object()) throw ParseError(std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    const auto known = [&](std::initializer_list<std::string_view> keys) {
      return std::find(keys.begin(), keys.end(), key) != keys.end();
    };
    if (!known(required) && !known(optional)) {
      throw ParseError(std::string(where) + ": unknown field \"" + key + "\"");
    }
  }
  for (const auto key : required) {
    if (!obj.contains(key)) throw ParseError(std::string(where) + ": missing field \"" + std::string(key) + "\"");
  }
}

std::string get_string(const json& obj, const char* key, std::string_view where) {
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ParseError(std::string(where) + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const char* key, std::string_view where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ParseError(std::string(where) + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

const json& get_array(const json& obj, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
  return v;
}

Instance parse_instance(const json& doc) {
  expect_keys(doc, "instance", {"name", "vertices", "arcs", "od_pairs"});
  Instance inst;
  inst.name = get_string(doc, "name", "instance");

  const auto& vertices = get_array(doc, "vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    expect_keys(vertices[i], where, {"id", "cap", "traverse_time"});
    inst.vertices.push_back({get_string(vertices[i], "id", where), get_number(vertices[i], "cap", where),
                             get_number(vertices[i], "traverse_time", where)});
  }
  const auto& arcs = get_array(doc, "arcs");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string where = "arcs[" + std::to_string(i) + "]";
    expect_keys(arcs[i], where, {"tail", "head", "cap", "walk_time"}, {"length"});
    Arc arc;
    arc.tail = get_string(arcs[i], "tail", where);
    arc.head = get_string(arcs[i], "head", where);
    arc.cap = get_number(arcs[i], "cap", where);
    arc.walk_time = get_number(arcs[i], "walk_time", where);
    if (arcs[i].contains("length")) arc.length = get_number(arcs[i], "length", where);
    inst.arcs.push_back(std::move(arc));
  }
  const auto& ods = get_array(doc, "od_pairs");
  for (std::size_t i = 0; i < ods.size(); ++i) {
    const std::string where = "od_pairs[" + std::to_string(i) + "]";
    expect_keys(ods[i], where, {"id", "origin", "destination", "demand"});
    inst.od_pairs.push_back({get_string(ods[i], "id", where), get_string(ods[i], "origin", where),
                             get_string(ods[i], "destination", where), get_number(ods[i], "demand", where)});
  }
  if (auto violations = validate(inst); !violations.empty()) throw ValidationError(std::move(violations));
  return inst;
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }
}

}  // namespace

Instance load_instance(std::string_view document) { return parse_instance(parse_document(document)); }

Instance load_instance(std::istream& source) {
  std::ostringstream buffer;
  buffer << source.rdbuf();
  return load_instance(std::string_view(buffer.str()));
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open instance file " + path);
  return load_instance(in);
}

std::string save_instance(const Instance& instance) {
  ordered_json doc;
  doc["name"] = instance.name;
  doc["vertices"] = ordered_json::array();
  for (const auto& v : instance.vertices) {
    doc["vertices"].push_back({{"id", v.id}, {"cap", v.cap}, {"traverse_time", v.traverse_time}});
  }
  doc["arcs"] = ordered_json::array();
  for (const auto& a : instance.arcs) {
    ordered_json arc = {{"tail", a.tail}, {"head", a.head}, {"cap", a.cap}, {"walk_time", a.walk_time}};
    if (a.length) arc["length"] = *a.length;
    doc["arcs"].push_back(std::move(arc));
  }
  doc["od_pairs"] = ordered_json::array();
  for (const auto& od : instance.od_pairs) {
    doc["od_pairs"].push_back(
        {{"id", od.id}, {"origin", od.origin}, {"destination", od.destination}, {"demand", od.demand}});
  }
  return doc.dump(2) + "\n";
}

void save_instance(const Instance& instance, std::ostream& out) { out << save_instance(instance); }

void write_path_sets_jsonl(const Network& net, const std::vector<ODPathSet>& sets, std::ostream& out) {
  const auto& inst = net.instance();
  for (const auto& set : sets) {
    ordered_json line;
    line["od"] = inst.od_pairs.at(set.od).id;
    line["phi"] = set.phi;
    line["paths"] = ordered_json::array();
    line["times"] = ordered_json::array();
    for (const auto& p : set.paths) {
      line["paths"].push_back(p.vertex_ids(net));
      line["times"].push_back(p.time);
    }
    line["truncated"] = set.truncated;
    out << line.dump() << '\n';
  }
}

void write_assignment_json(const Network& net, const Assignment& assignment, std::ostream& out) {
  const auto& inst = net.instance();
  if (assignment.instance_fingerprint != net.fingerprint()) {
    throw MismatchError("assignment was computed on a different instance");
  }
  ordered_json doc;
  doc["phi"] = assignment.params.phi;
  doc["alpha"] = assignment.params.alpha;
  doc["tau"] = assignment.tau;
  doc["eta"] = assignment.eta;
  doc["objective"] = assignment.scalarized_objective;
  doc["path_flows"] = ordered_json::array();
  const auto& sets = *assignment.path_sets;
  for (std::size_t c = 0; c < sets.size(); ++c) {
    for (std::size_t k = 0; k < sets[c].paths.size(); ++k) {
      doc["path_flows"].push_back({{"od", inst.od_pairs[c].id},
                                   {"path", sets[c].paths[k].vertex_ids(net)},
                                   {"flow", assignment.path_flows[c][k]}});
    }
  }
  doc["arc_excess"] = ordered_json::array();
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    doc["arc_excess"].push_back(
        {{"tail", inst.arcs[a].tail}, {"head", inst.arcs[a].head}, {"sigma", assignment.arc_excess[a]}});
  }
  doc["vertex_excess"] = ordered_json::array();
  for (std::size_t v = 0; v < inst.vertices.size(); ++v) {
    doc["vertex_excess"].push_back({{"id", inst.vertices[v].id}, {"delta", assignment.vertex_excess[v]}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace gapr
