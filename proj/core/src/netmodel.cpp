#include "gapr/netmodel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

namespace gapr {
namespace {

std::string arc_label(const Arc& arc) { return "arc (" + arc.tail + "," + arc.head + ")"; }

void check_positive(std::vector<Violation>& out, const std::string& entity, std::string_view field,
                    double value) {
  if (!std::isfinite(value)) {
    out.push_back({entity, "non-finite", std::string(field) + " must be finite"});
  } else if (!(value > 0.0)) {
    out.push_back({entity, "nonpositive-" + std::string(field), std::string(field) + " must be > 0"});
  }
}

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void text(const std::string& s) {
    const std::uint64_t n = s.size();
    bytes(&n, sizeof n);
    bytes(s.data(), s.size());
  }
  void number(double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    bytes(&bits, sizeof bits);
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::vector<Violation> validate(const Instance& instance) {
  std::vector<Violation> out;

  std::unordered_set<std::string> vertex_ids;
  for (const auto& v : instance.vertices) {
    const std::string entity = "vertex " + v.id;
    if (!vertex_ids.insert(v.id).second) {
      out.push_back({entity, "duplicate-vertex", "duplicate vertex id " + v.id});
    }
    check_positive(out, entity, "cap", v.cap);
    if (!std::isfinite(v.traverse_time)) {
      out.push_back({entity, "non-finite", "traverse_time must be finite"});
    } else if (v.traverse_time < 0.0) {
      out.push_back({entity, "negative-traverse_time", "traverse_time must be >= 0"});
    }
  }

  std::set<std::pair<std::string, std::string>> arc_pairs;
  for (const auto& a : instance.arcs) {
    const std::string entity = arc_label(a);
    for (const std::string* end : {&a.tail, &a.head}) {
      if (!vertex_ids.contains(*end)) {
        out.push_back({entity, "dangling-reference",
                       entity + " references missing vertex " + *end});
      }
    }
    if (a.tail == a.head) out.push_back({entity, "self-loop", "tail equals head"});
    check_positive(out, entity, "cap", a.cap);
    check_positive(out, entity, "walk_time", a.walk_time);
    if (a.length) check_positive(out, entity, "length", *a.length);
    if (!arc_pairs.emplace(a.tail, a.head).second) {
      out.push_back({entity, "duplicate-arc", "duplicate " + entity});
    }
  }

  std::unordered_set<std::string> od_ids;
  for (const auto& od : instance.od_pairs) {
    const std::string entity = "od " + od.id;
    if (!od_ids.insert(od.id).second) {
      out.push_back({entity, "duplicate-od", "duplicate OD id " + od.id});
    }
    for (const std::string* end : {&od.origin, &od.destination}) {
      if (!vertex_ids.contains(*end)) {
        out.push_back({entity, "dangling-reference",
                       entity + " references missing vertex " + *end});
      }
    }
    if (od.origin == od.destination) {
      out.push_back({entity, "origin-equals-destination", "origin equals destination"});
    }
    if (!std::isfinite(od.demand)) {
      out.push_back({entity, "non-finite", "demand must be finite"});
    } else if (!(od.demand > 0.0)) {
      out.push_back({entity, "nonpositive-demand", "demand must be > 0"});
    }
  }
  return out;
}

std::uint64_t fingerprint(const Instance& instance) {
  Fnv1a h;
  h.text(instance.name);
  for (const auto& v : instance.vertices) {
    h.text(v.id);
    h.number(v.cap);
    h.number(v.traverse_time);
  }
  for (const auto& a : instance.arcs) {
    h.text(a.tail);
    h.text(a.head);
    h.number(a.cap);
    h.number(a.walk_time);
  }
  for (const auto& od : instance.od_pairs) {
    h.text(od.id);
    h.text(od.origin);
    h.text(od.destination);
    h.number(od.demand);
  }
  return h.value();
}

Network::Network(Instance instance) {
  if (auto violations = validate(instance); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  instance_ = std::make_shared<const Instance>(std::move(instance));
  const auto& inst = *instance_;
  const std::size_t n = inst.vertices.size();

  for (std::size_t i = 0; i < n; ++i) vertex_by_id_.emplace(inst.vertices[i].id, i);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.vertices[a].id < inst.vertices[b].id;
  });
  rank_.resize(n);
  for (std::size_t r = 0; r < n; ++r) rank_[order[r]] = r;

  out_.resize(n);
  in_.resize(n);
  arc_tail_.reserve(inst.arcs.size());
  arc_head_.reserve(inst.arcs.size());
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    const std::size_t t = vertex_by_id_.at(inst.arcs[a].tail);
    const std::size_t h = vertex_by_id_.at(inst.arcs[a].head);
    arc_tail_.push_back(t);
    arc_head_.push_back(h);
    arc_by_pair_.emplace(static_cast<std::uint64_t>(t) * n + h, a);
    out_[t].push_back({h, a});
    in_[h].push_back({t, a});
  }
  const auto by_rank = [this](const Link& a, const Link& b) {
    return rank_[a.vertex] < rank_[b.vertex];
  };
  for (auto& links : out_) std::sort(links.begin(), links.end(), by_rank);
  for (auto& links : in_) std::sort(links.begin(), links.end(), by_rank);

  fingerprint_ = gapr::fingerprint(inst);
}

std::optional<std::size_t> Network::vertex_index(std::string_view id) const {
  const auto it = vertex_by_id_.find(std::string(id));
  if (it == vertex_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Network::arc_index(std::size_t tail, std::size_t head) const {
  const auto it = arc_by_pair_.find(static_cast<std::uint64_t>(tail) * vertex_count() + head);
  if (it == arc_by_pair_.end()) return std::nullopt;
  return it->second;
}

}  // namespace gapr
