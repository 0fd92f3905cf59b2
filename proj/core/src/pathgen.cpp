#include "gapr/pathgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace gapr {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t require_vertex(const Network& net, const std::string& id) {
  const auto v = net.vertex_index(id);
  if (!v) throw std::invalid_argument("unknown vertex " + id);
  return *v;
}

// Depth-first search over simple paths from `origin`, pruned with an
// admissible lower bound on the remaining time. Children are visited in
// ascending vertex-id order, so complete paths are reported in
// lexicographic order of their vertex sequences.
class BoundedSearch {
 public:
  using Visitor = std::function<void(const std::vector<std::size_t>&, double)>;

  BoundedSearch(const Network& net, std::size_t destination, const std::vector<double>& to_dest)
      : net_(net), destination_(destination), to_dest_(to_dest), on_path_(net.vertex_count(), 0) {}

  void run(std::size_t origin, double limit, Visitor visit) {
    limit_ = limit;
    visit_ = std::move(visit);
    stack_.assign(1, origin);
    on_path_[origin] = 1;
    descend(origin, 0.0);
    on_path_[origin] = 0;
  }

  void tighten(double limit) { limit_ = std::min(limit_, limit); }

 private:
  void descend(std::size_t v, double elapsed) {
    if (v == destination_) {
      visit_(stack_, elapsed);
      return;
    }
    const auto& inst = net_.instance();
    for (const auto& link : net_.out_links(v)) {
      const std::size_t w = link.vertex;
      if (on_path_[w]) continue;
      const double t = elapsed + inst.arcs[link.arc].walk_time + inst.vertices[w].traverse_time;
      if (!(t + to_dest_[w] <= limit_)) continue;
      on_path_[w] = 1;
      stack_.push_back(w);
      descend(w, t);
      stack_.pop_back();
      on_path_[w] = 0;
    }
  }

  const Network& net_;
  std::size_t destination_;
  const std::vector<double>& to_dest_;
  std::vector<char> on_path_;
  std::vector<std::size_t> stack_;
  double limit_ = 0.0;
  Visitor visit_;
};

Path shortest_with_bounds(const Network& net, std::size_t od_index, const std::vector<double>& to_dest) {
  const auto& od = net.instance().od_pairs[od_index];
  const std::size_t origin = *net.vertex_index(od.origin);
  const std::size_t destination = *net.vertex_index(od.destination);
  if (!std::isfinite(to_dest[origin])) {
    throw NoPathError("no path for OD pair " + od.id + " (" + od.origin + " -> " + od.destination + ")");
  }
  std::vector<std::size_t> best;
  double best_time = kInf;
  BoundedSearch search(net, destination, to_dest);
  search.run(origin, to_dest[origin] + kFairnessSlack,
             [&](const std::vector<std::size_t>& seq, double t) {
               // First arrival among equal times is lexicographically smallest.
               if (t < best_time) {
                 best_time = t;
                 best = seq;
               }
             });
  return make_path(net, best);
}

}  // namespace

std::vector<std::string> Path::vertex_ids(const Network& net) const {
  std::vector<std::string> ids;
  ids.reserve(vertices.size());
  for (const auto v : vertices) ids.push_back(net.instance().vertices[v].id);
  return ids;
}

bool path_less(const Network& net, const Path& a, const Path& b) {
  if (a.time != b.time) return a.time < b.time;
  return std::lexicographical_compare(
      a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
      [&](std::size_t x, std::size_t y) { return net.id_rank(x) < net.id_rank(y); });
}

Path make_path(const Network& net, std::span<const std::size_t> vertices) {
  if (vertices.size() < 2) throw std::invalid_argument("a path needs at least two vertices");
  const auto& inst = net.instance();
  Path path;
  path.vertices.assign(vertices.begin(), vertices.end());
  std::vector<char> seen(net.vertex_count(), 0);
  seen[vertices[0]] = 1;
  double t = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const std::size_t tail = vertices[i - 1], head = vertices[i];
    if (head >= net.vertex_count() || seen[head]) {
      throw std::invalid_argument("path is not simple");
    }
    seen[head] = 1;
    const auto arc = net.arc_index(tail, head);
    if (!arc) {
      throw std::invalid_argument("path uses nonexistent arc (" + inst.vertices[tail].id + "," +
                                  inst.vertices[head].id + ")");
    }
    path.arcs.push_back(*arc);
    t += inst.arcs[*arc].walk_time;
    t += inst.vertices[head].traverse_time;
  }
  path.time = t;
  return path;
}

double path_time(const Network& net, std::span<const std::size_t> vertices) {
  return make_path(net, vertices).time;
}

double path_time(const Instance& instance, std::span<const std::string> vertex_ids) {
  const Network net(instance);
  std::vector<std::size_t> seq;
  seq.reserve(vertex_ids.size());
  for (const auto& id : vertex_ids) seq.push_back(require_vertex(net, id));
  return path_time(net, seq);
}

std::vector<double> reverse_shortest_times(const Network& net, std::size_t destination) {
  const auto& inst = net.instance();
  std::vector<double> dist(net.vertex_count(), kInf);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[destination] = 0.0;
  queue.emplace(0.0, destination);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    // Entering v costs its traverse time; the arc into v costs its walk time.
    const double enter_v = inst.vertices[v].traverse_time;
    for (const auto& link : net.in_links(v)) {
      const double nd = d + inst.arcs[link.arc].walk_time + enter_v;
      if (nd < dist[link.vertex]) {
        dist[link.vertex] = nd;
        queue.emplace(nd, link.vertex);
      }
    }
  }
  return dist;
}

Path shortest_path(const Network& net, const ODPair& od) {
  const auto& ods = net.instance().od_pairs;
  for (std::size_t c = 0; c < ods.size(); ++c) {
    if (ods[c] == od) {
      return shortest_with_bounds(net, c, reverse_shortest_times(net, *net.vertex_index(od.destination)));
    }
  }
  // Ad hoc OD pair not listed in the instance.
  Instance copy = net.instance();
  copy.od_pairs = {od};
  const Network local(std::move(copy));
  return shortest_with_bounds(local, 0, reverse_shortest_times(local, *local.vertex_index(od.destination)));
}

Path shortest_path(const Instance& instance, const ODPair& od) {
  return shortest_path(Network(instance), od);
}

ODPathSet enumerate_eligible_paths(const Network& net, std::size_t od_index, double phi,
                                   std::size_t max_paths) {
  if (!std::isfinite(phi) || phi < 0.0) throw std::invalid_argument("phi must be finite and >= 0");
  if (max_paths == 0) throw std::invalid_argument("max_paths must be positive");
  const auto& od = net.instance().od_pairs.at(od_index);
  const std::size_t origin = *net.vertex_index(od.origin);
  const std::size_t destination = *net.vertex_index(od.destination);
  const auto to_dest = reverse_shortest_times(net, destination);

  ODPathSet set;
  set.od = od_index;
  set.phi = phi;
  Path sp = shortest_with_bounds(net, od_index, to_dest);
  set.shortest_time = sp.time;
  if (phi == 0.0) {
    set.paths.push_back(std::move(sp));
    return set;
  }

  const auto less = [&](const Path& a, const Path& b) { return path_less(net, a, b); };
  const auto trim = [&] {
    std::sort(set.paths.begin(), set.paths.end(), less);
    if (set.paths.size() > max_paths) {
      set.paths.resize(max_paths);
      set.truncated = true;
    }
  };

  BoundedSearch search(net, destination, to_dest);
  const double budget = (1.0 + phi) * set.shortest_time;
  search.run(origin, budget + kFairnessSlack, [&](const std::vector<std::size_t>& seq, double) {
    set.paths.push_back(make_path(net, seq));
    if (set.paths.size() >= 2 * max_paths) {
      trim();
      // Anything slower than the current worst kept path can never be kept.
      search.tighten(set.paths.back().time + kFairnessSlack);
    }
  });
  trim();
  return set;
}

ODPathSet enumerate_eligible_paths(const Instance& instance, const ODPair& od, double phi,
                                   std::size_t max_paths) {
  Instance copy = instance;
  auto it = std::find(copy.od_pairs.begin(), copy.od_pairs.end(), od);
  if (it == copy.od_pairs.end()) {
    copy.od_pairs.push_back(od);
    it = std::prev(copy.od_pairs.end());
  }
  const auto index = static_cast<std::size_t>(it - copy.od_pairs.begin());
  return enumerate_eligible_paths(Network(std::move(copy)), index, phi, max_paths);
}

std::vector<ODPathSet> enumerate_all(const Network& net, double phi, std::size_t max_paths) {
  std::vector<ODPathSet> sets;
  sets.reserve(net.instance().od_pairs.size());
  for (std::size_t c = 0; c < net.instance().od_pairs.size(); ++c) {
    sets.push_back(enumerate_eligible_paths(net, c, phi, max_paths));
  }
  return sets;
}

}  // namespace gapr
