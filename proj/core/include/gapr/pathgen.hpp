#pragma once

// Shortest paths and fairness-bounded eligible path sets.
//
// A path's time is the walk time of every arc it uses plus the traverse time
// of every vertex it enters (all vertices except the origin, destination
// included). Ties are broken by the lexicographic order of vertex-id
// sequences.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gapr/netmodel.hpp"

namespace gapr {

/// Absolute slack on the fairness bound: a path is eligible when
/// time <= (1 + phi) * shortest_time + kFairnessSlack.
inline constexpr double kFairnessSlack = 1e-9;

inline constexpr std::size_t kDefaultMaxPaths = 1000;

struct Path {
  std::vector<std::size_t> vertices;  // indices into Instance::vertices
  std::vector<std::size_t> arcs;      // indices into Instance::arcs
  double time = 0.0;

  bool operator==(const Path&) const = default;

  std::vector<std::string> vertex_ids(const Network& net) const;
};

struct ODPathSet {
  std::size_t od = 0;  // index into Instance::od_pairs
  double phi = 0.0;
  double shortest_time = 0.0;
  std::vector<Path> paths;  // sorted by (time, vertex ids)
  bool truncated = false;
};

/// Strict weak order used everywhere paths are ranked: time, then
/// lexicographic vertex-id sequence.
bool path_less(const Network& net, const Path& a, const Path& b);

/// Canonical path time over vertex indices. Throws std::invalid_argument if
/// the sequence is not a simple walk along existing arcs.
double path_time(const Network& net, std::span<const std::size_t> vertices);
double path_time(const Instance& instance, std::span<const std::string> vertex_ids);

/// Builds a Path (arcs and time filled in) from a vertex sequence.
Path make_path(const Network& net, std::span<const std::size_t> vertices);

/// Minimum time from every vertex to `destination` under path-time
/// semantics; +inf where unreachable.
std::vector<double> reverse_shortest_times(const Network& net, std::size_t destination);

/// Tie-broken shortest path. Throws NoPathError if unreachable.
Path shortest_path(const Network& net, const ODPair& od);
Path shortest_path(const Instance& instance, const ODPair& od);

/// All simple paths within the fairness band, keeping the `max_paths`
/// smallest when more qualify (truncated = true). phi = 0 returns exactly
/// the tie-broken shortest path.
ODPathSet enumerate_eligible_paths(const Network& net, std::size_t od_index, double phi,
                                   std::size_t max_paths = kDefaultMaxPaths);
ODPathSet enumerate_eligible_paths(const Instance& instance, const ODPair& od, double phi,
                                   std::size_t max_paths = kDefaultMaxPaths);

/// Path sets for every OD pair, in instance order.
std::vector<ODPathSet> enumerate_all(const Network& net, double phi,
                                     std::size_t max_paths = kDefaultMaxPaths);

/// JSON-lines debug dump, one OD per line:
/// {"od": id, "phi": num, "paths": [[ids...]], "times": [num...], "truncated": bool}
void write_path_sets_jsonl(const Network& net, const std::vector<ODPathSet>& sets,
                           std::ostream& out);

}  // namespace gapr
