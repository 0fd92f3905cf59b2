#pragma once

// Instance data model for pedestrian routing: a directed network whose arcs
// and vertices carry capacities and traversal times, plus the origin /
// destination demand to be routed over it.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gapr/error.hpp"

namespace gapr {

struct Vertex {
  std::string id;
  double cap = 0.0;            // pedestrians per unit time
  double traverse_time = 0.0;  // seconds

  bool operator==(const Vertex&) const = default;
};

struct Arc {
  std::string tail;
  std::string head;
  double cap = 0.0;        // pedestrians per unit time
  double walk_time = 0.0;  // seconds
  std::optional<double> length;  // meters, metadata only

  bool operator==(const Arc&) const = default;
};

struct ODPair {
  std::string id;
  std::string origin;
  std::string destination;
  double demand = 0.0;  // pedestrians per unit time

  bool operator==(const ODPair&) const = default;
};

struct Instance {
  std::string name;
  std::vector<Vertex> vertices;
  std::vector<Arc> arcs;
  std::vector<ODPair> od_pairs;

  bool operator==(const Instance&) const = default;
};

/// Checks every model invariant. Empty result iff the instance is valid.
std::vector<Violation> validate(const Instance& instance);

/// Parses the JSON instance document and validates it.
/// Throws ParseError on malformed input, ValidationError on broken invariants.
Instance load_instance(std::istream& source);
Instance load_instance(std::string_view document);
Instance load_instance_file(const std::string& path);

/// Serializes to the JSON instance document. Doubles are written with
/// round-trip precision, array order is preserved.
std::string save_instance(const Instance& instance);
void save_instance(const Instance& instance, std::ostream& out);

/// Stable 64-bit digest of names, topology and numeric data. Used to detect
/// assignments computed on different instances.
std::uint64_t fingerprint(const Instance& instance);

/// Read-only indexed view over a validated instance: id lookups and
/// adjacency lists with neighbours ordered by vertex id.
class Network {
 public:
  struct Link {
    std::size_t vertex;  // neighbour (head for out-links, tail for in-links)
    std::size_t arc;
  };

  /// Throws ValidationError if the instance is invalid.
  explicit Network(Instance instance);

  const Instance& instance() const noexcept { return *instance_; }
  std::size_t vertex_count() const noexcept { return instance_->vertices.size(); }
  std::size_t arc_count() const noexcept { return instance_->arcs.size(); }

  std::optional<std::size_t> vertex_index(std::string_view id) const;
  std::optional<std::size_t> arc_index(std::size_t tail, std::size_t head) const;

  std::size_t arc_tail(std::size_t arc) const noexcept { return arc_tail_[arc]; }
  std::size_t arc_head(std::size_t arc) const noexcept { return arc_head_[arc]; }

  /// Position of the vertex id in ascending string order.
  std::size_t id_rank(std::size_t vertex) const noexcept { return rank_[vertex]; }

  const std::vector<Link>& out_links(std::size_t vertex) const noexcept { return out_[vertex]; }
  const std::vector<Link>& in_links(std::size_t vertex) const noexcept { return in_[vertex]; }

  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  std::shared_ptr<const Instance> instance_;
  std::unordered_map<std::string, std::size_t> vertex_by_id_;
  std::unordered_map<std::uint64_t, std::size_t> arc_by_pair_;
  std::vector<std::size_t> arc_tail_;
  std::vector<std::size_t> arc_head_;
  std::vector<std::size_t> rank_;
  std::vector<std::vector<Link>> out_;
  std::vector<std::vector<Link>> in_;
  std::uint64_t fingerprint_ = 0;
};

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 2000.0;
  double max_y = 2000.0;
};

/// Synthetic instance recipe: random points, Euclidean walking times,
/// capacities from a safety distance.
struct GeneratorConfig {
  std::size_t n_vertices = 50;
  double arc_density = 1.0;
  std::size_t n_od_pairs = 25;
  double safety_distance = 2.0;  // meters between walkers
  double walking_speed = 1.4;    // m/s
  double node_cap_fraction = 0.5;   // of total entering-arc capacity
  std::pair<double, double> node_time_window{1.0, 10.0};  // seconds
  double demand_fraction = 0.3;  // of the origin's leaving-arc capacity
  BoundingBox bbox;
  std::uint64_t seed = 1;
  std::string name;  // defaults to "synthetic-n<N>-s<seed>"
};

/// Deterministic in (config, seed). Throws ConfigError on invalid or
/// infeasible configurations.
Instance generate_instance(const GeneratorConfig& config);

}  // namespace gapr
