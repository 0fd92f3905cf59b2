#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "gapr/netmodel.hpp"

namespace gapr {
namespace {

// Distributions in <random> are implementation-defined; these helpers keep
// generated instances identical across standard libraries.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  std::size_t below(std::size_t n) {
    // Rejection sampling, no modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return static_cast<std::size_t>(r % n);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::string padded(std::string_view prefix, std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

void check_config(const GeneratorConfig& c) {
  const auto fraction = [](double f) { return f > 0.0 && f <= 1.0; };
  if (c.n_vertices < 2) throw ConfigError("n_vertices must be at least 2");
  if (!fraction(c.arc_density)) throw ConfigError("arc_density must lie in (0,1]");
  if (c.n_od_pairs == 0) throw ConfigError("n_od_pairs must be positive");
  if (c.n_od_pairs > c.n_vertices * (c.n_vertices - 1)) {
    throw ConfigError("n_od_pairs exceeds the number of ordered vertex pairs");
  }
  if (!(c.safety_distance > 0.0)) throw ConfigError("safety_distance must be > 0");
  if (!(c.walking_speed > 0.0)) throw ConfigError("walking_speed must be > 0");
  if (!fraction(c.node_cap_fraction)) throw ConfigError("node_cap_fraction must lie in (0,1]");
  if (!fraction(c.demand_fraction)) throw ConfigError("demand_fraction must lie in (0,1]");
  const auto [lo, hi] = c.node_time_window;
  if (!(lo >= 0.0) || !(lo <= hi)) throw ConfigError("node_time_window must satisfy 0 <= low <= high");
  if (!(c.bbox.max_x > c.bbox.min_x) || !(c.bbox.max_y > c.bbox.min_y)) {
    throw ConfigError("bbox must have positive extent");
  }
}

}  // namespace

Instance generate_instance(const GeneratorConfig& config) {
  check_config(config);
  const std::size_t n = config.n_vertices;
  Stream rng(config.seed);

  Instance inst;
  inst.name = config.name.empty()
                  ? "synthetic-n" + std::to_string(n) + "-s" + std::to_string(config.seed)
                  : config.name;

  const std::size_t width = std::to_string(n - 1).size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = rng.uniform(config.bbox.min_x, config.bbox.max_x);
    ys[i] = rng.uniform(config.bbox.min_y, config.bbox.max_y);
  }

  // Backbone: a random Hamiltonian cycle makes the digraph strongly connected.
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  rng.shuffle(perm);
  std::vector<char> present(n * n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t t = perm[i], h = perm[(i + 1) % n];
    present[t * n + h] = 1;
    pairs.emplace_back(t, h);
  }

  const std::size_t all_pairs = n * (n - 1);
  const auto target = std::min<std::size_t>(
      all_pairs,
      std::max<std::size_t>(pairs.size(),
                            static_cast<std::size_t>(std::ceil(config.arc_density * all_pairs - 1e-9))));
  if (target > pairs.size()) {
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    candidates.reserve(all_pairs - pairs.size());
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t h = 0; h < n; ++h)
        if (t != h && !present[t * n + h]) candidates.emplace_back(t, h);
    rng.shuffle(candidates);
    candidates.resize(target - pairs.size());
    pairs.insert(pairs.end(), candidates.begin(), candidates.end());
  }
  std::sort(pairs.begin(), pairs.end());

  std::vector<double> in_cap(n, 0.0), out_cap(n, 0.0);
  inst.arcs.reserve(pairs.size());
  for (const auto& [t, h] : pairs) {
    const double length = std::max(std::hypot(xs[t] - xs[h], ys[t] - ys[h]), 1e-6);
    Arc arc;
    arc.tail = padded("v", t, width);
    arc.head = padded("v", h, width);
    arc.length = length;
    arc.walk_time = length / config.walking_speed;
    arc.cap = length / config.safety_distance;
    in_cap[h] += arc.cap;
    out_cap[t] += arc.cap;
    inst.arcs.push_back(std::move(arc));
  }

  const auto [t_lo, t_hi] = config.node_time_window;
  inst.vertices.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    inst.vertices.push_back({padded("v", i, width), config.node_cap_fraction * in_cap[i],
                             rng.uniform(t_lo, t_hi)});
  }

  std::vector<std::pair<std::size_t, std::size_t>> od_candidates;
  od_candidates.reserve(all_pairs);
  for (std::size_t o = 0; o < n; ++o)
    for (std::size_t d = 0; d < n; ++d)
      if (o != d) od_candidates.emplace_back(o, d);
  rng.shuffle(od_candidates);
  const std::size_t od_width = std::to_string(config.n_od_pairs - 1).size();
  for (std::size_t k = 0; k < config.n_od_pairs; ++k) {
    const auto [o, d] = od_candidates[k];
    inst.od_pairs.push_back({padded("od", k, od_width), padded("v", o, width), padded("v", d, width),
                             config.demand_fraction * out_cap[o]});
  }
  return inst;
}

}  // namespace gapr
