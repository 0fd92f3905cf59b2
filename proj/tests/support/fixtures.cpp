#include "fixtures.hpp"

#include <algorithm>
#include <map>

namespace gapr::testkit {

Instance diamond() {
  Instance inst;
  inst.name = "diamond";
  for (const char* id : {"O", "A", "B", "D"}) inst.vertices.push_back({id, 100.0, 0.0});
  inst.arcs = {
      {"O", "A", 10.0, 1.0, std::nullopt},
      {"A", "D", 10.0, 1.0, std::nullopt},
      {"O", "B", 10.0, 1.1, std::nullopt},
      {"B", "D", 10.0, 1.1, std::nullopt},
  };
  inst.od_pairs = {{"c1", "O", "D", 15.0}};
  return inst;
}

Instance random_small_instance(std::mt19937_64& rng, std::size_t max_vertices) {
  std::uniform_int_distribution<std::size_t> size(2, max_vertices);
  std::uniform_real_distribution<double> walk(1.0, 10.0);
  std::uniform_real_distribution<double> traverse(0.0, 3.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const std::size_t n = size(rng);
  const double density = 0.25 + 0.6 * coin(rng);

  Instance inst;
  inst.name = "random-small";
  for (std::size_t i = 0; i < n; ++i) {
    inst.vertices.push_back({"n" + std::to_string(i), 50.0 + 50.0 * coin(rng), traverse(rng)});
  }
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t h = 0; h < n; ++h) {
      if (t != h && coin(rng) < density) {
        inst.arcs.push_back({inst.vertices[t].id, inst.vertices[h].id, 5.0 + 20.0 * coin(rng), walk(rng),
                             std::nullopt});
      }
    }
  }
  // A chain 0 -> 1 -> ... -> n-1 keeps the OD pair connected.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto& t = inst.vertices[i].id;
    const auto& h = inst.vertices[i + 1].id;
    const bool present = std::any_of(inst.arcs.begin(), inst.arcs.end(),
                                     [&](const Arc& a) { return a.tail == t && a.head == h; });
    if (!present) inst.arcs.push_back({t, h, 5.0 + 20.0 * coin(rng), walk(rng), std::nullopt});
  }
  inst.od_pairs = {{"c", inst.vertices.front().id, inst.vertices.back().id, 10.0 + 20.0 * coin(rng)}};
  return inst;
}

LpProblem random_bounded_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> n_dist(1, 8);
  std::uniform_int_distribution<std::size_t> m_dist(1, 6);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> rel(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::size_t n = n_dist(rng);
  const std::size_t m = m_dist(rng);
  std::vector<double> x0(n);
  for (auto& v : x0) v = unit(rng) < 0.3 ? 0.0 : 3.0 * unit(rng);

  LpProblem lp;
  for (std::size_t j = 0; j < n; ++j) lp.add_variable("x" + std::to_string(j), coef(rng));

  // Bounding row: positive coefficients, so the feasible set is a polytope.
  std::vector<LpTerm> bound;
  double lhs = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = 1.0 + static_cast<double>(std::abs(coef(rng)));
    bound.push_back({j, a});
    lhs += a * x0[j];
  }
  lp.add_row(std::move(bound), Relation::kLessEqual, lhs + 5.0 * unit(rng), "bound");

  for (std::size_t r = 1; r < m; ++r) {
    std::vector<LpTerm> terms;
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = coef(rng);
      if (a == 0.0) continue;
      terms.push_back({j, a});
      ax += a * x0[j];
    }
    const auto relation = static_cast<Relation>(rel(rng));
    double rhs = ax;
    if (relation == Relation::kLessEqual) rhs += unit(rng) < 0.3 ? 0.0 : 2.0 * unit(rng);
    if (relation == Relation::kGreaterEqual) rhs -= unit(rng) < 0.3 ? 0.0 : 2.0 * unit(rng);
    lp.add_row(std::move(terms), relation, rhs, "r" + std::to_string(r));
  }
  return lp;
}

GeneratorConfig full_scale_config(std::uint64_t seed) {
  GeneratorConfig c;
  c.n_vertices = 50;
  c.arc_density = 1.0;
  c.n_od_pairs = 25;
  c.seed = seed;
  return c;
}

std::pair<Instance, double> calibrated_full_scale_instance(std::uint64_t seed, double margin) {
  GeneratorConfig config = full_scale_config(seed);
  // Demand does not influence the topology or capacities, so probe once.
  const Instance probe = generate_instance(config);
  std::map<std::string, double> out_cap;
  std::map<std::pair<std::string, std::string>, double> arc_cap;
  for (const auto& a : probe.arcs) {
    out_cap[a.tail] += a.cap;
    arc_cap[{a.tail, a.head}] = a.cap;
  }
  double fraction = 0.0;
  for (const auto& od : probe.od_pairs) {
    const auto it = arc_cap.find({od.origin, od.destination});
    if (it != arc_cap.end()) fraction = std::max(fraction, it->second / out_cap[od.origin]);
  }
  config.demand_fraction = std::min(1.0, fraction * margin);
  return {generate_instance(config), config.demand_fraction};
}

}  // namespace gapr::testkit
