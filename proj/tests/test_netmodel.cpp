#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "gapr/netmodel.hpp"
#include "support/fixtures.hpp"

using namespace gapr;

namespace {

bool has_rule(const std::vector<Violation>& vs, const std::string& entity, const std::string& rule) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.entity == entity && v.rule == rule; });
}

std::vector<Violation> load_violations(const std::string& doc) {
  try {
    load_instance(doc);
  } catch (const ValidationError& e) {
    return e.violations();
  }
  return {};
}

}  // namespace

TEST(Instance, DiamondIsValid) { EXPECT_TRUE(validate(testkit::diamond()).empty()); }

TEST(Instance, RoundTripPreservesEverything) {
  auto inst = testkit::diamond();
  inst.arcs[0].length = 12.5;
  const Instance back = load_instance(save_instance(inst));
  EXPECT_EQ(back, inst);
  EXPECT_EQ(save_instance(back), save_instance(inst));
}

TEST(Instance, RoundTripGenerated) {
  GeneratorConfig c;
  c.n_vertices = 12;
  c.arc_density = 0.4;
  c.n_od_pairs = 5;
  c.seed = 77;
  const Instance inst = generate_instance(c);
  std::stringstream buf;
  save_instance(inst, buf);
  EXPECT_EQ(load_instance(buf), inst);
}

TEST(Instance, MalformedJsonIsParseError) {
  EXPECT_THROW(load_instance(std::string_view("{\"name\": ")), ParseError);
  EXPECT_THROW(load_instance(std::string_view("[]")), ParseError);
}

TEST(Instance, UnknownFieldIsParseError) {
  auto doc = save_instance(testkit::diamond());
  doc.replace(doc.find("\"name\""), 6, "\"nmae\"");
  EXPECT_THROW(load_instance(doc), ParseError);
}

TEST(Instance, WrongTypeIsParseError) {
  auto doc = save_instance(testkit::diamond());
  const auto pos = doc.find("15");
  doc.replace(pos, 2, "\"15\"");
  EXPECT_THROW(load_instance(doc), ParseError);
}

TEST(Instance, MissingFileIsParseError) {
  EXPECT_THROW(load_instance_file("/nonexistent/instance.json"), ParseError);
}

TEST(Validation, ReportsEveryViolation) {
  auto inst = testkit::diamond();
  inst.arcs.push_back({"O", "A", 3.0, 1.0, std::nullopt});  // duplicate
  inst.arcs.push_back({"O", "Z", 3.0, 1.0, std::nullopt});  // dangling
  inst.od_pairs.push_back({"c2", "A", "A", 1.0});
  inst.od_pairs.push_back({"c3", "A", "D", 0.0});
  inst.vertices[1].cap = -1.0;
  inst.vertices[2].traverse_time = -0.5;
  const auto vs = validate(inst);
  EXPECT_TRUE(has_rule(vs, "arc (O,A)", "duplicate-arc"));
  EXPECT_TRUE(has_rule(vs, "arc (O,Z)", "dangling-reference"));
  EXPECT_TRUE(has_rule(vs, "od c2", "origin-equals-destination"));
  EXPECT_TRUE(has_rule(vs, "od c3", "nonpositive-demand"));
  EXPECT_TRUE(has_rule(vs, "vertex A", "nonpositive-cap"));
  EXPECT_TRUE(has_rule(vs, "vertex B", "negative-traverse_time"));
  EXPECT_EQ(vs.size(), 6u);
}

TEST(Validation, LoaderThrowsWithViolations) {
  auto inst = testkit::diamond();
  inst.arcs[1].walk_time = 0.0;
  inst.od_pairs[0].destination = "Q";
  const auto vs = load_violations(save_instance(inst));
  EXPECT_TRUE(has_rule(vs, "arc (A,D)", "nonpositive-walk_time"));
  EXPECT_TRUE(has_rule(vs, "od c1", "dangling-reference"));
}

TEST(Validation, DuplicateIdsAndSelfLoops) {
  auto inst = testkit::diamond();
  inst.vertices.push_back({"A", 5.0, 0.0});
  inst.arcs.push_back({"B", "B", 1.0, 1.0, std::nullopt});
  inst.od_pairs.push_back({"c1", "A", "D", 1.0});
  const auto vs = validate(inst);
  EXPECT_TRUE(has_rule(vs, "vertex A", "duplicate-vertex"));
  EXPECT_TRUE(has_rule(vs, "arc (B,B)", "self-loop"));
  EXPECT_TRUE(has_rule(vs, "od c1", "duplicate-od"));
}

TEST(Network, RejectsInvalidInstance) {
  auto inst = testkit::diamond();
  inst.arcs[0].cap = 0.0;
  EXPECT_THROW(Network{inst}, ValidationError);
}

TEST(Network, LookupsAndOrderedAdjacency) {
  Instance inst = testkit::diamond();
  // Declare O's arcs in reverse id order; adjacency must still be sorted.
  std::swap(inst.arcs[0], inst.arcs[2]);
  const Network net(inst);
  const auto o = *net.vertex_index("O");
  const auto a = *net.vertex_index("A");
  const auto b = *net.vertex_index("B");
  EXPECT_FALSE(net.vertex_index("nope"));
  ASSERT_EQ(net.out_links(o).size(), 2u);
  EXPECT_EQ(net.out_links(o)[0].vertex, a);
  EXPECT_EQ(net.out_links(o)[1].vertex, b);
  const auto arc = *net.arc_index(o, a);
  EXPECT_EQ(net.arc_tail(arc), o);
  EXPECT_EQ(net.arc_head(arc), a);
  EXPECT_FALSE(net.arc_index(a, o));
  EXPECT_EQ(net.in_links(*net.vertex_index("D")).size(), 2u);
}

TEST(Network, FingerprintTracksContent) {
  const auto inst = testkit::diamond();
  auto other = inst;
  EXPECT_EQ(fingerprint(inst), fingerprint(other));
  other.od_pairs[0].demand = 15.000001;
  EXPECT_NE(fingerprint(inst), fingerprint(other));
  EXPECT_EQ(Network(inst).fingerprint(), fingerprint(inst));
}

TEST(Generator, SameSeedSameInstance) {
  const auto c = testkit::full_scale_config(5);
  EXPECT_EQ(generate_instance(c), generate_instance(c));
  auto c2 = c;
  c2.seed = 6;
  EXPECT_NE(generate_instance(c), generate_instance(c2));
}

TEST(Generator, CompleteDigraphAttributes) {
  const auto c = testkit::full_scale_config(11);
  const Instance inst = generate_instance(c);
  ASSERT_TRUE(validate(inst).empty());
  EXPECT_EQ(inst.vertices.size(), 50u);
  EXPECT_EQ(inst.arcs.size(), 50u * 49u);
  EXPECT_EQ(inst.od_pairs.size(), 25u);

  std::map<std::string, double> in_cap, out_cap;
  for (const auto& a : inst.arcs) {
    ASSERT_TRUE(a.length);
    EXPECT_DOUBLE_EQ(a.cap, *a.length / c.safety_distance);
    EXPECT_DOUBLE_EQ(a.walk_time, *a.length / c.walking_speed);
    EXPECT_LE(*a.length, std::hypot(2000.0, 2000.0));
    in_cap[a.head] += a.cap;
    out_cap[a.tail] += a.cap;
  }
  for (const auto& v : inst.vertices) {
    EXPECT_NEAR(v.cap, c.node_cap_fraction * in_cap[v.id], 1e-9 * v.cap);
    EXPECT_GE(v.traverse_time, 1.0);
    EXPECT_LE(v.traverse_time, 10.0);
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& od : inst.od_pairs) {
    EXPECT_NE(od.origin, od.destination);
    EXPECT_TRUE(seen.insert({od.origin, od.destination}).second);
    EXPECT_NEAR(od.demand, c.demand_fraction * out_cap[od.origin], 1e-9 * od.demand);
  }
}

TEST(Generator, SparseGraphIsStronglyConnected) {
  GeneratorConfig c;
  c.n_vertices = 30;
  c.arc_density = 0.01;  // fewer arcs than the backbone needs
  c.n_od_pairs = 10;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    c.seed = seed;
    const Network net(generate_instance(c));
    EXPECT_EQ(net.arc_count(), 30u);
    for (std::size_t s = 0; s < net.vertex_count(); ++s) {
      std::vector<char> seen(net.vertex_count(), 0);
      std::queue<std::size_t> q;
      q.push(s);
      seen[s] = 1;
      while (!q.empty()) {
        const auto v = q.front();
        q.pop();
        for (const auto& l : net.out_links(v)) {
          if (!seen[l.vertex]) {
            seen[l.vertex] = 1;
            q.push(l.vertex);
          }
        }
      }
      EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), 30);
    }
  }
}

TEST(Generator, DensityRoundsUp) {
  GeneratorConfig c;
  c.n_vertices = 10;
  c.arc_density = 0.5;
  c.n_od_pairs = 3;
  EXPECT_EQ(generate_instance(c).arcs.size(), 45u);
  c.arc_density = 0.501;
  EXPECT_EQ(generate_instance(c).arcs.size(), 46u);
}

TEST(Generator, RejectsBadConfig) {
  GeneratorConfig c;
  c.n_vertices = 1;
  EXPECT_THROW(generate_instance(c), ConfigError);
  c = {};
  c.arc_density = 1.5;
  EXPECT_THROW(generate_instance(c), ConfigError);
  c = {};
  c.n_vertices = 3;
  c.n_od_pairs = 7;
  EXPECT_THROW(generate_instance(c), ConfigError);
  c = {};
  c.node_time_window = {5.0, 1.0};
  EXPECT_THROW(generate_instance(c), ConfigError);
  c = {};
  c.demand_fraction = 0.0;
  EXPECT_THROW(generate_instance(c), ConfigError);
}
