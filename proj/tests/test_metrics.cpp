#include <gtest/gtest.h>

#include "gapr/metrics.hpp"
#include "support/fixtures.hpp"

using namespace gapr;

namespace {

double lambda_sum(const CongestionDistribution& d) { return d.lambda_zero + d.lambda_mid + d.lambda_high; }

}  // namespace

TEST(Metrics, DiamondCongestionOnlyVersusEquilibrium) {
  const Network net(testkit::diamond());
  const auto ue = user_equilibrium(net);
  const auto a = solve_assignment(net, {0.10, 0.0});
  const auto stats = network_stats(a, ue, net);
  // UE: both top arcs congested, 1 s each, 15 walkers each.
  EXPECT_DOUBLE_EQ(stats.baseline_totals.congested_arc_time, 30.0);
  ASSERT_TRUE(stats.Sigma);
  EXPECT_NEAR(*stats.Sigma, -100.0, 1e-6);
  EXPECT_FALSE(stats.Delta);  // no congested vertex at UE
  ASSERT_TRUE(stats.T);
  EXPECT_NEAR(*stats.T, 100.0 * (31.0 - 30.0) / 30.0, 1e-9);

  const auto ux = user_experience(a, *a.path_sets);
  EXPECT_NEAR(ux.u_bar_pct, 100.0 / 30.0, 1e-6);
  EXPECT_NEAR(ux.unfairness[0][1], 0.1, 1e-12);
}

TEST(Metrics, DiamondWalkingTimeOnlyDistribution) {
  const Network net(testkit::diamond());
  const auto a = solve_assignment(net, {0.10, 1.0});
  const auto d = congestion_distribution(a, net);
  EXPECT_NEAR(d.sigma_bar, 0.25, 1e-12);  // (0.5 + 0.5 + 0 + 0) / 4
  EXPECT_EQ(d.delta_bar, 0.0);
  EXPECT_DOUBLE_EQ(d.lambda_zero, 75.0);
  EXPECT_DOUBLE_EQ(d.lambda_mid, 0.0);
  EXPECT_DOUBLE_EQ(d.lambda_high, 25.0);
}

TEST(Metrics, QuarterRatioIsHigh) {
  auto inst = testkit::diamond();
  inst.arcs[0].cap = 12.0;
  inst.arcs[1].cap = 12.0;
  const Network net(inst);
  const auto d = congestion_distribution(user_equilibrium(net), net);
  EXPECT_DOUBLE_EQ(d.lambda_high, 25.0);
  EXPECT_DOUBLE_EQ(d.lambda_mid, 0.0);

  inst.arcs[0].cap = 12.5;
  const Network net2(inst);
  const auto d2 = congestion_distribution(user_equilibrium(net2), net2);
  EXPECT_DOUBLE_EQ(d2.lambda_mid, 12.5);
  EXPECT_DOUBLE_EQ(d2.lambda_high, 12.5);
}

TEST(Metrics, SelfComparisonIsZero) {
  const Network net(testkit::diamond());
  const auto ue = user_equilibrium(net);
  const auto r = compute_stats(ue, ue, net);
  EXPECT_EQ(r.T, 0.0);
  EXPECT_EQ(r.Sigma, 0.0);
  EXPECT_FALSE(r.Delta);
  EXPECT_EQ(r.u_bar, 0.0);
  EXPECT_EQ(r.phi, 0.0);
  EXPECT_EQ(r.alpha, 1.0);
  EXPECT_FALSE(r.truncated);
}

TEST(Metrics, SevenPercentDetour) {
  // Single OD forced onto a path 7% longer than the shortest.
  Instance inst;
  inst.name = "detour";
  for (const char* id : {"O", "M", "D"}) inst.vertices.push_back({id, 100.0, 0.0});
  inst.arcs = {{"O", "D", 1.0, 100.0, std::nullopt},
               {"O", "M", 50.0, 50.0, std::nullopt},
               {"M", "D", 50.0, 57.0, std::nullopt}};
  inst.od_pairs = {{"c", "O", "D", 20.0}};
  const Network net(inst);
  auto a = solve_assignment(net, {0.10, 0.0});
  ASSERT_EQ(a.path_flows[0].size(), 2u);
  EXPECT_NEAR(a.path_flows[0][0], 1.0, 1e-9);  // direct arc filled to capacity
  EXPECT_NEAR(user_experience(a, *a.path_sets).u_bar_pct, 7.0 * 19.0 / 20.0, 1e-9);
  a.path_flows[0] = {0.0, 20.0};
  EXPECT_NEAR(user_experience(a, *a.path_sets).u_bar_pct, 7.0, 1e-9);
}

TEST(Metrics, CongestedVertexTime) {
  auto inst = testkit::diamond();
  inst.vertices[3].cap = 12.0;  // D
  inst.vertices[3].traverse_time = 2.0;
  const Network net(inst);
  const auto ue = user_equilibrium(net);
  const auto totals = network_totals(ue, net);
  EXPECT_DOUBLE_EQ(totals.congested_node_time, 2.0 * 15.0);
  EXPECT_DOUBLE_EQ(totals.total_time, 15.0 * 4.0);
  const auto r = compute_stats(ue, ue, net);
  EXPECT_EQ(r.Delta, 0.0);
  EXPECT_NEAR(r.delta_bar, 3.0 / 12.0 / 4.0, 1e-15);
}

TEST(Metrics, PartitionAndPurityOnGenerated) {
  GeneratorConfig c;
  c.n_vertices = 12;
  c.arc_density = 0.5;
  c.n_od_pairs = 8;
  c.demand_fraction = 0.2;
  c.seed = 4;
  const Network net(generate_instance(c));
  const auto ue = user_equilibrium(net);
  for (const double alpha : {1.0, 0.5, 0.0}) {
    const auto a = solve_assignment(net, {0.1, alpha});
    const auto d = congestion_distribution(a, net);
    EXPECT_NEAR(lambda_sum(d), 100.0, 1e-9);
    const auto r1 = compute_stats(a, ue, net);
    const auto r2 = compute_stats(a, ue, net);
    EXPECT_EQ(r1, r2);
    ASSERT_TRUE(r1.T);
    EXPECT_GE(*r1.T, -1e-9);
    EXPECT_LE(r1.u_bar, 100.0 * 0.1 + 1e-6);
  }
}

TEST(Metrics, MismatchedInstancesThrow) {
  const Network net(testkit::diamond());
  auto other = testkit::diamond();
  other.arcs[3].walk_time = 1.2;
  const Network net2(other);
  const auto a = user_equilibrium(net);
  const auto b = user_equilibrium(net2);
  EXPECT_THROW(network_stats(a, b, net), MismatchError);
  EXPECT_THROW(congestion_distribution(a, net2), MismatchError);
}
