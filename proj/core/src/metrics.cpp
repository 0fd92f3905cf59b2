#include "gapr/metrics.hpp"

#include <stdexcept>

namespace gapr {
namespace {

enum class Band { kZero, kMid, kHigh };

Band classify(double ratio) {
  if (ratio == 0.0) return Band::kZero;
  return ratio < kHighCongestionRatio ? Band::kMid : Band::kHigh;
}

std::optional<double> percent_change(double value, double base) {
  if (base == 0.0) return std::nullopt;
  return 100.0 * (value - base) / base;
}

void require_same_instance(const Assignment& a, const Network& net) {
  if (a.instance_fingerprint != net.fingerprint() || a.arc_excess.size() != net.arc_count() ||
      a.vertex_excess.size() != net.vertex_count()) {
    throw MismatchError("assignment was computed on a different instance");
  }
}

}  // namespace

CongestionDistribution congestion_distribution(const Assignment& assignment, const Network& net) {
  require_same_instance(assignment, net);
  const auto& inst = net.instance();
  CongestionDistribution out;
  std::size_t counts[3] = {0, 0, 0};
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    const double r = assignment.arc_excess[a] / inst.arcs[a].cap;
    out.sigma_bar += r;
    ++counts[static_cast<int>(classify(r))];
  }
  for (std::size_t v = 0; v < inst.vertices.size(); ++v) {
    const double r = assignment.vertex_excess[v] / inst.vertices[v].cap;
    out.delta_bar += r;
    ++counts[static_cast<int>(classify(r))];
  }
  if (!inst.arcs.empty()) out.sigma_bar /= static_cast<double>(inst.arcs.size());
  if (!inst.vertices.empty()) out.delta_bar /= static_cast<double>(inst.vertices.size());
  const double total = static_cast<double>(inst.arcs.size() + inst.vertices.size());
  if (total > 0.0) {
    out.lambda_zero = 100.0 * static_cast<double>(counts[0]) / total;
    out.lambda_mid = 100.0 * static_cast<double>(counts[1]) / total;
    out.lambda_high = 100.0 * static_cast<double>(counts[2]) / total;
  }
  return out;
}

UserExperience user_experience(const Assignment& assignment, const PathSets& path_sets) {
  if (assignment.path_flows.size() != path_sets.size()) {
    throw MismatchError("path sets do not match the assignment");
  }
  UserExperience out;
  double weighted = 0.0;
  double demand = 0.0;
  out.unfairness.resize(path_sets.size());
  for (std::size_t c = 0; c < path_sets.size(); ++c) {
    const auto& set = path_sets[c];
    if (assignment.path_flows[c].size() != set.paths.size()) {
      throw MismatchError("path sets do not match the assignment");
    }
    for (std::size_t k = 0; k < set.paths.size(); ++k) {
      const double u = (set.paths[k].time - set.shortest_time) / set.shortest_time;
      out.unfairness[c].push_back(u);
      weighted += assignment.path_flows[c][k] * u;
      demand += assignment.path_flows[c][k];
    }
  }
  // Routed flow equals total demand up to solver tolerance.
  out.u_bar_pct = demand > 0.0 ? 100.0 * weighted / demand : 0.0;
  return out;
}

NetworkTotals network_totals(const Assignment& assignment, const Network& net) {
  require_same_instance(assignment, net);
  const auto& inst = net.instance();
  NetworkTotals out;
  const auto& sets = *assignment.path_sets;
  for (std::size_t c = 0; c < sets.size(); ++c) {
    for (std::size_t k = 0; k < sets[c].paths.size(); ++k) {
      out.total_time += sets[c].paths[k].time * assignment.path_flows[c][k];
    }
  }
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    if (assignment.arc_excess[a] > 0.0) out.congested_arc_time += inst.arcs[a].walk_time * assignment.arc_flows[a];
  }
  for (std::size_t v = 0; v < inst.vertices.size(); ++v) {
    if (assignment.vertex_excess[v] > 0.0) {
      out.congested_node_time += inst.vertices[v].traverse_time * assignment.vertex_inflows[v];
    }
  }
  return out;
}

NetworkStats network_stats(const Assignment& assignment, const Assignment& baseline, const Network& net) {
  if (assignment.instance_fingerprint != baseline.instance_fingerprint) {
    throw MismatchError("assignment and baseline describe different instances");
  }
  NetworkStats out;
  out.totals = network_totals(assignment, net);
  out.baseline_totals = network_totals(baseline, net);
  out.T = percent_change(out.totals.total_time, out.baseline_totals.total_time);
  out.Sigma = percent_change(out.totals.congested_arc_time, out.baseline_totals.congested_arc_time);
  out.Delta = percent_change(out.totals.congested_node_time, out.baseline_totals.congested_node_time);
  return out;
}

StatsRecord compute_stats(const Assignment& assignment, const Assignment& baseline, const Network& net) {
  const auto congestion = congestion_distribution(assignment, net);
  const auto experience = user_experience(assignment, *assignment.path_sets);
  const auto stats = network_stats(assignment, baseline, net);
  StatsRecord r;
  r.phi = assignment.params.phi;
  r.alpha = assignment.params.alpha;
  r.sigma_bar = congestion.sigma_bar;
  r.delta_bar = congestion.delta_bar;
  r.lambda_zero = congestion.lambda_zero;
  r.lambda_mid = congestion.lambda_mid;
  r.lambda_high = congestion.lambda_high;
  r.u_bar = experience.u_bar_pct;
  r.total_time = stats.totals.total_time;
  r.T = stats.T;
  r.Sigma = stats.Sigma;
  r.Delta = stats.Delta;
  r.truncated = assignment.truncated();
  return r;
}

}  // namespace gapr
