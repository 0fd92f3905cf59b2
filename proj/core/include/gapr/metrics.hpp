#pragma once

// Congestion, fairness and network statistics of a routed assignment,
// relative to the user-equilibrium baseline where applicable.

#include <optional>
#include <vector>

#include "gapr/assignment.hpp"

namespace gapr {

/// Relative excess ratios at or above this value fall in the "high" class.
inline constexpr double kHighCongestionRatio = 0.25;

struct CongestionDistribution {
  double sigma_bar = 0.0;    // mean sigma/cap over arcs
  double delta_bar = 0.0;    // mean delta/cap over vertices
  double lambda_zero = 0.0;  // % of arcs+vertices with ratio == 0
  double lambda_mid = 0.0;   // % with 0 < ratio < 0.25
  double lambda_high = 0.0;  // % with ratio >= 0.25
};

CongestionDistribution congestion_distribution(const Assignment& assignment, const Network& net);

struct UserExperience {
  std::vector<std::vector<double>> unfairness;  // U per [od][path], as a fraction
  double u_bar_pct = 0.0;  // demand-weighted mean, percent
};

UserExperience user_experience(const Assignment& assignment, const PathSets& path_sets);

/// Totals behind the network statistics.
struct NetworkTotals {
  double total_time = 0.0;           // sum t_ck y_ck
  double congested_arc_time = 0.0;   // sum over arcs with sigma > 0 of t_ij x_ij
  double congested_node_time = 0.0;  // sum over vertices with delta > 0 of t_h z_h
};

NetworkTotals network_totals(const Assignment& assignment, const Network& net);

struct NetworkStats {
  // Percent change versus the baseline; empty when the baseline total is 0.
  std::optional<double> T;
  std::optional<double> Sigma;
  std::optional<double> Delta;
  NetworkTotals totals;
  NetworkTotals baseline_totals;
};

/// Throws MismatchError if the two assignments or the network describe
/// different instances.
NetworkStats network_stats(const Assignment& assignment, const Assignment& baseline, const Network& net);

struct StatsRecord {
  double phi = 0.0;
  double alpha = 0.0;
  double sigma_bar = 0.0;
  double delta_bar = 0.0;
  double lambda_zero = 0.0;
  double lambda_mid = 0.0;
  double lambda_high = 0.0;
  double u_bar = 0.0;       // percent
  double total_time = 0.0;  // seconds
  std::optional<double> T;
  std::optional<double> Sigma;
  std::optional<double> Delta;
  bool truncated = false;

  bool operator==(const StatsRecord&) const = default;
};

StatsRecord compute_stats(const Assignment& assignment, const Assignment& baseline, const Network& net);

}  // namespace gapr
