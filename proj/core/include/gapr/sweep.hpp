#pragma once

// (phi, alpha) experiment grid: one user-equilibrium baseline, path sets
// computed once per phi, one routing LP per cell, statistics per cell.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "gapr/assignment.hpp"
#include "gapr/metrics.hpp"

namespace gapr {

struct SweepConfig {
  std::vector<double> phi_grid{0.0, 0.01, 0.05, 0.10, 0.15, 0.20};
  std::vector<double> alpha_grid{1.0, 0.9, 0.7, 0.5, 0.3, 0.1, 0.0};
  std::size_t max_paths = kDefaultMaxPaths;
  std::size_t parallel_cells = 1;
};

/// Throws ConfigError on empty grids, duplicates, out-of-range values or
/// zero max_paths / parallel_cells. Grids may be given in any order.
void check_sweep_config(const SweepConfig& config);

struct SweepRecord {
  StatsRecord stats;
  double tau = 0.0;
  double eta = 0.0;
  double objective = 0.0;  // alpha * tau + (1 - alpha) * eta
  double wall_seconds = 0.0;
};

struct SweepReport {
  std::string instance_name;
  std::vector<SweepRecord> records;  // ordered by (phi asc, alpha desc)
  SweepRecord ue_record;             // phi = 0, alpha = 1
  std::size_t pathgen_runs = 0;      // one per distinct phi > 0
  std::size_t lp_solves = 0;
};

/// Runs the grid. phi = 0 admits only the shortest path, so every alpha
/// collapses onto the user equilibrium: a phi = 0 entry contributes the
/// single UE cell (alpha = 1). Output is independent of parallel_cells.
/// A failing cell aborts with an Error naming its (phi, alpha).
SweepReport run_sweep(const Network& net, const SweepConfig& config);

struct ParetoPoint {
  double tau = 0.0;
  double eta = 0.0;
  double alpha = 0.0;  // weight of the record that produced the point
};

/// Nondominated (tau, eta) points among the records at `phi`, minimizing
/// both, sorted by tau. Throws ConfigError if phi is not in the report.
std::vector<ParetoPoint> pareto_extract(const SweepReport& report, double phi);

/// Nondominated subset of arbitrary points (same rules as pareto_extract).
std::vector<ParetoPoint> nondominated(std::vector<ParetoPoint> points);

inline constexpr const char* kCsvHeader =
    "instance,phi,alpha,tau,eta,objective,total_time,T_pct,Sigma_pct,Delta_pct,"
    "sigma_bar,delta_bar,lambda_zero,lambda_mid,lambda_high,u_bar_pct,truncated,wall_seconds";

struct CsvOptions {
  bool include_timings = true;  // false leaves wall_seconds empty for byte-stable output
};

/// Header plus one row per record; 9 significant digits, '.' decimal point,
/// absent statistics as empty fields. Returns the number of data rows.
/// Throws Error if the stream fails.
std::size_t emit_csv(const SweepReport& report, std::ostream& out, const CsvOptions& options = {});

}  // namespace gapr
