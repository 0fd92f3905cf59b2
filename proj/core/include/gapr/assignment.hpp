#pragma once

// Weighted-sum routing LP: route every OD demand over its eligible paths,
// trading the relative walking-time objective (tau) against the
// time-weighted capacity excess on arcs and vertices (eta).

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <vector>

#include "gapr/lpsolve.hpp"
#include "gapr/netmodel.hpp"
#include "gapr/pathgen.hpp"

namespace gapr {

struct ScenarioParams {
  double phi = 0.0;    // fairness band
  double alpha = 1.0;  // weight on tau; (1 - alpha) weighs eta
  std::size_t max_paths = kDefaultMaxPaths;
};

/// Throws std::invalid_argument unless 0 <= alpha <= 1, phi >= 0 and
/// max_paths > 0.
void check_params(const ScenarioParams& params);

using PathSets = std::vector<ODPathSet>;

/// Flow above capacity by at most this fraction of the capacity is solver
/// round-off, not congestion: the reported excess is
///   flow - cap  if flow - cap > kExcessTolerance * cap,  else 0.
inline constexpr double kExcessTolerance = 1e-9;

/// Column / row layout of the routing LP. Columns: y per (od, path) in OD
/// order, then one excess column per arc, then one per vertex. Rows: one
/// demand equality per OD, then one excess row per arc, then per vertex.
struct LpLayout {
  std::vector<std::size_t> path_column_start;  // per OD, into the y block; size |C|+1
  std::size_t arc_excess_begin = 0;
  std::size_t vertex_excess_begin = 0;
  std::size_t demand_row_begin = 0;
  std::size_t arc_row_begin = 0;
  std::size_t vertex_row_begin = 0;

  std::size_t path_column(std::size_t od, std::size_t path) const {
    return path_column_start[od] + path;
  }
  std::size_t arc_excess_column(std::size_t arc) const { return arc_excess_begin + arc; }
  std::size_t vertex_excess_column(std::size_t v) const { return vertex_excess_begin + v; }
};

struct RoutingLp {
  LpProblem problem;
  LpLayout layout;
};

/// Builds the scalarized LP. Arc and vertex flows are substituted by their
/// path-flow expressions, so each excess row reads
///   sum_{paths through arc} y - sigma <= cap.
/// Throws NoEligiblePathsError if any OD has an empty path set.
RoutingLp build_gacpr_lp(const Network& net, const PathSets& path_sets, double alpha);

struct Assignment {
  ScenarioParams params;
  std::uint64_t instance_fingerprint = 0;
  std::shared_ptr<const PathSets> path_sets;

  std::vector<std::vector<double>> path_flows;  // [od][path]
  std::vector<double> arc_flows;        // x, per arc
  std::vector<double> vertex_inflows;   // z, per vertex
  std::vector<double> arc_excess;       // x - cap when above tolerance, else 0
  std::vector<double> vertex_excess;    // z - cap when above tolerance, else 0
  std::vector<double> lp_arc_excess;    // raw LP sigma values
  std::vector<double> lp_vertex_excess; // raw LP delta values
  double tau = 0.0;
  double eta = 0.0;
  double scalarized_objective = 0.0;
  double lp_objective = 0.0;
  std::size_t lp_iterations = 0;

  bool truncated() const;
};

/// Solves one (phi, alpha) cell, computing path sets at params.phi.
Assignment solve_assignment(const Network& net, const ScenarioParams& params,
                            const LpSolver& solver = SimplexSolver{});
Assignment solve_assignment(const Instance& instance, const ScenarioParams& params);

/// Same, reusing precomputed path sets (which must match params.phi).
Assignment solve_assignment(const Network& net, const ScenarioParams& params,
                            std::shared_ptr<const PathSets> path_sets,
                            const LpSolver& solver = SimplexSolver{});

/// Every OD's demand on its tie-broken shortest path (phi = 0, alpha = 1).
Assignment user_equilibrium(const Network& net);
Assignment user_equilibrium(const Instance& instance);

/// Objective values recomputed from flows: tau and eta of an arbitrary
/// path-flow vector (excesses as in Assignment).
struct FlowEvaluation {
  std::vector<double> arc_flows;
  std::vector<double> vertex_inflows;
  std::vector<double> arc_excess;
  std::vector<double> vertex_excess;
  double tau = 0.0;
  double eta = 0.0;
};
FlowEvaluation evaluate_flows(const Network& net, const PathSets& path_sets,
                              const std::vector<std::vector<double>>& path_flows);

/// Assignment dump:
/// {"phi", "alpha", "tau", "eta", "objective", "path_flows": [{"od", "path", "flow"}],
///  "arc_excess": [{"tail", "head", "sigma"}], "vertex_excess": [{"id", "delta"}]}
void write_assignment_json(const Network& net, const Assignment& assignment, std::ostream& out);

}  // namespace gapr
