#include "gapr/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gapr {
namespace {

double excess_over(double flow, double cap) {
  const double over = flow - cap;
  return over > kExcessTolerance * cap ? over : 0.0;
}

}  // namespace

void check_params(const ScenarioParams& params) {
  if (!std::isfinite(params.phi) || params.phi < 0.0) throw std::invalid_argument("phi must be >= 0");
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  if (params.max_paths == 0) throw std::invalid_argument("max_paths must be positive");
}

bool Assignment::truncated() const {
  return path_sets && std::any_of(path_sets->begin(), path_sets->end(),
                                  [](const ODPathSet& s) { return s.truncated; });
}

RoutingLp build_gacpr_lp(const Network& net, const PathSets& path_sets, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  const auto& inst = net.instance();
  if (path_sets.size() != inst.od_pairs.size()) {
    throw std::invalid_argument("one path set per OD pair is required");
  }
  for (std::size_t c = 0; c < path_sets.size(); ++c) {
    if (path_sets[c].od != c) throw std::invalid_argument("path sets must follow instance OD order");
    if (path_sets[c].paths.empty()) {
      throw NoEligiblePathsError("no eligible paths for OD pair " + inst.od_pairs[c].id);
    }
  }

  RoutingLp out;
  auto& lp = out.problem;
  auto& layout = out.layout;
  const double beta = 1.0 - alpha;

  // Path-flow columns and the arc/vertex incidence of each.
  std::vector<std::vector<std::size_t>> arc_users(net.arc_count());
  std::vector<std::vector<std::size_t>> vertex_users(net.vertex_count());
  layout.path_column_start.push_back(0);
  for (std::size_t c = 0; c < path_sets.size(); ++c) {
    const auto& set = path_sets[c];
    for (std::size_t k = 0; k < set.paths.size(); ++k) {
      const auto& path = set.paths[k];
      const std::size_t col = lp.add_variable(
          "y[" + inst.od_pairs[c].id + "," + std::to_string(k) + "]",
          alpha * (path.time / set.shortest_time));
      for (const auto a : path.arcs) arc_users[a].push_back(col);
      // Every vertex after the origin is entered once.
      for (std::size_t i = 1; i < path.vertices.size(); ++i) vertex_users[path.vertices[i]].push_back(col);
    }
    layout.path_column_start.push_back(lp.n_vars);
  }

  layout.arc_excess_begin = lp.n_vars;
  for (const auto& arc : inst.arcs) {
    lp.add_variable("sigma[" + arc.tail + "," + arc.head + "]", beta * (arc.walk_time / arc.cap));
  }
  layout.vertex_excess_begin = lp.n_vars;
  for (const auto& v : inst.vertices) {
    lp.add_variable("delta[" + v.id + "]", beta * (v.traverse_time / v.cap));
  }

  layout.demand_row_begin = lp.rows.size();
  for (std::size_t c = 0; c < path_sets.size(); ++c) {
    std::vector<LpTerm> terms;
    for (std::size_t col = layout.path_column_start[c]; col < layout.path_column_start[c + 1]; ++col) {
      terms.push_back({col, 1.0});
    }
    lp.add_row(std::move(terms), Relation::kEqual, inst.od_pairs[c].demand,
               "demand[" + inst.od_pairs[c].id + "]");
  }
  layout.arc_row_begin = lp.rows.size();
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    std::vector<LpTerm> terms;
    terms.reserve(arc_users[a].size() + 1);
    for (const auto col : arc_users[a]) terms.push_back({col, 1.0});
    terms.push_back({layout.arc_excess_column(a), -1.0});
    lp.add_row(std::move(terms), Relation::kLessEqual, inst.arcs[a].cap,
               "arc[" + inst.arcs[a].tail + "," + inst.arcs[a].head + "]");
  }
  layout.vertex_row_begin = lp.rows.size();
  for (std::size_t v = 0; v < inst.vertices.size(); ++v) {
    std::vector<LpTerm> terms;
    terms.reserve(vertex_users[v].size() + 1);
    for (const auto col : vertex_users[v]) terms.push_back({col, 1.0});
    terms.push_back({layout.vertex_excess_column(v), -1.0});
    lp.add_row(std::move(terms), Relation::kLessEqual, inst.vertices[v].cap,
               "vertex[" + inst.vertices[v].id + "]");
  }
  return out;
}

FlowEvaluation evaluate_flows(const Network& net, const PathSets& path_sets,
                              const std::vector<std::vector<double>>& path_flows) {
  const auto& inst = net.instance();
  if (path_flows.size() != path_sets.size()) throw std::invalid_argument("flow / path set size mismatch");
  FlowEvaluation ev;
  ev.arc_flows.assign(net.arc_count(), 0.0);
  ev.vertex_inflows.assign(net.vertex_count(), 0.0);
  for (std::size_t c = 0; c < path_sets.size(); ++c) {
    const auto& set = path_sets[c];
    if (path_flows[c].size() != set.paths.size()) throw std::invalid_argument("flow / path count mismatch");
    for (std::size_t k = 0; k < set.paths.size(); ++k) {
      const double y = path_flows[c][k];
      const auto& path = set.paths[k];
      ev.tau += (path.time / set.shortest_time) * y;
      for (const auto a : path.arcs) ev.arc_flows[a] += y;
    }
  }
  // z_h sums the flow of arcs entering h.
  for (std::size_t a = 0; a < net.arc_count(); ++a) ev.vertex_inflows[net.arc_head(a)] += ev.arc_flows[a];

  ev.arc_excess.resize(net.arc_count());
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    ev.arc_excess[a] = excess_over(ev.arc_flows[a], inst.arcs[a].cap);
    ev.eta += (inst.arcs[a].walk_time / inst.arcs[a].cap) * ev.arc_excess[a];
  }
  ev.vertex_excess.resize(net.vertex_count());
  for (std::size_t v = 0; v < net.vertex_count(); ++v) {
    ev.vertex_excess[v] = excess_over(ev.vertex_inflows[v], inst.vertices[v].cap);
    ev.eta += (inst.vertices[v].traverse_time / inst.vertices[v].cap) * ev.vertex_excess[v];
  }
  return ev;
}

Assignment solve_assignment(const Network& net, const ScenarioParams& params,
                            std::shared_ptr<const PathSets> path_sets, const LpSolver& solver) {
  check_params(params);
  if (!path_sets) throw std::invalid_argument("path sets are required");
  for (const auto& s : *path_sets) {
    if (s.phi != params.phi) throw std::invalid_argument("path sets were built for a different phi");
  }
  const RoutingLp routing = build_gacpr_lp(net, *path_sets, params.alpha);
  const LpSolution sol = solver.solve(routing.problem);
  if (sol.status != LpStatus::kOptimal) {
    throw SolveError("routing LP reported " + std::string(to_string(sol.status)) +
                     " (internal error: valid instances always admit a bounded optimum)");
  }

  Assignment out;
  out.params = params;
  out.instance_fingerprint = net.fingerprint();
  out.path_sets = path_sets;
  out.path_flows.resize(path_sets->size());
  for (std::size_t c = 0; c < path_sets->size(); ++c) {
    const std::size_t count = (*path_sets)[c].paths.size();
    out.path_flows[c].resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      out.path_flows[c][k] = std::max(0.0, sol.primal[routing.layout.path_column(c, k)]);
    }
  }
  out.lp_arc_excess.resize(net.arc_count());
  for (std::size_t a = 0; a < net.arc_count(); ++a) {
    out.lp_arc_excess[a] = sol.primal[routing.layout.arc_excess_column(a)];
  }
  out.lp_vertex_excess.resize(net.vertex_count());
  for (std::size_t v = 0; v < net.vertex_count(); ++v) {
    out.lp_vertex_excess[v] = sol.primal[routing.layout.vertex_excess_column(v)];
  }

  FlowEvaluation ev = evaluate_flows(net, *path_sets, out.path_flows);
  out.arc_flows = std::move(ev.arc_flows);
  out.vertex_inflows = std::move(ev.vertex_inflows);
  out.arc_excess = std::move(ev.arc_excess);
  out.vertex_excess = std::move(ev.vertex_excess);
  out.tau = ev.tau;
  out.eta = ev.eta;
  out.scalarized_objective = params.alpha * ev.tau + (1.0 - params.alpha) * ev.eta;
  out.lp_objective = sol.objective_value;
  out.lp_iterations = sol.iterations;
  return out;
}

Assignment solve_assignment(const Network& net, const ScenarioParams& params, const LpSolver& solver) {
  check_params(params);
  auto sets = std::make_shared<const PathSets>(enumerate_all(net, params.phi, params.max_paths));
  return solve_assignment(net, params, std::move(sets), solver);
}

Assignment solve_assignment(const Instance& instance, const ScenarioParams& params) {
  return solve_assignment(Network(instance), params);
}

Assignment user_equilibrium(const Network& net) {
  return solve_assignment(net, ScenarioParams{0.0, 1.0, 1});
}

Assignment user_equilibrium(const Instance& instance) { return user_equilibrium(Network(instance)); }

}  // namespace gapr
