// gapr: generate, validate, solve and sweep pedestrian routing instances.
//
// Exit codes: 0 success, 1 usage / configuration / I/O error,
// 2 parse or validation failure, 3 solve failure.

#include <stdexcept>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gapr/assignment.hpp"
#include "gapr/netmodel.hpp"
#include "gapr/sweep.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitSolve = 3;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

void report_violations(const gapr::ValidationError& e) {
  for (const auto& v : e.violations()) {
    std::cerr << v.entity << ": " << v.message << " [" << v.rule << "]\n";
  }
}

struct GenerateArgs {
  gapr::GeneratorConfig config;
  std::string out;
};

struct SolveArgs {
  std::string instance;
  double phi = 0.0;
  double alpha = 1.0;
  std::size_t max_paths = gapr::kDefaultMaxPaths;
  std::string out;
  std::string mps;
  std::string paths;
};

struct SweepArgs {
  std::string instance;
  gapr::SweepConfig config;
  std::string csv;
  bool no_timings = false;
  bool pareto = false;
};

int run_generate(const GenerateArgs& args) {
  const gapr::Instance inst = gapr::generate_instance(args.config);
  auto out = open_output(args.out);
  gapr::save_instance(inst, out);
  if (!out) throw std::runtime_error("failed writing " + args.out);
  std::cerr << "wrote " << inst.vertices.size() << " vertices, " << inst.arcs.size() << " arcs, "
            << inst.od_pairs.size() << " OD pairs to " << args.out << '\n';
  return 0;
}

int run_validate(const std::string& path) {
  const gapr::Network net(gapr::load_instance_file(path));
  // Reachability is part of validity for routing purposes.
  for (const auto& od : net.instance().od_pairs) gapr::shortest_path(net, od);
  std::cout << path << ": ok (" << net.vertex_count() << " vertices, " << net.arc_count() << " arcs, "
            << net.instance().od_pairs.size() << " OD pairs)\n";
  return 0;
}

int run_solve(const SolveArgs& args) {
  const gapr::Network net(gapr::load_instance_file(args.instance));
  const gapr::ScenarioParams params{args.phi, args.alpha, args.max_paths};
  gapr::check_params(params);
  auto sets = std::make_shared<const gapr::PathSets>(gapr::enumerate_all(net, params.phi, params.max_paths));
  if (!args.paths.empty()) {
    auto out = open_output(args.paths);
    gapr::write_path_sets_jsonl(net, *sets, out);
  }
  if (!args.mps.empty()) {
    auto out = open_output(args.mps);
    gapr::write_mps(gapr::build_gacpr_lp(net, *sets, params.alpha).problem, out, net.instance().name);
  }
  const gapr::Assignment a = gapr::solve_assignment(net, params, sets);
  auto out = open_output(args.out);
  gapr::write_assignment_json(net, a, out);
  std::cerr << "tau=" << a.tau << " eta=" << a.eta << " objective=" << a.scalarized_objective
            << (a.truncated() ? " (path sets truncated)" : "") << '\n';
  return 0;
}

int run_sweep_command(const SweepArgs& args) {
  const gapr::Network net(gapr::load_instance_file(args.instance));
  const gapr::SweepReport report = gapr::run_sweep(net, args.config);
  auto out = open_output(args.csv);
  const std::size_t rows = gapr::emit_csv(report, out, gapr::CsvOptions{!args.no_timings});
  std::cerr << "wrote " << rows << " records to " << args.csv << '\n';
  if (args.pareto) {
    for (const double phi : args.config.phi_grid) {
      for (const auto& p : gapr::pareto_extract(report, phi)) {
        std::cout << "phi=" << phi << " alpha=" << p.alpha << " tau=" << p.tau << " eta=" << p.eta << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fairness-bounded centralized pedestrian routing"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a random Euclidean instance");
  generate->add_option("--seed", gen.config.seed, "RNG seed")->required();
  generate->add_option("--nodes", gen.config.n_vertices, "Number of vertices")->required();
  generate->add_option("--density", gen.config.arc_density, "Fraction of ordered vertex pairs joined by an arc")
      ->required();
  generate->add_option("--od", gen.config.n_od_pairs, "Number of OD pairs")->required();
  generate->add_option("--out", gen.out, "Output instance file")->required();
  generate->add_option("--demand-fraction", gen.config.demand_fraction,
                       "OD demand as a fraction of the origin's outgoing capacity")
      ->capture_default_str();
  generate->add_option("--node-cap-fraction", gen.config.node_cap_fraction,
                       "Vertex capacity as a fraction of its incoming capacity")
      ->capture_default_str();
  generate->add_option("--name", gen.config.name, "Instance name");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("--instance", validate_path, "Instance file")->required();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one (phi, alpha) scenario");
  solve_cmd->add_option("--instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--phi", solve.phi, "Fairness band")->required();
  solve_cmd->add_option("--alpha", solve.alpha, "Weight on walking time")->required();
  solve_cmd->add_option("--out", solve.out, "Assignment JSON output")->required();
  solve_cmd->add_option("--paths-cap", solve.max_paths, "Maximum eligible paths per OD")->capture_default_str();
  solve_cmd->add_option("--mps", solve.mps, "Also write the LP in MPS format");
  solve_cmd->add_option("--dump-paths", solve.paths, "Also write the eligible path sets (JSON lines)");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the (phi, alpha) grid and write CSV");
  sweep_cmd->add_option("--instance", sweep.instance, "Instance file")->required();
  sweep_cmd->add_option("--phi-list", sweep.config.phi_grid, "Comma-separated phi values")->delimiter(',');
  sweep_cmd->add_option("--alpha-list", sweep.config.alpha_grid, "Comma-separated alpha values")->delimiter(',');
  sweep_cmd->add_option("--csv", sweep.csv, "CSV output")->required();
  sweep_cmd->add_option("--paths-cap", sweep.config.max_paths, "Maximum eligible paths per OD")
      ->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep.config.parallel_cells, "Cells solved in parallel")->capture_default_str();
  sweep_cmd->add_flag("--no-timings", sweep.no_timings, "Leave wall_seconds empty (byte-stable output)");
  sweep_cmd->add_flag("--pareto", sweep.pareto, "Print the nondominated (tau, eta) points per phi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*validate) return run_validate(validate_path);
    if (*solve_cmd) return run_solve(solve);
    if (*sweep_cmd) return run_sweep_command(sweep);
  } catch (const gapr::ValidationError& e) {
    report_violations(e);
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const gapr::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const gapr::NoPathError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const gapr::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gapr::Error& e) {
    // Everything else raised while solving: no eligible paths, iteration
    // limit, solver failure, sweep cell failure.
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolve;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
