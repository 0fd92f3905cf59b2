#include "gapr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iterator>
#include <memory>
#include <ostream>
#include <thread>

namespace gapr {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs task(i) for i in [0, count) on up to `workers` threads. Returns the
// exception of the lowest failing index, if any.
std::pair<std::size_t, std::exception_ptr> parallel_for(std::size_t count, std::size_t workers,
                                                        const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  const auto guarded = [&](std::size_t i) {
    try {
      task(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) guarded(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) return {i, errors[i]};
  }
  return {count, nullptr};
}

std::string describe(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& ex) {
    return ex.what();
  } catch (...) {
    return "unknown error";
  }
}

std::string format_number(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (const char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

SweepRecord make_record(const Assignment& a, const Assignment& ue, const Network& net, double wall) {
  SweepRecord r;
  r.stats = compute_stats(a, ue, net);
  r.tau = a.tau;
  r.eta = a.eta;
  r.objective = a.scalarized_objective;
  r.wall_seconds = wall;
  return r;
}

}  // namespace

void check_sweep_config(const SweepConfig& config) {
  if (config.phi_grid.empty()) throw ConfigError("phi grid is empty");
  if (config.alpha_grid.empty()) throw ConfigError("alpha grid is empty");
  for (const double phi : config.phi_grid) {
    if (!std::isfinite(phi) || phi < 0.0) throw ConfigError("phi values must be finite and >= 0");
  }
  for (const double alpha : config.alpha_grid) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha values must lie in [0,1]");
  }
  const auto has_duplicates = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
  };
  if (has_duplicates(config.phi_grid)) throw ConfigError("phi grid has duplicates");
  if (has_duplicates(config.alpha_grid)) throw ConfigError("alpha grid has duplicates");
  if (config.max_paths == 0) throw ConfigError("max_paths must be positive");
  if (config.parallel_cells == 0) throw ConfigError("parallel_cells must be positive");
}

SweepReport run_sweep(const Network& net, const SweepConfig& config) {
  check_sweep_config(config);
  std::vector<double> phis = config.phi_grid;
  std::vector<double> alphas = config.alpha_grid;
  std::sort(phis.begin(), phis.end());
  std::sort(alphas.begin(), alphas.end(), std::greater<>());

  SweepReport report;
  report.instance_name = net.instance().name;

  const auto ue_start = Clock::now();
  const Assignment ue = user_equilibrium(net);
  report.ue_record = make_record(ue, ue, net, seconds_since(ue_start));
  report.lp_solves = 1;

  // Path sets once per phi, shared read-only by every alpha.
  std::vector<double> band_phis;
  std::copy_if(phis.begin(), phis.end(), std::back_inserter(band_phis), [](double p) { return p > 0.0; });
  std::vector<std::shared_ptr<const PathSets>> sets(band_phis.size());
  std::vector<double> pathgen_seconds(band_phis.size(), 0.0);
  {
    const auto [failed, error] = parallel_for(band_phis.size(), config.parallel_cells, [&](std::size_t i) {
      const auto start = Clock::now();
      sets[i] = std::make_shared<const PathSets>(enumerate_all(net, band_phis[i], config.max_paths));
      pathgen_seconds[i] = seconds_since(start);
    });
    if (error) {
      throw Error("path generation failed at phi=" + format_number(band_phis[failed]) + ": " +
                  describe(error));
    }
  }
  report.pathgen_runs = band_phis.size();

  struct Cell {
    double phi;
    double alpha;
    std::size_t set_index;  // into `sets`; unused for the UE cell
    bool is_ue;
  };
  std::vector<Cell> cells;
  for (const double phi : phis) {
    if (phi == 0.0) {
      cells.push_back({0.0, 1.0, 0, true});
      continue;
    }
    const auto idx = static_cast<std::size_t>(
        std::find(band_phis.begin(), band_phis.end(), phi) - band_phis.begin());
    for (const double alpha : alphas) cells.push_back({phi, alpha, idx, false});
  }

  report.records.resize(cells.size());
  const auto [failed, error] = parallel_for(cells.size(), config.parallel_cells, [&](std::size_t i) {
    const Cell& cell = cells[i];
    if (cell.is_ue) {
      report.records[i] = report.ue_record;
      return;
    }
    const auto start = Clock::now();
    const Assignment a =
        solve_assignment(net, ScenarioParams{cell.phi, cell.alpha, config.max_paths}, sets[cell.set_index]);
    report.records[i] = make_record(a, ue, net, seconds_since(start));
  });
  if (error) {
    throw Error("sweep cell (phi=" + format_number(cells[failed].phi) +
                ", alpha=" + format_number(cells[failed].alpha) + ") failed: " + describe(error));
  }
  for (const auto& cell : cells) report.lp_solves += cell.is_ue ? 0 : 1;
  return report;
}

std::vector<ParetoPoint> nondominated(std::vector<ParetoPoint> points) {
  std::stable_sort(points.begin(), points.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    return a.tau != b.tau ? a.tau < b.tau : a.eta < b.eta;
  });
  const auto tol = [](double v) { return 1e-9 * (1.0 + std::abs(v)); };
  std::vector<ParetoPoint> front;
  for (const auto& p : points) {
    if (front.empty()) {
      front.push_back(p);
      continue;
    }
    const auto& last = front.back();
    // Sorted by tau, so p is dominated iff its eta does not improve on the
    // best eta so far (the last kept point).
    if (p.eta < last.eta - tol(last.eta)) {
      if (std::abs(p.tau - last.tau) <= tol(last.tau)) {
        front.back() = p;  // same tau, strictly better eta
      } else {
        front.push_back(p);
      }
    }
  }
  return front;
}

std::vector<ParetoPoint> pareto_extract(const SweepReport& report, double phi) {
  std::vector<ParetoPoint> points;
  for (const auto& r : report.records) {
    if (r.stats.phi == phi) points.push_back({r.tau, r.eta, r.stats.alpha});
  }
  if (points.empty()) throw ConfigError("phi " + format_number(phi) + " is not part of the sweep");
  return nondominated(std::move(points));
}

std::size_t emit_csv(const SweepReport& report, std::ostream& out, const CsvOptions& options) {
  out << kCsvHeader << '\n';
  const std::string name = csv_field(report.instance_name);
  for (const auto& r : report.records) {
    const auto& s = r.stats;
    out << name << ',' << format_number(s.phi) << ',' << format_number(s.alpha) << ','
        << format_number(r.tau) << ',' << format_number(r.eta) << ',' << format_number(r.objective) << ','
        << format_number(s.total_time) << ',' << format_optional(s.T) << ',' << format_optional(s.Sigma)
        << ',' << format_optional(s.Delta) << ',' << format_number(s.sigma_bar) << ','
        << format_number(s.delta_bar) << ',' << format_number(s.lambda_zero) << ','
        << format_number(s.lambda_mid) << ',' << format_number(s.lambda_high) << ','
        << format_number(s.u_bar) << ',' << (s.truncated ? "true" : "false") << ','
        << (options.include_timings ? format_number(r.wall_seconds) : std::string{}) << '\n';
  }
  out.flush();
  if (!out) throw Error("failed to write CSV output");
  return report.records.size();
}

}  // namespace gapr
