#pragma once

// Generic sparse linear programming: minimize c'x subject to rows of
// (=, >=, <=) constraints with x >= 0. Solved by a two-phase revised primal
// simplex. Nothing here knows about routing.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gapr {

enum class Relation { kEqual, kGreaterEqual, kLessEqual };

struct LpTerm {
  std::size_t var = 0;
  double coef = 0.0;

  bool operator==(const LpTerm&) const = default;
};

struct LpRow {
  std::vector<LpTerm> terms;
  Relation relation = Relation::kEqual;
  double rhs = 0.0;
  std::string name;  // optional; MPS output falls back to R<index>

  bool operator==(const LpRow&) const = default;
};

struct LpProblem {
  std::size_t n_vars = 0;
  std::vector<LpTerm> objective;  // minimized
  std::vector<LpRow> rows;
  std::vector<std::string> var_names;  // optional; MPS output falls back to X<index>

  std::size_t add_variable(std::string name = {}, double cost = 0.0);
  std::size_t add_row(std::vector<LpTerm> terms, Relation relation, double rhs, std::string name = {});

  bool operator==(const LpProblem&) const = default;
};

/// Throws std::invalid_argument if a term references a missing variable or
/// any number is NaN or infinite.
void check_problem(const LpProblem& problem);

/// Solver tolerances shared by every caller.
struct LpTolerances {
  static constexpr double kFeasibility = 1e-7;
  static constexpr double kReducedCost = 1e-7;
  static constexpr double kDualityGap = 1e-6;  // relative
  static constexpr double kPivot = 1e-9;
};

struct StandardForm {
  LpProblem problem;  // every row an equality
  std::size_t original_vars = 0;
  // Column of the slack (<=, coefficient +1) or surplus (>=, coefficient -1)
  // added for each row; empty for equality rows.
  std::vector<std::optional<std::size_t>> slack_column;
};

StandardForm to_standard_form(const LpProblem& problem);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view to_string(LpStatus status);

struct SimplexDiagnostics {
  std::size_t phase_one_iterations = 0;
  std::size_t degenerate_pivots = 0;
  std::size_t refactorizations = 0;
  bool bland_rule_used = false;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;  // original variables only
  double objective_value = 0.0;
  std::vector<double> duals;  // one per original row
  std::size_t iterations = 0;
  SimplexDiagnostics diagnostics;
  std::vector<std::size_t> basis;  // final basic columns of the standard form
};

struct SimplexOptions {
  double tol = 1e-7;
  std::size_t iteration_limit = 0;  // 0: 50 * (rows + cols + 1)
  std::size_t refactor_interval = 100;
  double bland_trigger = 3.0;  // switch after trigger * (rows + cols) degenerate pivots
};

/// Two-phase primal simplex with Dantzig pricing, falling back to Bland's
/// rule under prolonged degeneracy. Deterministic: lowest index wins ties.
/// Throws IterationLimitError when the cap is exceeded.
LpSolution simplex_solve(const LpProblem& problem, double tol = 1e-7);
LpSolution simplex_solve(const LpProblem& problem, const SimplexOptions& options);

struct CertificateReport {
  bool primal_feasible = false;
  bool dual_feasible = false;
  bool complementary_slackness = false;
  bool duality_gap = false;
  double max_primal_violation = 0.0;
  double max_dual_violation = 0.0;
  double max_complementarity_violation = 0.0;
  double gap = 0.0;

  bool all() const {
    return primal_feasible && dual_feasible && complementary_slackness && duality_gap;
  }
};

/// Independent optimality check of a claimed optimal solution against the
/// original problem: row feasibility and x >= 0, dual signs and reduced
/// costs, complementary slackness, and agreement of the reported objective
/// with both c'x and b'y.
CertificateReport verify_optimality(const LpProblem& problem, const LpSolution& solution,
                                    double tol = LpTolerances::kFeasibility);

/// Pluggable solver seam so an external LP code can stand in for the
/// built-in simplex.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual LpSolution solve(const LpProblem& problem) const = 0;
};

class SimplexSolver final : public LpSolver {
 public:
  explicit SimplexSolver(SimplexOptions options = {}) : options_(options) {}
  LpSolution solve(const LpProblem& problem) const override {
    return simplex_solve(problem, options_);
  }

 private:
  SimplexOptions options_;
};

/// Fixed-section MPS text (NAME/ROWS/COLUMNS/RHS/ENDATA) using the problem's
/// variable and row names.
void write_mps(const LpProblem& problem, std::ostream& out, std::string_view name = "GAPR");

}  // namespace gapr
