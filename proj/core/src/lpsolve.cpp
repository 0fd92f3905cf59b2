#include "gapr/lpsolve.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "gapr/error.hpp"

namespace gapr {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDropTol = 1e-14;
constexpr double kDegenerateStep = 1e-12;

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Vector = Eigen::VectorXd;

std::vector<LpTerm> canonical_terms(std::span<const LpTerm> terms) {
  std::vector<LpTerm> sorted(terms.begin(), terms.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const LpTerm& a, const LpTerm& b) { return a.var < b.var; });
  std::vector<LpTerm> merged;
  for (const auto& t : sorted) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const LpTerm& t) { return t.coef == 0.0; });
  return merged;
}

// Revised primal simplex on  A x = b, x >= 0.  The basis inverse is kept as
// a sparse LU factorization of a reference basis followed by a file of
// product-form eta transformations, one per pivot since the last
// refactorization.
class RevisedSimplex {
 public:
  RevisedSimplex(const LpProblem& equality_form, const SimplexOptions& options)
      : options_(options), n_(equality_form.n_vars) {
    const auto& rows = equality_form.rows;
    // Build column-wise storage over the rows that have any coefficient;
    // empty rows are either trivially satisfied or prove infeasibility.
    std::vector<std::vector<std::pair<std::size_t, double>>> columns(n_);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto terms = canonical_terms(rows[r].terms);
      if (terms.empty()) {
        if (std::abs(rows[r].rhs) > options_.tol) empty_row_infeasible_ = true;
        kept_row_.push_back(kNone);
        continue;
      }
      const std::size_t i = m_++;
      kept_row_.push_back(i);
      const double sign = rows[r].rhs < 0.0 ? -1.0 : 1.0;
      row_sign_.push_back(sign);
      b_.push_back(sign * rows[r].rhs);
      for (const auto& t : terms) columns[t.var].emplace_back(i, sign * t.coef);
    }

    cost_.assign(n_, 0.0);
    for (const auto& t : canonical_terms(equality_form.objective)) cost_[t.var] = t.coef;

    // Crash basis: a singleton column with positive coefficient per row
    // where available (slacks, typically), an artificial otherwise.
    basis_.assign(m_, kNone);
    for (std::size_t j = 0; j < n_; ++j) {
      if (columns[j].size() != 1) continue;
      const auto [i, v] = columns[j][0];
      if (v > 0.0 && basis_[i] == kNone) basis_[i] = j;
    }
    artificial_.assign(n_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] != kNone) continue;
      columns.push_back({{i, 1.0}});
      cost_.push_back(0.0);
      artificial_.push_back(1);
      basis_[i] = columns.size() - 1;
    }
    total_ = columns.size();

    col_start_.reserve(total_ + 1);
    col_start_.push_back(0);
    for (const auto& col : columns) {
      for (const auto& [i, v] : col) {
        row_index_.push_back(i);
        value_.push_back(v);
      }
      col_start_.push_back(row_index_.size());
    }

    position_.assign(total_, kNone);
    for (std::size_t i = 0; i < m_; ++i) position_[basis_[i]] = i;

    limit_ = options_.iteration_limit != 0 ? options_.iteration_limit
                                           : 50 * (rows.size() + n_ + 1);
    bland_after_ = static_cast<std::size_t>(options_.bland_trigger *
                                            static_cast<double>(rows.size() + n_));
  }

  LpStatus solve() {
    if (empty_row_infeasible_) return LpStatus::kInfeasible;
    refactor();

    const bool needs_phase_one =
        std::any_of(basis_.begin(), basis_.end(), [&](std::size_t j) { return artificial_[j] != 0; });
    if (needs_phase_one) {
      std::vector<double> phase_one_cost(total_, 0.0);
      for (std::size_t j = 0; j < total_; ++j) phase_one_cost[j] = artificial_[j] ? 1.0 : 0.0;
      run_phase(phase_one_cost, /*phase_one=*/true);
      diagnostics_.phase_one_iterations = iterations_;
      refactor();
      double infeasibility = 0.0;
      double scale = 1.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (artificial_[basis_[i]]) infeasibility += std::max(xb_[i], 0.0);
        scale = std::max(scale, std::abs(b_[i]));
      }
      if (infeasibility > options_.tol * scale) return LpStatus::kInfeasible;
      drive_out_artificials();
      refactor();
    }
    if (run_phase(cost_, /*phase_one=*/false) == PhaseEnd::kUnbounded) return LpStatus::kUnbounded;
    return LpStatus::kOptimal;
  }

  double value(std::size_t j) const {
    const std::size_t p = position_[j];
    return p == kNone ? 0.0 : xb_[p];
  }

  /// Duals of the original (unnormalized) equality rows; 0 for dropped rows.
  std::vector<double> row_duals() {
    const Vector pi = btran(basic_costs(cost_));
    std::vector<double> duals(kept_row_.size(), 0.0);
    for (std::size_t r = 0; r < kept_row_.size(); ++r) {
      if (kept_row_[r] != kNone) duals[r] = pi[kept_row_[r]] * row_sign_[kept_row_[r]];
    }
    return duals;
  }

  std::vector<std::size_t> sorted_basis() const {
    std::vector<std::size_t> b(basis_.begin(), basis_.end());
    std::sort(b.begin(), b.end());
    return b;
  }

  std::size_t iterations() const { return iterations_; }
  const SimplexDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  enum class PhaseEnd { kOptimal, kUnbounded };

  struct Eta {
    std::size_t position;
    double pivot_entry;  // 1 / alpha_p
    std::vector<std::pair<std::size_t, double>> entries;  // -alpha_i / alpha_p, i != p
  };

  std::span<const std::size_t> column_rows(std::size_t j) const {
    return {row_index_.data() + col_start_[j], col_start_[j + 1] - col_start_[j]};
  }
  std::span<const double> column_values(std::size_t j) const {
    return {value_.data() + col_start_[j], col_start_[j + 1] - col_start_[j]};
  }

  double dot_column(const Vector& v, std::size_t j) const {
    double s = 0.0;
    const auto rows = column_rows(j);
    const auto vals = column_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) s += v[static_cast<Eigen::Index>(rows[k])] * vals[k];
    return s;
  }

  Vector basic_costs(const std::vector<double>& cost) const {
    Vector cb(static_cast<Eigen::Index>(m_));
    for (std::size_t i = 0; i < m_; ++i) cb[static_cast<Eigen::Index>(i)] = cost[basis_[i]];
    return cb;
  }

  void refactor() {
    etas_.clear();
    ++diagnostics_.refactorizations;
    if (m_ == 0) return;
    std::vector<Eigen::Triplet<double, int>> triplets;
    for (std::size_t p = 0; p < m_; ++p) {
      const auto rows = column_rows(basis_[p]);
      const auto vals = column_values(basis_[p]);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        triplets.emplace_back(static_cast<int>(rows[k]), static_cast<int>(p), vals[k]);
      }
    }
    SparseMatrix basis_matrix(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
    basis_matrix.setFromTriplets(triplets.begin(), triplets.end());
    basis_matrix.makeCompressed();
    lu_.compute(basis_matrix);
    if (lu_.info() != Eigen::Success) throw SolveError("simplex basis became singular");
    const Vector b = Eigen::Map<const Vector>(b_.data(), static_cast<Eigen::Index>(m_));
    xb_ = lu_.solve(b);
  }

  Vector ftran(std::size_t j) const {
    Vector rhs = Vector::Zero(static_cast<Eigen::Index>(m_));
    const auto rows = column_rows(j);
    const auto vals = column_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) rhs[static_cast<Eigen::Index>(rows[k])] = vals[k];
    if (m_ == 0) return rhs;
    Vector x = lu_.solve(rhs);
    for (const auto& eta : etas_) {
      const auto p = static_cast<Eigen::Index>(eta.position);
      const double xp = x[p];
      if (xp == 0.0) continue;
      x[p] = eta.pivot_entry * xp;
      for (const auto& [i, e] : eta.entries) x[static_cast<Eigen::Index>(i)] += e * xp;
    }
    return x;
  }

  Vector btran(Vector y) const {
    if (m_ == 0) return y;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      const auto p = static_cast<Eigen::Index>(it->position);
      double s = it->pivot_entry * y[p];
      for (const auto& [i, e] : it->entries) s += e * y[static_cast<Eigen::Index>(i)];
      y[p] = s;
    }
    return lu_.transpose().solve(y);
  }

  void pivot(std::size_t entering, std::size_t p, const Vector& alpha, double theta) {
    for (std::size_t i = 0; i < m_; ++i) xb_[static_cast<Eigen::Index>(i)] -= theta * alpha[static_cast<Eigen::Index>(i)];
    xb_[static_cast<Eigen::Index>(p)] = theta;

    if (std::abs(theta) <= kDegenerateStep) {
      ++diagnostics_.degenerate_pivots;
      if (!bland_ && diagnostics_.degenerate_pivots > bland_after_) {
        bland_ = true;
        diagnostics_.bland_rule_used = true;
      }
    }

    Eta eta;
    eta.position = p;
    const double ap = alpha[static_cast<Eigen::Index>(p)];
    eta.pivot_entry = 1.0 / ap;
    for (std::size_t i = 0; i < m_; ++i) {
      const double ai = alpha[static_cast<Eigen::Index>(i)];
      if (i != p && std::abs(ai) > kDropTol) eta.entries.emplace_back(i, -ai / ap);
    }
    etas_.push_back(std::move(eta));

    position_[basis_[p]] = kNone;
    basis_[p] = entering;
    position_[entering] = p;
    ++iterations_;
  }

  void check_limit() const {
    if (iterations_ >= limit_) {
      throw IterationLimitError("simplex iteration limit (" + std::to_string(limit_) + ") exceeded");
    }
  }

  PhaseEnd run_phase(const std::vector<double>& cost, bool phase_one) {
    const double tol = options_.tol;
    for (;;) {
      check_limit();
      if (etas_.size() >= options_.refactor_interval) refactor();

      const Vector pi = btran(basic_costs(cost));
      std::size_t entering = kNone;
      double best = -tol;
      for (std::size_t j = 0; j < total_; ++j) {
        if (position_[j] != kNone || artificial_[j]) continue;
        const double d = cost[j] - dot_column(pi, j);
        if (d < best) {
          entering = j;
          best = d;
          if (bland_) break;
        }
      }
      if (entering == kNone) return PhaseEnd::kOptimal;

      const Vector alpha = ftran(entering);
      double min_ratio = kInf;
      std::vector<double> ratio(m_, kInf);
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = alpha[static_cast<Eigen::Index>(i)];
        if (!phase_one && artificial_[basis_[i]]) {
          // Artificials left in a redundant row must stay at zero.
          if (std::abs(a) > LpTolerances::kPivot) ratio[i] = 0.0;
        } else if (a > LpTolerances::kPivot) {
          ratio[i] = std::max(xb_[static_cast<Eigen::Index>(i)], 0.0) / a;
        }
        min_ratio = std::min(min_ratio, ratio[i]);
      }
      if (min_ratio == kInf) return PhaseEnd::kUnbounded;

      const double window = min_ratio + 1e-12 * (1.0 + min_ratio);
      std::size_t leave = kNone;
      for (std::size_t i = 0; i < m_; ++i) {
        if (ratio[i] <= window && (leave == kNone || basis_[i] < basis_[leave])) leave = i;
      }
      pivot(entering, leave, alpha, ratio[leave]);
    }
  }

  // After a feasible phase one, swap zero-valued artificials out of the
  // basis wherever some structural column can replace them. Rows where none
  // can are linearly dependent; their artificial stays basic at zero.
  void drive_out_artificials() {
    for (std::size_t p = 0; p < m_; ++p) {
      if (!artificial_[basis_[p]]) continue;
      check_limit();
      Vector unit = Vector::Zero(static_cast<Eigen::Index>(m_));
      unit[static_cast<Eigen::Index>(p)] = 1.0;
      const Vector row = btran(unit);
      std::size_t best_j = kNone;
      double best_v = LpTolerances::kPivot;
      for (std::size_t j = 0; j < total_; ++j) {
        if (position_[j] != kNone || artificial_[j]) continue;
        const double v = std::abs(dot_column(row, j));
        if (v > best_v) {
          best_v = v;
          best_j = j;
        }
      }
      if (best_j == kNone) continue;
      const Vector alpha = ftran(best_j);
      const double theta = xb_[static_cast<Eigen::Index>(p)] / alpha[static_cast<Eigen::Index>(p)];
      pivot(best_j, p, alpha, theta);
    }
  }

  SimplexOptions options_;
  std::size_t n_ = 0;      // structural columns
  std::size_t m_ = 0;      // kept rows
  std::size_t total_ = 0;  // structural + artificial columns
  bool empty_row_infeasible_ = false;

  std::vector<std::size_t> kept_row_;
  std::vector<double> row_sign_;
  std::vector<double> b_;
  std::vector<double> cost_;
  std::vector<char> artificial_;

  std::vector<std::size_t> col_start_;
  std::vector<std::size_t> row_index_;
  std::vector<double> value_;

  std::vector<std::size_t> basis_;
  std::vector<std::size_t> position_;
  Vector xb_;
  mutable Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;  // transpose() is non-const
  std::vector<Eta> etas_;

  std::size_t iterations_ = 0;
  std::size_t limit_ = 0;
  std::size_t bland_after_ = 0;
  bool bland_ = false;
  SimplexDiagnostics diagnostics_;
};

std::string default_name(char prefix, std::size_t index) {
  return std::string(1, prefix) + std::to_string(index);
}

}  // namespace

std::size_t LpProblem::add_variable(std::string name, double cost) {
  const std::size_t j = n_vars++;
  if (!var_names.empty() || !name.empty()) {
    var_names.resize(j, std::string{});
    for (std::size_t k = 0; k < j; ++k) {
      if (var_names[k].empty()) var_names[k] = default_name('X', k);
    }
    var_names.push_back(name.empty() ? default_name('X', j) : std::move(name));
  }
  if (cost != 0.0) objective.push_back({j, cost});
  return j;
}

std::size_t LpProblem::add_row(std::vector<LpTerm> terms, Relation relation, double rhs, std::string name) {
  rows.push_back({std::move(terms), relation, rhs, std::move(name)});
  return rows.size() - 1;
}

void check_problem(const LpProblem& problem) {
  const auto check_terms = [&](std::span<const LpTerm> terms, const std::string& where) {
    for (const auto& t : terms) {
      if (t.var >= problem.n_vars) {
        throw std::invalid_argument(where + " references variable " + std::to_string(t.var) +
                                    " >= n_vars");
      }
      if (!std::isfinite(t.coef)) throw std::invalid_argument(where + " has a non-finite coefficient");
    }
  };
  check_terms(problem.objective, "objective");
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    const std::string where = "row " + std::to_string(r);
    check_terms(problem.rows[r].terms, where);
    if (!std::isfinite(problem.rows[r].rhs)) throw std::invalid_argument(where + " has a non-finite rhs");
  }
  if (!problem.var_names.empty() && problem.var_names.size() != problem.n_vars) {
    throw std::invalid_argument("var_names must be empty or have n_vars entries");
  }
}

StandardForm to_standard_form(const LpProblem& problem) {
  check_problem(problem);
  StandardForm sf;
  sf.problem = problem;
  sf.original_vars = problem.n_vars;
  sf.slack_column.assign(problem.rows.size(), std::nullopt);
  auto& p = sf.problem;
  if (p.var_names.empty()) {
    for (std::size_t j = 0; j < p.n_vars; ++j) p.var_names.push_back(default_name('X', j));
  }
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    auto& row = p.rows[r];
    if (row.relation == Relation::kEqual) continue;
    const std::string base = row.name.empty() ? default_name('R', r) : row.name;
    const std::size_t s = p.n_vars++;
    p.var_names.push_back("S_" + base);
    row.terms.push_back({s, row.relation == Relation::kLessEqual ? 1.0 : -1.0});
    row.relation = Relation::kEqual;
    sf.slack_column[r] = s;
  }
  return sf;
}

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

LpSolution simplex_solve(const LpProblem& problem, double tol) {
  SimplexOptions options;
  options.tol = tol;
  return simplex_solve(problem, options);
}

LpSolution simplex_solve(const LpProblem& problem, const SimplexOptions& options) {
  if (!(options.tol >= 1e-12 && options.tol <= 1e-4)) {
    throw std::invalid_argument("simplex tolerance must lie in [1e-12, 1e-4]");
  }
  if (options.refactor_interval == 0) throw std::invalid_argument("refactor_interval must be positive");
  const StandardForm sf = to_standard_form(problem);
  RevisedSimplex engine(sf.problem, options);

  LpSolution solution;
  solution.status = engine.solve();
  solution.iterations = engine.iterations();
  solution.diagnostics = engine.diagnostics();
  solution.primal.assign(problem.n_vars, 0.0);
  solution.duals.assign(problem.rows.size(), 0.0);

  if (solution.status == LpStatus::kInfeasible) {
    solution.objective_value = kInf;
    return solution;
  }
  for (std::size_t j = 0; j < problem.n_vars; ++j) solution.primal[j] = engine.value(j);
  if (solution.status == LpStatus::kUnbounded) {
    solution.objective_value = -kInf;
    return solution;
  }
  double obj = 0.0;
  for (const auto& t : problem.objective) obj += t.coef * solution.primal[t.var];
  solution.objective_value = obj;
  solution.duals = engine.row_duals();
  solution.basis = engine.sorted_basis();
  return solution;
}

CertificateReport verify_optimality(const LpProblem& problem, const LpSolution& solution, double tol) {
  check_problem(problem);
  CertificateReport report;
  const auto& x = solution.primal;
  const auto& y = solution.duals;
  if (solution.status != LpStatus::kOptimal || x.size() != problem.n_vars ||
      y.size() != problem.rows.size()) {
    return report;
  }

  double primal_obj = 0.0;
  std::vector<double> cost(problem.n_vars, 0.0);
  for (const auto& t : problem.objective) {
    cost[t.var] += t.coef;
    primal_obj += t.coef * x[t.var];
  }
  const double scale = 1.0 + std::abs(solution.objective_value);

  // Primal: row residuals and nonnegativity.
  double primal_violation = 0.0;
  double dual_violation = 0.0;
  double cs_violation = 0.0;
  double dual_obj = 0.0;
  std::vector<double> reduced = cost;
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    const auto& row = problem.rows[r];
    double ax = 0.0;
    for (const auto& t : row.terms) {
      ax += t.coef * x[t.var];
      reduced[t.var] -= y[r] * t.coef;
    }
    const double diff = ax - row.rhs;
    double residual = 0.0;
    double sign_violation = 0.0;
    switch (row.relation) {
      case Relation::kEqual: residual = std::abs(diff); break;
      case Relation::kLessEqual:
        residual = std::max(diff, 0.0);
        sign_violation = std::max(y[r], 0.0);
        break;
      case Relation::kGreaterEqual:
        residual = std::max(-diff, 0.0);
        sign_violation = std::max(-y[r], 0.0);
        break;
    }
    primal_violation = std::max(primal_violation, residual / (1.0 + std::abs(row.rhs)));
    dual_violation = std::max(dual_violation, sign_violation);
    cs_violation = std::max(cs_violation, std::abs(y[r] * diff) / scale);
    dual_obj += row.rhs * y[r];
  }
  for (std::size_t j = 0; j < problem.n_vars; ++j) {
    primal_violation = std::max(primal_violation, std::max(-x[j], 0.0));
    dual_violation = std::max(dual_violation, std::max(-reduced[j], 0.0) / (1.0 + std::abs(cost[j])));
    cs_violation = std::max(cs_violation, std::abs(x[j] * reduced[j]) / scale);
  }

  report.max_primal_violation = primal_violation;
  report.max_dual_violation = dual_violation;
  report.max_complementarity_violation = cs_violation;
  report.gap = std::max(std::abs(solution.objective_value - primal_obj),
                        std::abs(solution.objective_value - dual_obj)) / scale;
  report.primal_feasible = primal_violation <= tol;
  report.dual_feasible = dual_violation <= tol;
  report.complementary_slackness = cs_violation <= LpTolerances::kDualityGap;
  report.duality_gap = report.gap <= LpTolerances::kDualityGap;
  return report;
}

}  // namespace gapr
