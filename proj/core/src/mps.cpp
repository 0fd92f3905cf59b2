#include <charconv>
#include <ostream>
#include <vector>

#include "gapr/lpsolve.hpp"

namespace gapr {
namespace {

std::string number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string sanitize(std::string s) {
  for (auto& ch : s) {
    if (ch == ' ' || ch == '\t') ch = '_';
  }
  return s;
}

}  // namespace

void write_mps(const LpProblem& problem, std::ostream& out, std::string_view name) {
  check_problem(problem);
  const auto var_name = [&](std::size_t j) {
    return problem.var_names.empty() ? "X" + std::to_string(j) : sanitize(problem.var_names[j]);
  };
  const auto row_name = [&](std::size_t r) {
    return problem.rows[r].name.empty() ? "R" + std::to_string(r) : sanitize(problem.rows[r].name);
  };

  // Column-major view of the coefficients.
  std::vector<std::vector<std::pair<std::string, double>>> columns(problem.n_vars);
  for (const auto& t : problem.objective) columns[t.var].emplace_back("COST", t.coef);
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    const std::string rn = row_name(r);
    for (const auto& t : problem.rows[r].terms) columns[t.var].emplace_back(rn, t.coef);
  }

  out << "NAME          " << name << '\n';
  out << "ROWS\n";
  out << " N  COST\n";
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    const char tag = problem.rows[r].relation == Relation::kEqual          ? 'E'
                     : problem.rows[r].relation == Relation::kLessEqual ? 'L'
                                                                         : 'G';
    out << ' ' << tag << "  " << row_name(r) << '\n';
  }
  out << "COLUMNS\n";
  for (std::size_t j = 0; j < problem.n_vars; ++j) {
    const std::string vn = var_name(j);
    if (columns[j].empty()) {
      out << "    " << vn << "  COST  0\n";
      continue;
    }
    for (const auto& [rn, v] : columns[j]) out << "    " << vn << "  " << rn << "  " << number(v) << '\n';
  }
  out << "RHS\n";
  for (std::size_t r = 0; r < problem.rows.size(); ++r) {
    if (problem.rows[r].rhs != 0.0) {
      out << "    RHS  " << row_name(r) << "  " << number(problem.rows[r].rhs) << '\n';
    }
  }
  out << "ENDATA\n";
}

}  // namespace gapr
