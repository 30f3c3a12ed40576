// Copyright 2026 The Datum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "datum/lp.hpp"

#include <ostream>
#include <string>

#include "datum/errors.hpp"

namespace datum::lp {
namespace {

// Dense simplex tableau in canonical form with respect to `basis`.
// reduced[j] = c_j - c_B^T B^-1 A_j and value = c_B^T B^-1 b.
class Tableau {
 public:
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<std::size_t> basis;
  std::vector<Rational> reduced;
  Rational value;
  std::vector<bool> enterable;
  std::size_t pivots = 0;

  std::size_t num_columns() const { return reduced.size(); }

  void pivot(std::size_t r, std::size_t k) {
    ++pivots;
    const Rational inv = 1 / rows[r][k];
    auto& prow = rows[r];
    for (auto& v : prow) {
      if (sgn(v) != 0) v *= inv;
    }
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][k]) == 0) continue;
      const Rational factor = rows[i][k];
      auto& row = rows[i];
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (sgn(prow[j]) != 0) row[j] -= factor * prow[j];
      }
      rhs[i] -= factor * rhs[r];
    }
    if (sgn(reduced[k]) != 0) {
      const Rational factor = reduced[k];
      for (std::size_t j = 0; j < reduced.size(); ++j) {
        if (sgn(prow[j]) != 0) reduced[j] -= factor * prow[j];
      }
      value += factor * rhs[r];
    }
    basis[r] = k;
  }

  void remove_row(std::size_t r) {
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(r));
    rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(r));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
  }

  void dump(std::ostream& out, const char* phase) const {
    out << "-- tableau (" << phase << ", pivot " << pivots << ", value " << value.get_str() << ")\n";
    out << "reduced:";
    for (const auto& v : reduced) out << ' ' << v.get_str();
    out << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << "x" << basis[i] << " =";
      for (const auto& v : rows[i]) out << ' ' << v.get_str();
      out << " | " << rhs[i].get_str() << '\n';
    }
  }

  // Bland's rule: lowest-index improving column, ratio ties to the lowest basic index.
  // Returns false when unbounded.
  bool optimize(std::ostream* trace, const char* phase) {
    for (;;) {
      if (trace) dump(*trace, phase);
      std::size_t entering = num_columns();
      for (std::size_t j = 0; j < num_columns(); ++j) {
        if (enterable[j] && sgn(reduced[j]) < 0) {
          entering = j;
          break;
        }
      }
      if (entering == num_columns()) return true;
      std::size_t leaving = rows.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(rows[i][entering]) <= 0) continue;
        Rational ratio = rhs[i] / rows[i][entering];
        if (leaving == rows.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == rows.size()) return false;
      pivot(leaving, entering);
    }
  }
};

}  // namespace

const char* to_string(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

bool is_feasible(const LinearProgram& program, const std::vector<Rational>& values) {
  const std::size_t n = program.num_variables();
  if (values.size() != n) return false;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(values[j]) < 0) return false;
    if (j < program.upper_bounds.size() && program.upper_bounds[j] &&
        values[j] > *program.upper_bounds[j]) {
      return false;
    }
  }
  for (const auto& row : program.constraints) {
    Rational lhs;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(row.coefficients[j]) != 0) lhs += row.coefficients[j] * values[j];
    }
    switch (row.relation) {
      case Relation::kLessEqual:
        if (lhs > row.rhs) return false;
        break;
      case Relation::kEqual:
        if (lhs != row.rhs) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  return true;
}

LpSolution solve(const LinearProgram& program, const SolveOptions& options) {
  const std::size_t n = program.num_variables();
  if (!program.upper_bounds.empty() && program.upper_bounds.size() != n) {
    throw DimensionMismatch("upper_bounds has " + std::to_string(program.upper_bounds.size()) +
                            " entries for " + std::to_string(n) + " variables");
  }

  LpSolution result;
  std::vector<Constraint> rows;
  for (std::size_t r = 0; r < program.constraints.size(); ++r) {
    const auto& row = program.constraints[r];
    if (row.coefficients.size() != n) {
      throw DimensionMismatch("constraint " + std::to_string(r) + " has " +
                              std::to_string(row.coefficients.size()) + " coefficients for " +
                              std::to_string(n) + " variables");
    }
    bool all_zero = true;
    for (const auto& v : row.coefficients) all_zero = all_zero && sgn(v) == 0;
    if (all_zero) {
      const int s = sgn(row.rhs);
      const bool ok = (row.relation == Relation::kLessEqual && s >= 0) ||
                      (row.relation == Relation::kEqual && s == 0) ||
                      (row.relation == Relation::kGreaterEqual && s <= 0);
      if (!ok) return result;
      continue;
    }
    rows.push_back(row);
  }
  for (std::size_t j = 0; j < program.upper_bounds.size(); ++j) {
    if (!program.upper_bounds[j]) continue;
    std::vector<Rational> coefficients(n);
    coefficients[j] = 1;
    rows.push_back({std::move(coefficients), Relation::kLessEqual, *program.upper_bounds[j]});
  }
  for (auto& row : rows) {
    if (sgn(row.rhs) < 0) {
      for (auto& v : row.coefficients) v = -v;
      row.rhs = -row.rhs;
      if (row.relation == Relation::kLessEqual) {
        row.relation = Relation::kGreaterEqual;
      } else if (row.relation == Relation::kGreaterEqual) {
        row.relation = Relation::kLessEqual;
      }
    }
  }

  // Columns: structural | one slack or surplus per inequality | artificials.
  const std::size_t m = rows.size();
  std::size_t num_slack = 0;
  std::size_t num_artificial = 0;
  for (const auto& row : rows) {
    if (row.relation != Relation::kEqual) ++num_slack;
    if (row.relation != Relation::kLessEqual) ++num_artificial;
  }
  const std::size_t first_artificial = n + num_slack;
  const std::size_t total = first_artificial + num_artificial;

  Tableau t;
  t.rows.assign(m, std::vector<Rational>(total));
  t.rhs.resize(m);
  t.basis.resize(m);
  t.reduced.assign(total, Rational(0));
  t.enterable.assign(total, true);
  std::size_t next_slack = n;
  std::size_t next_artificial = first_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = rows[i].coefficients[j];
    t.rhs[i] = rows[i].rhs;
    switch (rows[i].relation) {
      case Relation::kLessEqual:
        t.rows[i][next_slack] = 1;
        t.basis[i] = next_slack++;
        break;
      case Relation::kGreaterEqual:
        t.rows[i][next_slack++] = -1;
        t.rows[i][next_artificial] = 1;
        t.basis[i] = next_artificial++;
        break;
      case Relation::kEqual:
        t.rows[i][next_artificial] = 1;
        t.basis[i] = next_artificial++;
        break;
    }
  }

  // Phase 1: minimize the sum of artificials.
  for (std::size_t j = first_artificial; j < total; ++j) t.reduced[j] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < first_artificial) continue;
    for (std::size_t j = 0; j < total; ++j) {
      if (sgn(t.rows[i][j]) != 0) t.reduced[j] -= t.rows[i][j];
    }
    t.value += t.rhs[i];
  }
  if (num_artificial > 0) {
    t.optimize(options.trace, "phase 1");
    if (sgn(t.value) > 0) {
      result.pivots = t.pivots;
      return result;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = t.rows.size(); i-- > 0;) {
      if (t.basis[i] < first_artificial) continue;
      std::size_t column = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (sgn(t.rows[i][j]) != 0) {
          column = j;
          break;
        }
      }
      if (column == first_artificial) {
        t.remove_row(i);
      } else {
        t.pivot(i, column);
      }
    }
  }

  // Phase 2 on the original objective; artificial columns may not re-enter.
  for (std::size_t j = first_artificial; j < total; ++j) t.enterable[j] = false;
  std::vector<Rational> cost(total);
  for (std::size_t j = 0; j < n; ++j) cost[j] = program.objective[j];
  t.reduced = cost;
  t.value = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const Rational& cb = cost[t.basis[i]];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j < total; ++j) {
      if (sgn(t.rows[i][j]) != 0) t.reduced[j] -= cb * t.rows[i][j];
    }
    t.value += cb * t.rhs[i];
  }
  const bool bounded = t.optimize(options.trace, "phase 2");
  result.pivots = t.pivots;
  if (!bounded) {
    result.status = Status::kUnbounded;
    return result;
  }

  result.status = Status::kOptimal;
  result.values.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.basis[i] < n) result.values[t.basis[i]] = t.rhs[i];
  }
  for (std::size_t j = 0; j < n; ++j) result.objective_value += program.objective[j] * result.values[j];
  result.is_extreme_point = true;
  return result;
}

}  // namespace datum::lp
