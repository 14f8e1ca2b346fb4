#include "implic/simplex.hpp"

#include <stdexcept>

namespace implic::lp {

namespace {

// Dense tableau: rows 0..m-1 hold constraints, row m holds reduced costs
// (z_j - c_j for a maximization); column N holds the right-hand side.
struct Tableau {
  MatrixQ t;
  std::vector<int> basis;  // basic variable of each constraint row
  int m = 0;
  int cols = 0;  // number of variable columns (rhs lives at index cols)

  Rational& at(int r, int c) { return t(r, c); }

  void pivot(int row, int col) {
    // manual loops: skipping structural zeros saves most of the exact
    // arithmetic on these sparse tableaus
    Rational inv = 1 / t(row, col);
    for (int j = 0; j <= cols; ++j)
      if (sgn(t(row, j)) != 0) t(row, j) *= inv;
    for (int r = 0; r <= m; ++r) {
      if (r == row) continue;
      const Rational f = t(r, col);
      if (sgn(f) == 0) continue;
      for (int j = 0; j <= cols; ++j) {
        const Rational& p = t(row, j);
        if (sgn(p) != 0) t(r, j) -= f * p;
      }
    }
    basis[row] = col;
  }

  // Bland: entering = lowest-index column with negative reduced cost;
  // leaving = lexicographic-min ratio with lowest basic index as tie-break.
  // Returns Optimal, Unbounded (entering column reported via *ray_col), or
  // keeps pivoting.
  Status run(int* ray_col) {
    while (true) {
      int entering = -1;
      for (int j = 0; j < cols; ++j) {
        if (sgn(t(m, j)) < 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return Status::Optimal;

      int leaving = -1;
      Rational best_ratio;
      for (int i = 0; i < m; ++i) {
        if (sgn(t(i, entering)) <= 0) continue;
        Rational ratio = t(i, cols) / t(i, entering);
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) {
        if (ray_col) *ray_col = entering;
        return Status::Unbounded;
      }
      pivot(leaving, entering);
    }
  }
};

}  // namespace

Solution solve(const Problem& problem) {
  const int n = problem.num_vars;
  const int m = static_cast<int>(problem.rows.size());
  for (const auto& row : problem.rows)
    if (row.size() != n) throw std::invalid_argument("LP row arity mismatch");
  if (problem.objective.size() != n) throw std::invalid_argument("LP objective arity mismatch");

  // Normalize to b >= 0 and count auxiliary columns.
  std::vector<VectorQ> rows = problem.rows;
  std::vector<Rational> rhs = problem.rhs;
  std::vector<RowType> types = problem.types;
  for (int i = 0; i < m; ++i) {
    if (sgn(rhs[i]) < 0) {
      rows[i] = -rows[i];
      rhs[i] = -rhs[i];
      if (types[i] == RowType::LessEq)
        types[i] = RowType::GreaterEq;
      else if (types[i] == RowType::GreaterEq)
        types[i] = RowType::LessEq;
    }
  }

  int slack_count = 0, artificial_count = 0;
  for (int i = 0; i < m; ++i) {
    if (types[i] != RowType::Equal) ++slack_count;
    if (types[i] == RowType::Equal || types[i] == RowType::GreaterEq) ++artificial_count;
  }

  const int total = n + slack_count + artificial_count;
  Tableau tab;
  tab.m = m;
  tab.cols = total;
  tab.t = MatrixQ::Zero(m + 1, total + 1);
  tab.basis.assign(m, -1);

  int next_slack = n;
  int next_artificial = n + slack_count;
  std::vector<bool> is_artificial(total, false);

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab.t(i, j) = rows[i][j];
    tab.t(i, total) = rhs[i];
    if (types[i] == RowType::LessEq) {
      tab.t(i, next_slack) = 1;
      tab.basis[i] = next_slack++;
    } else if (types[i] == RowType::GreaterEq) {
      tab.t(i, next_slack++) = -1;  // surplus
      tab.t(i, next_artificial) = 1;
      is_artificial[next_artificial] = true;
      tab.basis[i] = next_artificial++;
    } else {
      tab.t(i, next_artificial) = 1;
      is_artificial[next_artificial] = true;
      tab.basis[i] = next_artificial++;
    }
  }

  // Phase 1: maximize -(sum of artificials), priced out for the initial basis.
  if (artificial_count > 0) {
    for (int i = 0; i < m; ++i)
      if (is_artificial[tab.basis[i]]) tab.t.row(m) -= tab.t.row(i);
    for (int j = n + slack_count; j < total; ++j) tab.t(m, j) += 1;

    Status s = tab.run(nullptr);
    if (s != Status::Optimal) throw std::logic_error("phase 1 cannot be unbounded");
    if (sgn(tab.t(m, total)) != 0) {
      Solution sol;
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive any degenerate artificial out of the basis.
    for (int i = 0; i < m; ++i) {
      if (!is_artificial[tab.basis[i]]) continue;
      int col = -1;
      for (int j = 0; j < n + slack_count; ++j) {
        if (sgn(tab.t(i, j)) != 0) {
          col = j;
          break;
        }
      }
      if (col >= 0) tab.pivot(i, col);
      // else: redundant row; the artificial stays basic at value zero and
      // its column is frozen below.
    }
    // Freeze artificial columns.
    for (int j = n + slack_count; j < total; ++j)
      for (int r = 0; r <= m; ++r) tab.t(r, j) = 0;
  }

  // Phase 2 objective, priced out against the current basis.
  tab.t.row(m).setZero();
  for (int j = 0; j < n; ++j) tab.t(m, j) = -problem.objective[j];
  for (int i = 0; i < m; ++i) {
    int b = tab.basis[i];
    if (b < n && sgn(problem.objective[b]) != 0)
      tab.t.row(m) += problem.objective[b] * tab.t.row(i);
  }
  for (int j = 0; j < total; ++j) {
    // keep frozen artificial columns out of the pricing
    if (is_artificial[j]) tab.t(m, j) = 0;
  }

  int ray_col = -1;
  Status s = tab.run(&ray_col);

  Solution sol;
  sol.x = VectorQ::Zero(n);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < n) sol.x[tab.basis[i]] = tab.t(i, total);

  if (s == Status::Unbounded) {
    sol.status = Status::Unbounded;
    sol.ray = VectorQ::Zero(n);
    if (ray_col < n) sol.ray[ray_col] = 1;
    for (int i = 0; i < m; ++i)
      if (tab.basis[i] < n) sol.ray[tab.basis[i]] = -tab.t(i, ray_col);
    return sol;
  }

  sol.status = Status::Optimal;
  sol.objective = 0;
  for (int j = 0; j < n; ++j) sol.objective += problem.objective[j] * sol.x[j];
  return sol;
}

}  // namespace implic::lp
