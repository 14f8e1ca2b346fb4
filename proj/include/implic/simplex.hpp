#pragma once

#include <vector>

#include "implic/rational.hpp"

namespace implic::lp {

enum class RowType { LessEq, GreaterEq, Equal };
enum class Status { Optimal, Unbounded, Infeasible };

/// maximize objective . x  subject to  row_i . x (<=,=,>=) rhs_i,  x >= 0,
/// in exact rational arithmetic.
struct Problem {
  int num_vars = 0;
  VectorQ objective;           // size num_vars
  std::vector<VectorQ> rows;   // each size num_vars
  std::vector<Rational> rhs;
  std::vector<RowType> types;

  void add_row(VectorQ a, RowType t, Rational b) {
    rows.push_back(std::move(a));
    types.push_back(t);
    rhs.push_back(std::move(b));
  }
};

struct Solution {
  Status status = Status::Infeasible;
  Rational objective;
  VectorQ x;    // optimal point (Optimal) or feasible point the ray leaves from
  VectorQ ray;  // improving recession direction (Unbounded only)
};

/// Dense two-phase tableau simplex with Bland's pivot rule, so runs are
/// deterministic and terminating. Sized for desk-scale cones (hundreds of
/// rows), not for production LP workloads.
Solution solve(const Problem& problem);

}  // namespace implic::lp
