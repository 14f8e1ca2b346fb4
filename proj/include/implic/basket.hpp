#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "implic/constraint.hpp"
#include "implic/deciders.hpp"
#include "implic/imeasure.hpp"
#include "implic/universe.hpp"

namespace implic {

/// A multiset of baskets over an item universe. Duplicates matter: the
/// support function counts baskets, not basket types.
struct BasketSet {
  UniversePtr universe;
  std::vector<Mask> baskets;

  BasketSet(UniversePtr u, std::vector<Mask> b);
  std::size_t size() const { return baskets.size(); }
};

/// f(W) = number of baskets containing W; f(empty) = N and f is
/// nonincreasing under supersets.
struct SupportFunction {
  UniversePtr universe;
  std::vector<std::int64_t> values;  // indexed by mask

  std::int64_t operator()(Mask w) const { return values[w]; }
  std::int64_t operator()(const VarSet& w) const {
    require_same_universe(universe, w.universe);
    return values[w.mask];
  }
};

SupportFunction support(const BasketSet& baskets);

/// d_f(W): alternating superset sum of a support function; equals the
/// number of baskets exactly equal to W.
std::int64_t density(const SupportFunction& f, Mask w);

/// h = N - f, a positive polymatroid equal to the sum of the step
/// functions at the baskets (full baskets contribute the zero function).
SetFunctionQ to_polymatroid(const BasketSet& baskets);

/// Inverse of to_polymatroid on cone points: a basket multiset with each
/// proper subset U occurring coeffs[U] times and the full set filling up
/// to N baskets. Requires N >= sum of the coefficients.
BasketSet baskets_from_cone_point(const std::map<Mask, std::uint64_t>& coeffs, std::uint64_t n,
                                  const UniversePtr& universe);

/// Converts a CI term into the equivalent I-measure constraint over its
/// atom set.
Constraint to_differential(const Constraint& c);

/// Degree of an I-measure constraint: the sum of the atom values
/// -d_h(W_i); nonnegative whenever h is a positive polymatroid.
template <class Scalar>
Scalar eval_imeasure_constraint(const SetFunction<Scalar>& h, const Constraint& c) {
  if (c.kind != Constraint::Kind::Differential)
    return eval_constraint(h, to_differential(c));
  return eval_constraint(h, c);
}

/// Exact implication of I-measure constraints over the positive
/// polymatroids: holds iff every consequent atom appears in some
/// antecedent, in which case the unit relaxation h(tau) <= h(Sigma) is
/// certified by the atom mapping; otherwise the step function at an
/// uncovered atom is the counter-model.
Verdict differential_implication(const std::vector<Constraint>& sigma, const Constraint& tau);

}  // namespace implic
