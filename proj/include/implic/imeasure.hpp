#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "implic/constraint.hpp"
#include "implic/set_function.hpp"
#include "implic/universe.hpp"

namespace implic {

/// In-place superset Moebius transform: a[W] <- sum_{Z >= W} (-1)^{|Z-W|} a[Z].
/// O(n 2^n); inverse of the superset zeta transform below.
template <class Vector>
void superset_mobius(Vector& a, int n) {
  for (int bit = 0; bit < n; ++bit) {
    Mask b = Mask(1) << bit;
    for (Mask w = 0; w < (Mask(1) << n); ++w)
      if (!(w & b)) a[w] -= a[w | b];
  }
}

/// In-place superset zeta transform: a[W] <- sum_{Z >= W} a[Z].
template <class Vector>
void superset_zeta(Vector& a, int n) {
  for (int bit = 0; bit < n; ++bit) {
    Mask b = Mask(1) << bit;
    for (Mask w = 0; w < (Mask(1) << n); ++w)
      if (!(w & b)) a[w] += a[w | b];
  }
}

/// Density of a set-shaped function: d_f(W) = sum_{Z >= W} (-1)^{|Z-W|} f(Z).
/// For polymatroids -d_h(W) is the I-measure of the atom at W; for basket
/// support functions d_f(W) counts the baskets exactly equal to W.
template <class Scalar>
Scalar density(const SetFunction<Scalar>& f, const VarSet& w) {
  require_same_universe(f.universe(), w.universe);
  Mask rest = f.universe()->full_mask() & ~w.mask;
  Scalar d(0);
  Mask s = 0;
  while (true) {
    if (popcount(s) % 2 == 0)
      d += f(w.mask | s);
    else
      d -= f(w.mask | s);
    if (s == rest) break;
    s = (s - rest) & rest;
  }
  return d;
}

/// The signed measure mu* on the 2^n - 1 nonempty atoms of the field
/// generated by the variable sets. Atoms are canonically identified by
/// their negative-set U (the variables appearing complemented), U a proper
/// subset of the universe; the atom at U is where the step function h_U
/// concentrates its unit of measure.
template <class Scalar>
class IMeasure {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  IMeasure(UniversePtr universe, Vector atom_values)
      : universe_(std::move(universe)), values_(std::move(atom_values)) {
    if (static_cast<std::size_t>(values_.size()) != universe_->subset_count() - 1)
      throw std::invalid_argument("IMeasure needs one value per nonempty atom");
  }

  const UniversePtr& universe() const { return universe_; }
  std::size_t atom_count() const { return values_.size(); }

  /// Value on the atom with negative-set U.
  const Scalar& atom(Mask negative_set) const {
    if (negative_set >= universe_->full_mask())
      throw std::invalid_argument("no atom has the full negative-set");
    return values_[negative_set];
  }

  bool all_nonnegative() const {
    for (Eigen::Index i = 0; i < values_.size(); ++i)
      if (!NumericMode<Scalar>::nonnegative(values_[i])) return false;
    return true;
  }

  /// mu*(m(X_W)) = sum over atoms whose negative-set does not contain W.
  Scalar reconstruct(Mask w) const {
    Scalar total(0);
    for (Mask u = 0; u < universe_->full_mask(); ++u)
      if (w & ~u) total += values_[u];
    return total;
  }

  SetFunction<Scalar> to_set_function() const {
    Vector vals(Eigen::Index(universe_->subset_count()));
    for (Mask w = 0; w < universe_->subset_count(); ++w) vals[w] = reconstruct(w);
    return SetFunction<Scalar>(universe_, std::move(vals));
  }

 private:
  UniversePtr universe_;
  Vector values_;  // indexed by negative-set mask U in [0, 2^n - 1)
};

/// Moebius inversion of h(Omega|Z) over the superset lattice: the atom at
/// negative-set U receives delta_h(U) = sum_{Z >= U} (-1)^{|Z-U|} h(Omega|Z),
/// which equals -d_h(U) on proper subsets. Reconstruction recovers h.
template <class Scalar>
IMeasure<Scalar> i_measure(const SetFunction<Scalar>& h) {
  const UniversePtr& u = h.universe();
  int n = u->size();
  typename IMeasure<Scalar>::Vector g(Eigen::Index(u->subset_count()));
  const Scalar& top = h(u->full_mask());
  for (Mask w = 0; w < u->subset_count(); ++w) g[w] = top - h(w);
  superset_mobius(g, n);
  return IMeasure<Scalar>(u, g.head(Eigen::Index(u->subset_count() - 1)));
}

/// Coefficients of h in the step-function basis: h = sum_U (-d_h(U)) h_U.
/// Computed via the density transform of h itself, a route independent of
/// i_measure's h(Omega|Z) inversion.
template <class Scalar>
std::map<Mask, Scalar> step_decomposition(const SetFunction<Scalar>& h) {
  const UniversePtr& u = h.universe();
  typename SetFunction<Scalar>::Vector d = h.values();
  superset_mobius(d, u->size());
  std::map<Mask, Scalar> coeffs;
  for (Mask w = 0; w < u->full_mask(); ++w) {
    Scalar c = -d[w];
    if (!NumericMode<Scalar>::is_zero(c)) coeffs.emplace(w, std::move(c));
  }
  return coeffs;
}

/// True iff the I-measure of h is nonnegative on every atom; equivalently
/// h lies in the conic hull of the step functions.
template <class Scalar>
bool is_positive_polymatroid(const SetFunction<Scalar>& h) {
  return i_measure(h).all_nonnegative();
}

/// The atoms where a CI term places its measure:
/// m((Y;Z|X)) = { U proper : X in U, Y not in U, Z not in U }; these are
/// exactly the step functions evaluating the term to 1. Differential
/// constraints list their atoms directly.
struct AtomSet {
  UniversePtr universe;
  std::vector<Mask> members;

  bool contains(Mask u) const {
    for (Mask m : members)
      if (m == u) return true;
    return false;
  }
  bool subset_of(const AtomSet& other) const {
    for (Mask m : members)
      if (!other.contains(m)) return false;
    return true;
  }
};

inline AtomSet atom_set(const Constraint& c) {
  AtomSet out;
  out.universe = c.universe;
  if (c.kind == Constraint::Kind::Differential) {
    out.members = c.atoms;
    return out;
  }
  for (Mask u = 0; u < c.universe->full_mask(); ++u)
    if (step_eval(u, c) == 1) out.members.push_back(u);
  return out;
}

inline AtomSet atom_set_union(const std::vector<Constraint>& sigma) {
  if (sigma.empty()) throw std::invalid_argument("atom set union needs a universe");
  AtomSet out;
  out.universe = sigma.front().universe;
  std::vector<bool> seen(out.universe->subset_count(), false);
  for (const auto& c : sigma)
    for (Mask u : atom_set(c).members) seen[u] = true;
  for (Mask u = 0; u < out.universe->full_mask(); ++u)
    if (seen[u]) out.members.push_back(u);
  return out;
}

}  // namespace implic
