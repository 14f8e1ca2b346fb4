#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <utility>
#include <vector>

#include "implic/rational.hpp"
#include "implic/universe.hpp"

namespace implic {

/// A value h(W) for every W subseteq [n], stored dense and indexed by
/// bitmask; h(empty) = 0 is enforced at construction. Scalar is Rational
/// (exact mode) or double (approximate mode, for empirical entropies).
template <class Scalar>
class SetFunction {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  SetFunction(UniversePtr universe, Vector values)
      : universe_(std::move(universe)), values_(std::move(values)) {
    if (!universe_) throw std::invalid_argument("SetFunction requires a universe");
    if (static_cast<std::size_t>(values_.size()) != universe_->subset_count())
      throw std::invalid_argument("SetFunction needs one value per subset");
    if (!NumericMode<Scalar>::is_zero(values_[0]))
      throw std::invalid_argument("SetFunction requires h(empty) = 0");
    values_[0] = Scalar(0);
  }

  static SetFunction zero(UniversePtr universe) {
    Vector v = Vector::Zero(Eigen::Index(universe->subset_count()));
    return SetFunction(std::move(universe), std::move(v));
  }

  const UniversePtr& universe() const { return universe_; }
  int vars() const { return universe_->size(); }
  Eigen::Index size() const { return values_.size(); }

  const Scalar& operator()(Mask w) const { return values_[w]; }
  Scalar operator()(const VarSet& w) const {
    require_same_universe(universe_, w.universe);
    return values_[w.mask];
  }
  const Vector& values() const { return values_; }

  friend SetFunction operator+(const SetFunction& a, const SetFunction& b) {
    require_same_universe(a.universe_, b.universe_);
    return SetFunction(a.universe_, a.values_ + b.values_);
  }
  friend SetFunction operator*(const Scalar& c, const SetFunction& a) {
    return SetFunction(a.universe_, (c * a.values_).eval());
  }
  bool operator==(const SetFunction& other) const {
    return same_universe(universe_, other.universe_) && values_ == other.values_;
  }

 private:
  UniversePtr universe_;
  Vector values_;
};

using SetFunctionQ = SetFunction<Rational>;
using SetFunctionD = SetFunction<double>;

/// h(B|A) = h(AB) - h(A)
template <class Scalar>
Scalar cond_entropy(const SetFunction<Scalar>& h, const VarSet& b, const VarSet& a) {
  require_same_universe(h.universe(), b.universe);
  require_same_universe(h.universe(), a.universe);
  return h(a.mask | b.mask) - h(a.mask);
}

/// I_h(B;C|A) = h(AB) + h(AC) - h(ABC) - h(A)
template <class Scalar>
Scalar mutual_info(const SetFunction<Scalar>& h, const VarSet& b, const VarSet& c,
                   const VarSet& a) {
  require_same_universe(h.universe(), b.universe);
  require_same_universe(h.universe(), c.universe);
  require_same_universe(h.universe(), a.universe);
  return h(a.mask | b.mask) + h(a.mask | c.mask) - h(a.mask | b.mask | c.mask) - h(a.mask);
}

/// Checks the chain rule I_h(B;CD|A) = I_h(B;C|A) + I_h(B;D|AC), an
/// algebraic identity on any set function. Exists as a self-test primitive.
template <class Scalar>
bool chain_rule_check(const SetFunction<Scalar>& h, const VarSet& b, const VarSet& c,
                      const VarSet& d, const VarSet& a) {
  Scalar lhs = mutual_info(h, b, c | d, a);
  Scalar rhs = mutual_info(h, b, c, a) + mutual_info(h, b, d, a | c);
  return NumericMode<Scalar>::is_zero(Scalar(lhs - rhs));
}

/// One generator of the polymatroid cone: either h([n]) - h([n]\{i}) >= 0
/// or h(Ki) + h(Kj) - h(Kij) - h(K) >= 0 with i < j, K disjoint from {i,j}.
struct ElementalInequality {
  enum class Kind { Monotonicity, Submodularity };
  Kind kind = Kind::Monotonicity;
  int i = 0;
  int j = 0;        // submodularity only
  Mask cond = 0;    // submodularity only

  /// Sparse coefficient vector: (subset mask, +-1) pairs, collapsed.
  std::vector<std::pair<Mask, int>> terms(const VarUniverse& u) const {
    if (kind == Kind::Monotonicity) {
      Mask full = u.full_mask();
      Mask rest = full & ~(Mask(1) << i);
      std::vector<std::pair<Mask, int>> t = {{full, +1}};
      if (rest != 0) t.emplace_back(rest, -1);  // h(empty) carries no coordinate
      return t;
    }
    Mask bi = Mask(1) << i, bj = Mask(1) << j;
    std::vector<std::pair<Mask, int>> t = {
        {Mask(cond | bi), +1}, {Mask(cond | bj), +1}, {Mask(cond | bi | bj), -1}};
    if (cond != 0) t.emplace_back(cond, -1);  // h(empty) carries no coordinate
    return t;
  }

  template <class Scalar>
  Scalar apply(const SetFunction<Scalar>& h) const {
    Scalar v(0);
    for (auto [mask, coef] : terms(*h.universe())) v += Scalar(coef) * h(mask);
    return v;
  }

  bool operator==(const ElementalInequality& o) const {
    return kind == o.kind && i == o.i && j == o.j && cond == o.cond;
  }
  bool operator<(const ElementalInequality& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return cond < o.cond;
  }

  std::string to_string(const VarUniverse& u) const {
    if (kind == Kind::Monotonicity) return "mono(" + u.name(i) + ")";
    return "sub(" + u.name(i) + "," + u.name(j) + "|" + mask_to_string(u, cond) + ")";
  }
};

/// The n + C(n,2) * 2^(n-2) generators of Gamma_n, deterministically ordered:
/// monotonicity by i, then submodularity by (i, j, K) lexicographic.
inline std::vector<ElementalInequality> elemental_inequalities(const VarUniverse& u) {
  std::vector<ElementalInequality> out;
  int n = u.size();
  for (int i = 0; i < n; ++i)
    out.push_back({ElementalInequality::Kind::Monotonicity, i, 0, 0});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Mask rest = u.full_mask() & ~(Mask(1) << i) & ~(Mask(1) << j);
      // enumerate K subseteq rest in increasing mask order
      Mask k = 0;
      while (true) {
        out.push_back({ElementalInequality::Kind::Submodularity, i, j, k});
        if (k == rest) break;
        k = (k - rest) & rest;  // next subset of rest
      }
    }
  }
  return out;
}

/// True iff every elemental inequality is nonnegative on h; equivalent to
/// full monotonicity plus submodularity.
template <class Scalar>
bool is_polymatroid(const SetFunction<Scalar>& h) {
  for (const auto& e : elemental_inequalities(*h.universe()))
    if (!NumericMode<Scalar>::nonnegative(e.apply(h))) return false;
  return true;
}

}  // namespace implic
