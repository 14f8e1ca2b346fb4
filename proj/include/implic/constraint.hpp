#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "implic/set_function.hpp"
#include "implic/universe.hpp"

namespace implic {

/// A parsed constraint term:
///  - CI (Y;Z|X), degree I_h(Y;Z|X); written X -> Y and called a conditional
///    when Y = Z (stored with kind Conditional, evaluated as CI(Y,Y,X));
///  - Differential, a sum of I-measure atoms -sum_i d_h(W_i) with W_i a
///    proper subset of the universe.
struct Constraint {
  enum class Kind { CI, Conditional, Differential };

  Kind kind = Kind::CI;
  UniversePtr universe;
  Mask first = 0;   // Y (equals second for conditionals)
  Mask second = 0;  // Z
  Mask cond = 0;    // X
  std::vector<Mask> atoms;  // Differential only: the W_i, each a proper subset

  static Constraint ci(const VarSet& y, const VarSet& z, const VarSet& x) {
    require_same_universe(y.universe, z.universe);
    require_same_universe(y.universe, x.universe);
    Constraint c;
    c.kind = Kind::CI;
    c.universe = y.universe;
    c.first = y.mask;
    c.second = z.mask;
    c.cond = x.mask;
    return c;
  }

  static Constraint conditional(const VarSet& x, const VarSet& y) {
    require_same_universe(x.universe, y.universe);
    Constraint c;
    c.kind = Kind::Conditional;
    c.universe = x.universe;
    c.first = y.mask;
    c.second = y.mask;
    c.cond = x.mask;
    return c;
  }

  static Constraint differential(UniversePtr u, std::vector<Mask> atom_list) {
    if (atom_list.empty())
      throw std::invalid_argument("differential constraint needs at least one atom");
    for (Mask w : atom_list) {
      if (w & ~u->full_mask())
        throw std::invalid_argument("differential atom outside the universe");
      if (w == u->full_mask())
        throw std::invalid_argument("differential atom must be a proper subset");
    }
    std::sort(atom_list.begin(), atom_list.end());
    if (std::adjacent_find(atom_list.begin(), atom_list.end()) != atom_list.end())
      throw std::invalid_argument("differential constraint lists an atom twice");
    Constraint c;
    c.kind = Kind::Differential;
    c.universe = std::move(u);
    c.atoms = std::move(atom_list);
    return c;
  }

  bool is_ci_like() const { return kind != Kind::Differential; }

  Mask vars() const {
    if (kind == Kind::Differential) throw std::invalid_argument("differential has no CI shape");
    return first | second | cond;
  }

  /// Coefficient vector of the measure, as (mask, rational) with like terms
  /// collapsed and the h(empty) coordinate dropped. For a CI (Y;Z|X):
  /// +1 on XY, +1 on XZ, -1 on XYZ, -1 on X.
  std::map<Mask, Rational> coefficients() const {
    if (kind == Kind::Differential)
      throw std::invalid_argument("differential constraints have no single CI vector");
    std::map<Mask, Rational> v;
    auto add = [&v](Mask m, int c) {
      if (m == 0) return;
      auto it = v.emplace(m, 0).first;
      it->second += c;
      if (sgn(it->second) == 0) v.erase(it);
    };
    add(cond | first, +1);
    add(cond | second, +1);
    add(cond | first | second, -1);
    add(cond, -1);
    return v;
  }

  bool has_zero_vector() const { return is_ci_like() && coefficients().empty(); }

  bool operator==(const Constraint& o) const {
    return kind == o.kind && same_universe(universe, o.universe) && first == o.first &&
           second == o.second && cond == o.cond && atoms == o.atoms;
  }
};

/// An implication Sigma => tau over one universe. Sigma may be empty.
struct Implication {
  std::vector<Constraint> antecedents;
  Constraint consequent;

  Implication(std::vector<Constraint> sigma, Constraint tau)
      : antecedents(std::move(sigma)), consequent(std::move(tau)) {
    for (const auto& c : antecedents)
      require_same_universe(c.universe, consequent.universe);
  }

  const UniversePtr& universe() const { return consequent.universe; }
};

struct Classification {
  bool saturated = false;    // X u Y u Z covers the universe
  bool conditional = false;  // Y = Z
  bool elemental = false;    // |Y| = |Z| = 1
  bool marginal = false;     // X empty
};

inline Classification classify(const Constraint& c) {
  if (c.kind == Constraint::Kind::Differential)
    throw std::invalid_argument("classification is undefined for differential constraints");
  Classification r;
  r.saturated = (c.first | c.second | c.cond) == c.universe->full_mask();
  r.conditional = c.kind == Constraint::Kind::Conditional || c.first == c.second;
  r.elemental = popcount(c.first) == 1 && popcount(c.second) == 1;
  r.marginal = c.cond == 0;
  return r;
}

/// Two CIs (X;Y|Z) and (A;B|C) are disjoint when X in C, Y in C, A in Z or
/// B in Z. No step function can then score 1 on both.
inline bool are_disjoint(const Constraint& a, const Constraint& b) {
  if (!a.is_ci_like() || !b.is_ci_like())
    throw std::invalid_argument("disjointness is defined for CI terms only");
  require_same_universe(a.universe, b.universe);
  return (a.first & ~b.cond) == 0 || (a.second & ~b.cond) == 0 ||
         (b.first & ~a.cond) == 0 || (b.second & ~a.cond) == 0;
}

/// Replaces every non-saturated conditional X -> Y with the pair
/// { (Y;Z|X), XZ -> Y }, Z = Omega \ XY. The measure sum is preserved for
/// every set function: h(Y|X) = I_h(Y;Z|X) + h(Y|XZ).
inline std::vector<Constraint> saturate_conditionals(const std::vector<Constraint>& sigma) {
  std::vector<Constraint> out;
  for (const auto& c : sigma) {
    if (!c.is_ci_like())
      throw std::invalid_argument("saturate_conditionals expects CI terms");
    Classification cls = classify(c);
    if (!cls.saturated && !cls.conditional)
      throw std::invalid_argument("antecedents must be saturated or conditional");
    if (cls.saturated) {
      out.push_back(c);
      continue;
    }
    Mask full = c.universe->full_mask();
    Mask z = full & ~(c.cond | c.first);
    // z nonempty here: a conditional with XY = Omega is saturated already
    VarSet x(c.universe, c.cond), y(c.universe, c.first), zs(c.universe, z);
    out.push_back(Constraint::ci(y, zs, x));
    out.push_back(Constraint::conditional(x | zs, y));
  }
  return out;
}

/// Degree of a constraint on a model: CIs via conditional mutual
/// information, conditionals via conditional entropy, differentials via the
/// atom measure sum_i -d_h(W_i).
template <class Scalar>
Scalar eval_constraint(const SetFunction<Scalar>& h, const Constraint& c) {
  require_same_universe(h.universe(), c.universe);
  if (c.kind == Constraint::Kind::Differential) {
    Scalar total(0);
    Mask full = c.universe->full_mask();
    for (Mask w : c.atoms) {
      Mask rest = full & ~w;
      Scalar d(0);
      Mask s = 0;
      while (true) {  // d_h(w) = sum over supersets, alternating
        if (popcount(s) % 2 == 0)
          d += h(w | s);
        else
          d -= h(w | s);
        if (s == rest) break;
        s = (s - rest) & rest;
      }
      total -= d;
    }
    return total;
  }
  VarSet y(c.universe, c.first), z(c.universe, c.second), x(c.universe, c.cond);
  if (c.kind == Constraint::Kind::Conditional) return cond_entropy(h, y, x);
  return mutual_info(h, y, z, x);
}

template <class Scalar>
Scalar eval_sum(const SetFunction<Scalar>& h, const std::vector<Constraint>& sigma) {
  Scalar total(0);
  for (const auto& c : sigma) total += eval_constraint(h, c);
  return total;
}

/// Step-function evaluation in closed form: I_{h_U}(Y;Z|X) = 1 iff X in U
/// and Y, Z not in U; 0 otherwise. Differentials count atoms equal to U.
inline int step_eval(Mask u, const Constraint& c) {
  if (c.kind == Constraint::Kind::Differential) {
    int total = 0;
    for (Mask w : c.atoms) total += (w == u) ? 1 : 0;
    return total;
  }
  bool one = (c.cond & ~u) == 0 && (c.first & ~u) != 0 && (c.second & ~u) != 0;
  return one ? 1 : 0;
}

inline int step_eval_sum(Mask u, const std::vector<Constraint>& sigma) {
  int total = 0;
  for (const auto& c : sigma) total += step_eval(u, c);
  return total;
}

/// Canonical text form; parse(print(c)) == c. CIs print as I(Y;Z|X),
/// conditionals as H(Y|X), differentials as D: {W1} + {W2}.
inline std::string to_string(const Constraint& c) {
  const VarUniverse& u = *c.universe;
  switch (c.kind) {
    case Constraint::Kind::CI: {
      std::string s = "I(" + mask_to_string(u, c.first) + ";" + mask_to_string(u, c.second);
      if (c.cond != 0) s += "|" + mask_to_string(u, c.cond);
      return s + ")";
    }
    case Constraint::Kind::Conditional: {
      std::string s = "H(" + mask_to_string(u, c.first);
      if (c.cond != 0) s += "|" + mask_to_string(u, c.cond);
      return s + ")";
    }
    case Constraint::Kind::Differential: {
      std::string s = "D:";
      for (std::size_t i = 0; i < c.atoms.size(); ++i) {
        s += i == 0 ? " " : " + ";
        s += "{" + mask_to_string(u, c.atoms[i]) + "}";
      }
      return s;
    }
  }
  return {};
}

}  // namespace implic
