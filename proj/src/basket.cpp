#include "implic/basket.hpp"

#include <stdexcept>

namespace implic {

BasketSet::BasketSet(UniversePtr u, std::vector<Mask> b)
    : universe(std::move(u)), baskets(std::move(b)) {
  if (baskets.empty()) throw std::invalid_argument("basket set needs at least one basket");
  for (Mask m : baskets)
    if (m & ~universe->full_mask())
      throw std::invalid_argument("basket contains items outside the universe");
}

SupportFunction support(const BasketSet& baskets) {
  SupportFunction f;
  f.universe = baskets.universe;
  f.values.assign(baskets.universe->subset_count(), 0);
  for (Mask b : baskets.baskets) f.values[b] += 1;
  superset_zeta(f.values, baskets.universe->size());
  return f;
}

std::int64_t density(const SupportFunction& f, Mask w) {
  Mask rest = f.universe->full_mask() & ~w;
  std::int64_t d = 0;
  Mask s = 0;
  while (true) {
    if (popcount(s) % 2 == 0)
      d += f.values[w | s];
    else
      d -= f.values[w | s];
    if (s == rest) break;
    s = (s - rest) & rest;
  }
  return d;
}

SetFunctionQ to_polymatroid(const BasketSet& baskets) {
  SupportFunction f = support(baskets);
  Rational n(static_cast<unsigned long>(baskets.size()));
  VectorQ values(Eigen::Index(baskets.universe->subset_count()));
  for (Mask w = 0; w < baskets.universe->subset_count(); ++w)
    values[w] = n - Rational(static_cast<long>(f.values[w]));
  return SetFunctionQ(baskets.universe, std::move(values));
}

BasketSet baskets_from_cone_point(const std::map<Mask, std::uint64_t>& coeffs, std::uint64_t n,
                                  const UniversePtr& universe) {
  std::uint64_t used = 0;
  std::vector<Mask> baskets;
  for (const auto& [mask, count] : coeffs) {
    if (mask == universe->full_mask())
      throw std::invalid_argument("cone-point coefficients index proper subsets only");
    used += count;
    for (std::uint64_t i = 0; i < count; ++i) baskets.push_back(mask);
  }
  if (n < used)
    throw std::invalid_argument("basket count is smaller than the sum of coefficients");
  for (std::uint64_t i = used; i < n; ++i) baskets.push_back(universe->full_mask());
  return BasketSet(universe, std::move(baskets));
}

Constraint to_differential(const Constraint& c) {
  if (c.kind == Constraint::Kind::Differential) return c;
  AtomSet atoms = atom_set(c);
  if (atoms.members.empty())
    throw std::invalid_argument("constraint " + to_string(c) +
                                " has no atoms; it is identically zero");
  return Constraint::differential(c.universe, atoms.members);
}

Verdict differential_implication(const std::vector<Constraint>& sigma, const Constraint& tau) {
  const UniversePtr& u = tau.universe;
  std::vector<Constraint> sigma_atoms;
  sigma_atoms.reserve(sigma.size());
  for (const auto& s : sigma) {
    require_same_universe(u, s.universe);
    sigma_atoms.push_back(to_differential(s));
  }
  std::vector<Mask> target =
      tau.kind == Constraint::Kind::Differential ? tau.atoms : atom_set(tau).members;

  Verdict v;
  v.holds = true;
  for (Mask w : target) {
    bool covered = false;
    for (std::size_t i = 0; i < sigma_atoms.size(); ++i) {
      for (Mask a : sigma_atoms[i].atoms) {
        if (a == w) {
          v.atom_cover.emplace_back(w, i);
          covered = true;
          break;
        }
      }
      if (covered) break;
    }
    if (!covered) {
      v.holds = false;
      v.atom_cover.clear();
      v.witness_step = w;
      v.witness = step_function(VarSet(u, w));
      return v;
    }
  }
  return v;
}

}  // namespace implic
