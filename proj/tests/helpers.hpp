#pragma once

#include <random>
#include <string>
#include <vector>

#include "implic/constraint.hpp"
#include "implic/models.hpp"
#include "implic/set_function.hpp"
#include "implic/universe.hpp"

namespace implic::test {

using Rng = std::mt19937_64;

inline UniversePtr letters(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>('A' + i));
  return make_universe(std::move(names));
}

inline Mask random_mask(Rng& rng, const UniversePtr& u, bool allow_empty = true) {
  std::uniform_int_distribution<Mask> dist(0, u->full_mask());
  Mask m = dist(rng);
  if (!allow_empty && m == 0) m = Mask(1) << (rng() % u->size());
  return m;
}

inline Rational random_rational(Rng& rng, int num_range = 20, int den_range = 8) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Arbitrary rational set function with h(empty) = 0 (not a polymatroid in
/// general).
inline SetFunctionQ random_set_function(Rng& rng, const UniversePtr& u) {
  VectorQ values(Eigen::Index(u->subset_count()));
  values[0] = 0;
  for (Mask w = 1; w < u->subset_count(); ++w) values[w] = random_rational(rng);
  return SetFunctionQ(u, std::move(values));
}

/// Random conic combination of step functions: a positive polymatroid.
inline SetFunctionQ random_positive_polymatroid(Rng& rng, const UniversePtr& u) {
  VectorQ values = VectorQ::Zero(Eigen::Index(u->subset_count()));
  std::uniform_int_distribution<int> coeff(0, 4);
  std::uniform_int_distribution<int> pick(0, 2);
  for (Mask m = 0; m < u->full_mask(); ++m) {
    if (pick(rng) != 0) continue;
    Rational c(coeff(rng));
    if (sgn(c) == 0) continue;
    for (Mask w = 1; w < u->subset_count(); ++w)
      if (w & ~m) values[w] += c;
  }
  return SetFunctionQ(u, std::move(values));
}

/// Random saturated CI (Y;Z|X) with nonempty Y, Z; overlaps allowed.
inline Constraint random_saturated_ci(Rng& rng, const UniversePtr& u) {
  while (true) {
    Mask y = 0, z = 0, x = 0;
    for (int i = 0; i < u->size(); ++i) {
      switch (rng() % 4) {
        case 0: x |= Mask(1) << i; break;
        case 1: y |= Mask(1) << i; break;
        case 2: z |= Mask(1) << i; break;
        default: y |= Mask(1) << i; z |= Mask(1) << i; break;
      }
    }
    if (y == 0 || z == 0) continue;
    return Constraint::ci(VarSet(u, y), VarSet(u, z), VarSet(u, x));
  }
}

inline Constraint random_conditional(Rng& rng, const UniversePtr& u) {
  Mask x = random_mask(rng, u);
  Mask y = random_mask(rng, u, false);
  return Constraint::conditional(VarSet(u, x), VarSet(u, y));
}

inline Constraint random_ci(Rng& rng, const UniversePtr& u) {
  Mask y = random_mask(rng, u, false);
  Mask z = random_mask(rng, u, false);
  Mask x = random_mask(rng, u);
  return Constraint::ci(VarSet(u, y), VarSet(u, z), VarSet(u, x));
}

inline Relation random_relation(Rng& rng, const UniversePtr& u, int max_rows = 30,
                                int domain = 3) {
  std::uniform_int_distribution<int> nrows(1, max_rows);
  std::uniform_int_distribution<int> val(0, domain - 1);
  int rows = nrows(rng);
  std::vector<std::vector<std::string>> data;
  for (int r = 0; r < rows; ++r) {
    std::vector<std::string> row;
    for (int i = 0; i < u->size(); ++i) row.push_back(std::to_string(val(rng)));
    data.push_back(std::move(row));
  }
  return Relation(u, std::move(data));
}

inline Distribution random_distribution(Rng& rng, const UniversePtr& u, int max_support = 3) {
  std::uniform_int_distribution<int> val(0, max_support - 1);
  std::uniform_real_distribution<double> massd(0.05, 1.0);
  std::vector<std::pair<std::vector<std::string>, double>> outcomes;
  std::vector<std::vector<std::string>> seen;
  int want = 1 + static_cast<int>(rng() % 8);
  double total = 0;
  for (int t = 0; t < 64 && static_cast<int>(outcomes.size()) < want; ++t) {
    std::vector<std::string> tuple;
    for (int i = 0; i < u->size(); ++i) tuple.push_back(std::to_string(val(rng)));
    if (std::find(seen.begin(), seen.end(), tuple) != seen.end()) continue;
    seen.push_back(tuple);
    double m = massd(rng);
    total += m;
    outcomes.emplace_back(std::move(tuple), m);
  }
  for (auto& [tuple, p] : outcomes) p /= total;
  // renormalize the last entry so the masses sum to 1 exactly enough
  double sum = 0;
  for (auto& [tuple, p] : outcomes) sum += p;
  outcomes.back().second += 1.0 - sum;
  return Distribution(u, std::move(outcomes));
}

}  // namespace implic::test
