#include "implic/models.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace implic {

namespace {

// Compensated (Kahan) accumulator; keeps the structural zeros of synthetic
// distributions clean at the 1e-12 level.
class KahanSum {
 public:
  void add(double x) {
    double y = x - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0;
  double carry_ = 0;
};

std::vector<std::string> project(const std::vector<std::string>& row, Mask w, int n) {
  std::vector<std::string> out;
  out.reserve(popcount(w));
  for (int i = 0; i < n; ++i)
    if (w >> i & 1) out.push_back(row[static_cast<std::size_t>(i)]);
  return out;
}

double entropy_of_groups(const std::map<std::vector<std::string>, double>& groups,
                         double total) {
  KahanSum h;
  for (const auto& [key, mass] : groups) {
    if (mass <= 0) continue;
    double p = mass / total;
    h.add(-p * std::log2(p));
  }
  return h.value();
}

template <class WeightFn>
SetFunctionD marginal_entropies(const UniversePtr& universe,
                                const std::vector<std::vector<std::string>>& rows,
                                WeightFn weight, double total) {
  int n = universe->size();
  VectorD values(Eigen::Index(universe->subset_count()));
  values[0] = 0;
  for (Mask w = 1; w < universe->subset_count(); ++w) {
    std::map<std::vector<std::string>, double> groups;
    for (std::size_t i = 0; i < rows.size(); ++i) groups[project(rows[i], w, n)] += weight(i);
    values[w] = entropy_of_groups(groups, total);
  }
  return SetFunctionD(universe, std::move(values));
}

}  // namespace

Relation::Relation(UniversePtr u, std::vector<std::vector<std::string>> r,
                   std::vector<std::uint64_t> w)
    : universe(std::move(u)), rows(std::move(r)), weights(std::move(w)) {
  if (rows.empty()) throw std::invalid_argument("relation needs at least one row");
  for (const auto& row : rows)
    if (row.size() != static_cast<std::size_t>(universe->size()))
      throw std::invalid_argument("relation row arity mismatch");
  if (!weights.empty()) {
    if (weights.size() != rows.size())
      throw std::invalid_argument("one weight per row required");
    for (auto v : weights)
      if (v == 0) throw std::invalid_argument("weights must be positive");
  }
}

std::uint64_t Relation::total_weight() const {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) total += weight(i);
  return total;
}

Distribution::Distribution(UniversePtr u,
                           std::vector<std::pair<std::vector<std::string>, double>> o)
    : universe(std::move(u)), outcomes(std::move(o)) {
  if (outcomes.empty()) throw std::invalid_argument("distribution needs outcomes");
  std::set<std::vector<std::string>> seen;
  KahanSum total;
  for (const auto& [tuple, p] : outcomes) {
    if (tuple.size() != static_cast<std::size_t>(universe->size()))
      throw std::invalid_argument("distribution outcome arity mismatch");
    if (p <= 0) throw std::invalid_argument("probabilities must be positive");
    if (!seen.insert(tuple).second)
      throw std::invalid_argument("distribution outcomes must be distinct");
    total.add(p);
  }
  if (std::abs(total.value() - 1.0) > 1e-12)
    throw std::invalid_argument("probabilities must sum to 1");
}

SetFunctionQ step_function(const VarSet& u, bool allow_full) {
  const UniversePtr& universe = u.universe;
  if (!allow_full && u.mask == universe->full_mask())
    throw std::invalid_argument("the full set is not a step function");
  VectorQ values(Eigen::Index(universe->subset_count()));
  for (Mask w = 0; w < universe->subset_count(); ++w)
    values[w] = (w & ~u.mask) ? 1 : 0;
  return SetFunctionQ(universe, std::move(values));
}

SetFunctionD empirical_entropy(const Relation& r) {
  double total = static_cast<double>(r.total_weight());
  return marginal_entropies(
      r.universe, r.rows, [&](std::size_t i) { return static_cast<double>(r.weight(i)); },
      total);
}

SetFunctionD distribution_entropy(const Distribution& p) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(p.outcomes.size());
  for (const auto& [tuple, prob] : p.outcomes) rows.push_back(tuple);
  return marginal_entropies(
      p.universe, rows, [&](std::size_t i) { return p.outcomes[i].second; }, 1.0);
}

bool check_fd(const Relation& r, const VarSet& x, const VarSet& y) {
  require_same_universe(r.universe, x.universe);
  require_same_universe(r.universe, y.universe);
  int n = r.universe->size();
  std::map<std::vector<std::string>, std::vector<std::string>> first_y;
  for (const auto& row : r.rows) {
    auto key = project(row, x.mask, n);
    auto val = project(row, y.mask, n);
    auto [it, inserted] = first_y.emplace(std::move(key), val);
    if (!inserted && it->second != val) return false;
  }
  return true;
}

bool check_mvd(const Relation& r, const VarSet& x, const VarSet& y, const VarSet& z) {
  require_same_universe(r.universe, x.universe);
  require_same_universe(r.universe, y.universe);
  require_same_universe(r.universe, z.universe);
  if ((x.mask | y.mask | z.mask) != r.universe->full_mask())
    throw std::invalid_argument("MVD check requires X u Y u Z to cover all attributes");
  int n = r.universe->size();

  std::map<std::vector<std::string>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < r.rows.size(); ++i)
    groups[project(r.rows[i], x.mask, n)].push_back(i);

  Mask xy = x.mask | y.mask, xz = x.mask | z.mask;
  for (const auto& [key, members] : groups) {
    for (std::size_t a : members) {
      for (std::size_t b : members) {
        bool found = false;
        for (std::size_t c : members) {
          if (project(r.rows[c], xy, n) == project(r.rows[a], xy, n) &&
              project(r.rows[c], xz, n) == project(r.rows[b], xz, n)) {
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

Distribution parity_distribution() {
  auto u = make_universe({"X", "Y", "Z"});
  std::vector<std::pair<std::vector<std::string>, double>> outcomes;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        if ((x + y + z) % 2 == 0)
          outcomes.push_back(
              {{std::to_string(x), std::to_string(y), std::to_string(z)}, 0.25});
  return Distribution(u, std::move(outcomes));
}

Distribution kr_distribution(double eps) {
  if (!(eps > 0 && eps < 0.5))
    throw std::invalid_argument("kr_distribution requires 0 < eps < 1/2");
  auto u = make_universe({"A", "B", "C", "D"});
  std::vector<std::pair<std::vector<std::string>, double>> outcomes = {
      {{"0", "0", "0", "0"}, 0.5 - eps},
      {{"0", "1", "0", "1"}, 0.5 - eps},
      {{"1", "0", "1", "0"}, eps},
      {{"1", "1", "0", "0"}, eps},
  };
  return Distribution(u, std::move(outcomes));
}

KeyRepairBound key_repair_bound(const Relation& r, const VarSet& x) {
  require_same_universe(r.universe, x.universe);
  int n = r.universe->size();

  // Set semantics: the bound is about relations as sets of tuples.
  std::set<std::vector<std::string>> distinct(r.rows.begin(), r.rows.end());
  std::vector<std::vector<std::string>> rows(distinct.begin(), distinct.end());
  Relation dedup(r.universe, rows);

  std::set<std::vector<std::string>> groups;
  for (const auto& row : rows) groups.insert(project(row, x.mask, n));

  SetFunctionD h = empirical_entropy(dedup);
  VarSet omega_minus_x = VarSet::full(r.universe) - x;
  double c = cond_entropy(h, omega_minus_x, x);
  if (c < 0) c = 0;  // guard rounding on key columns

  KeyRepairBound out;
  out.distinct_rows = rows.size();
  out.group_count = groups.size();
  out.actual_repairs = out.distinct_rows - out.group_count;
  out.entropy_gap = c;
  out.bound = (std::exp2(c) - 1.0) * static_cast<double>(out.group_count);
  return out;
}

}  // namespace implic
