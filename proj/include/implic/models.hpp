#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "implic/set_function.hpp"
#include "implic/universe.hpp"

namespace implic {

/// A relation instance: rows of string values over the universe's
/// attributes. Duplicate rows are carried as multiplicities via weights.
struct Relation {
  UniversePtr universe;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::uint64_t> weights;  // empty means all-ones

  Relation(UniversePtr u, std::vector<std::vector<std::string>> r,
           std::vector<std::uint64_t> w = {});

  std::uint64_t weight(std::size_t row) const { return weights.empty() ? 1 : weights[row]; }
  std::uint64_t total_weight() const;
};

/// A finite joint distribution: distinct outcomes with positive
/// probabilities summing to 1 (within 1e-12).
struct Distribution {
  UniversePtr universe;
  std::vector<std::pair<std::vector<std::string>, double>> outcomes;

  Distribution(UniversePtr u, std::vector<std::pair<std::vector<std::string>, double>> o);
};

/// The step function h_U: 0 on subsets of U, 1 elsewhere; the entropy of a
/// uniform 2-tuple relation agreeing exactly on U. U must be a proper
/// subset unless allow_full is set (h_Omega == 0, used by basket models).
SetFunctionQ step_function(const VarSet& u, bool allow_full = false);

/// Lazily enumerates all 2^n - 1 step functions in increasing mask order.
class StepFunctionRange {
 public:
  explicit StepFunctionRange(UniversePtr universe) : universe_(std::move(universe)) {}

  class iterator {
   public:
    iterator(UniversePtr u, Mask m) : universe_(std::move(u)), mask_(m) {}
    SetFunctionQ operator*() const {
      return step_function(VarSet(universe_, mask_));
    }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    bool operator!=(const iterator& o) const { return mask_ != o.mask_; }
    Mask mask() const { return mask_; }

   private:
    UniversePtr universe_;
    Mask mask_;
  };

  iterator begin() const { return iterator(universe_, 0); }
  iterator end() const { return iterator(universe_, universe_->full_mask()); }
  std::size_t count() const { return universe_->subset_count() - 1; }

 private:
  UniversePtr universe_;
};

inline StepFunctionRange all_step_functions(UniversePtr universe) {
  return StepFunctionRange(std::move(universe));
}

/// Base-2 entropy of every marginal of the empirical distribution (uniform
/// over tuples, weighted by multiplicity).
SetFunctionD empirical_entropy(const Relation& r);

/// Base-2 entropy vector of a finite joint distribution.
SetFunctionD distribution_entropy(const Distribution& p);

/// Tuple-level dependency checks, used as oracles against the entropy
/// tests: X -> Y iff equal X-parts force equal Y-parts; the MVD requires
/// X u Y u Z to cover all attributes.
bool check_fd(const Relation& r, const VarSet& x, const VarSet& y);
bool check_mvd(const Relation& r, const VarSet& x, const VarSet& y, const VarSet& z);

/// The three-variable uniform distribution on {(x,y,z) : x+y+z even}.
Distribution parity_distribution();

/// The four-variable distribution over A,B,C,D with outcomes
/// (0,0,0,0), (0,1,0,1) at probability 1/2 - eps and (1,0,1,0), (1,1,0,0)
/// at probability eps; requires 0 < eps < 1/2.
Distribution kr_distribution(double eps);

struct KeyRepairBound {
  std::uint64_t distinct_rows = 0;    // |R| under set semantics
  std::uint64_t group_count = 0;      // |Pi_X(R)|
  std::uint64_t actual_repairs = 0;   // |R| - |Pi_X(R)|
  double entropy_gap = 0;             // c = h(Omega \ X | X)
  double bound = 0;                   // (2^c - 1) |Pi_X(R)|
};

/// Repair-count bound for the key constraint X -> Omega \ X. Rows are
/// deduplicated first: the bound is stated for relations as sets, and fails
/// under multiplicity weighting.
KeyRepairBound key_repair_bound(const Relation& r, const VarSet& x);

}  // namespace implic
