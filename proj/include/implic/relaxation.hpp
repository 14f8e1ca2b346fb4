#pragma once

#include <optional>
#include <string>
#include <vector>

#include "implic/constraint.hpp"
#include "implic/deciders.hpp"

namespace implic {

/// One locally checkable move in a constructive relaxation proof:
///  - TechnicalLemma: h(tau') <= h(sigma') for X in A, Y in B, C in Z in ABC,
///    with the five leftover chain terms recorded as slack;
///  - ChainSplitSigma / ChainSplitTau: an exact chain-rule split of an
///    antecedent or of the current consequent;
///  - Base: a direct step (consequent covered without further recursion).
struct DerivationStep {
  enum class Rule { Base, ChainSplitSigma, ChainSplitTau, TechnicalLemma };
  Rule rule = Rule::Base;
  std::string note;
  std::optional<Constraint> selected;  // the antecedent piece justifying the step

  static const char* rule_name(Rule r) {
    switch (r) {
      case Rule::Base: return "Base";
      case Rule::ChainSplitSigma: return "ChainSplitSigma";
      case Rule::ChainSplitTau: return "ChainSplitTau";
      case Rule::TechnicalLemma: return "TechnicalLemma";
    }
    return "?";
  }
};

struct RelaxationResult {
  Certificate certificate;
  std::vector<DerivationStep> derivation;
  Rational bound_claimed;  // max antecedent coefficient is <= this
};

/// Unit certificate for an elemental consequent covered by every
/// antecedent: descends on the deficit |Omega - Z|, consuming one
/// chain-split antecedent piece per level. Preconditions (every antecedent
/// covers tau, tau elemental, the step-function implication holds) are
/// checked and violations reported by name.
RelaxationResult elemental_cover_certificate(const std::vector<Constraint>& sigma,
                                             const Constraint& tau);

/// Writes a CI as a list of elemental terms whose measures sum to it
/// exactly: shared first/second variables become elemental conditional
/// entropies, the disjoint remainder splits into |Y'| * |Z'| elemental CIs.
std::vector<Constraint> chain_decompose(const Constraint& tau);

/// Certificate with every antecedent coefficient at most floor(n^2/4) for
/// saturated/conditional antecedents and an arbitrary CI consequent:
/// saturates the antecedents, splits the consequent into a conditional part
/// (handled by the unit FD route) plus elemental parts, and sums the
/// per-part unit certificates.
RelaxationResult quadratic_certificate(const std::vector<Constraint>& sigma,
                                       const Constraint& tau);

/// Unit certificate for a conditional consequent Z -> X: induction on |X|,
/// partitioning the antecedents around each extracted variable.
RelaxationResult fd_consequent_certificate(const std::vector<Constraint>& sigma,
                                           const Constraint& tau);

/// Drops an antecedent that is disjoint from tau; the step-function
/// implication is rechecked after removal.
std::vector<Constraint> remove_disjoint_antecedent(const std::vector<Constraint>& sigma,
                                                   const Constraint& tau,
                                                   const Constraint& to_remove);

/// Unit certificate for pairwise-disjoint saturated antecedents and a
/// saturated consequent, obtained from the inequality verifier with all
/// coefficients one.
RelaxationResult disjoint_saturated_unit(const std::vector<Constraint>& sigma,
                                         const Constraint& tau);

}  // namespace implic
