#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "implic/constraint.hpp"
#include "implic/imeasure.hpp"
#include "implic/models.hpp"
#include "implic/rational.hpp"
#include "implic/set_function.hpp"
#include "implic/simplex.hpp"

namespace implic {

/// Model classes the deciders run against: the 2^n - 1 step functions
/// (complete for saturated/conditional antecedents), the full polymatroid
/// cone via exact LP (sound for everything Shannon), and the positive
/// polymatroids, decided by atom coverage. Entropic functions have no
/// decision procedure and are deliberately absent.
enum class ModelClass { StepFunctions, Polymatroids, PositivePolymatroids };

/// A nonnegative combination of antecedent measures and elemental Shannon
/// inequalities reproducing the consequent's coefficient vector:
///   sum_sigma lambda_sigma vec(sigma) = vec(tau) + sum_i theta_i vec(e_i),
/// which proves h(tau) <= sum lambda_sigma h(sigma) on every polymatroid.
struct Certificate {
  UniversePtr universe;
  std::vector<std::pair<Constraint, Rational>> antecedent_coeffs;
  std::vector<std::pair<ElementalInequality, Rational>> elemental_coeffs;

  Rational max_lambda() const {
    Rational m(0);
    for (const auto& [c, v] : antecedent_coeffs)
      if (v > m) m = v;
    return m;
  }
};

struct Verdict {
  bool holds = false;
  /// Counter-model with h(Sigma) = 0 and h(tau) > 0, when holds is false.
  std::optional<SetFunctionQ> witness;
  /// Step-function witnesses also record their agreement set U.
  std::optional<Mask> witness_step;
  /// Present on successful inequality verifications.
  std::optional<Certificate> certificate;
  /// Positive-polymatroid proofs: atom -> index of the covering antecedent.
  std::vector<std::pair<Mask, std::size_t>> atom_cover;
};

Verdict ei_check(const Implication& impl, ModelClass cls);

struct MinLambdaResult {
  bool bounded = false;
  Rational lambda;  // meaningful when bounded
  std::optional<Certificate> certificate;
  /// Unbounded case: a polymatroid direction with h(Sigma) = 0, h(tau) > 0.
  std::optional<SetFunctionQ> ray;
};

/// Least lambda with  Gamma_n |= lambda * h(Sigma) >= h(tau), by LP over the
/// elemental inequalities with the budget h(Sigma) <= 1; unbounded means no
/// relaxation exists over the polymatroid cone.
MinLambdaResult min_lambda(const Implication& impl);

/// Decides Gamma_n |= sum_j c_j h(sigma_j) >= h(target) for c_j >= 0. On
/// success the verdict carries the dual certificate; on failure a violating
/// polymatroid, whose violation the caller can re-check exactly.
Verdict verify_inequality(const std::vector<std::pair<Rational, Constraint>>& terms,
                          const Constraint& target);

/// Recomputes the certificate residual exactly; true iff it is the zero
/// vector, all coefficients are nonnegative, and every charged antecedent
/// appears in the implication.
bool verify_certificate(const Certificate& cert, const Implication& impl);

/// I(C;D) <= I(C;D|A) + (k+3)/2 I(C;D|B) + I(A;B) + (k-1)/2 I(B;C|D)
///           + 1/k I(B;D|C), valid for every entropic h and k >= 1 (it can
/// fail on non-entropic polymatroids).
bool matus_inequality_check(const SetFunctionD& h, int k);

/// Coefficient vector of a CI term over the 2^n - 1 nonempty subsets
/// (index = mask - 1).
VectorQ constraint_vector(const Constraint& c);

VectorQ elemental_vector(const ElementalInequality& e, const VarUniverse& u);

/// Expands coeff * vec(term) exactly into elemental inequality vectors via
/// the chain rule; the returned combination satisfies
///   coeff * vec(term) = sum_i theta_i vec(e_i)  with theta_i >= 0.
void shannon_expand(const Constraint& term, const Rational& coeff,
                    std::map<ElementalInequality, Rational>& into);

}  // namespace implic
