#include "implic/relaxation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace implic {

namespace {

Constraint ci_term(const UniversePtr& u, Mask first, Mask second, Mask cond) {
  return Constraint::ci(VarSet(u, first), VarSet(u, second), VarSet(u, cond));
}

bool vec_is_zero(const Constraint& c) { return c.has_zero_vector(); }

// Antecedent piece produced by chain-rule splits; member indexes the
// working member list the run was started with. Along one derivation path
// the pieces of a member partition its measure exactly: every piece is
// eventually consumed against a target, split further, or survives.
struct Piece {
  Constraint term;
  std::size_t member;
};

// Outcome of one derivation run over one working set.
struct Run {
  std::vector<Rational> consumed;  // per member: number of consumed pieces
  std::vector<Piece> survivors;    // unconsumed leaf pieces
  std::vector<std::pair<Constraint, Rational>> slack;  // nonneg measure terms
  std::vector<DerivationStep> steps;

  explicit Run(std::size_t members) : consumed(members, Rational(0)) {}

  void absorb(Run&& other) {
    for (std::size_t i = 0; i < consumed.size(); ++i) consumed[i] += other.consumed[i];
    std::move(other.survivors.begin(), other.survivors.end(), std::back_inserter(survivors));
    std::move(other.slack.begin(), other.slack.end(), std::back_inserter(slack));
    std::move(other.steps.begin(), other.steps.end(), std::back_inserter(steps));
  }
};

bool step_ei_holds(const std::vector<Piece>& working, const Constraint& tau) {
  Mask full = tau.universe->full_mask();
  for (Mask w = 0; w < full; ++w) {
    if (step_eval(w, tau) == 0) continue;
    bool all_zero = true;
    for (const auto& p : working)
      if (step_eval(w, p.term) != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) return false;
  }
  return true;
}

bool covers(const Constraint& sigma, Mask tau_vars) {
  return (tau_vars & ~sigma.vars()) == 0;
}

// Leftover terms of the chain expansion behind h(tau) <= h(sigma) when
// X in A, Y in B, C in Z in ABC: every summand except I(X;Y|Z) itself.
std::vector<Constraint> technical_lemma_slack(const UniversePtr& u, Mask a, Mask b, Mask c,
                                              Mask x, Mask y, Mask z) {
  Mask za = a & z, zb = b & z;
  Mask ap = a & ~(za | x), bp = b & ~(zb | y);
  std::vector<Constraint> out;
  auto push = [&](Mask f, Mask s, Mask k) {
    Constraint t = ci_term(u, f, s, k);
    if (!vec_is_zero(t)) out.push_back(std::move(t));
  };
  push(za, zb, c);
  push(za, bp | y, c | zb);
  push(ap | x, zb, c | za);
  push(x, bp, z | y);
  push(ap, bp | y, z | x);
  return out;
}

struct Ctx {
  UniversePtr u;
  std::size_t member_count = 0;
};

// Inductive construction for an elemental tau = (x;y|Z): pick a working
// piece scoring 1 on the step function at Z that covers tau; consume it
// directly when x and y sit on opposite sides, otherwise split off one
// fresh conditioning variable and recurse on the smaller deficit. Choices
// are explored depth-first in index order, so derivations are
// deterministic; the step-function implication is rechecked at every level.
bool cover_recurse(const Ctx& ctx, std::vector<Piece> working, const Constraint& tau, Run& out) {
  if (vec_is_zero(tau)) {
    std::move(working.begin(), working.end(), std::back_inserter(out.survivors));
    return true;
  }
  if (!step_ei_holds(working, tau)) return false;

  Mask z = tau.cond;
  Mask xbit = tau.first & ~z;
  Mask ybit = tau.second & ~z;
  Mask tau_vars = tau.first | tau.second | tau.cond;

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < working.size(); ++i)
    if (step_eval(z, working[i].term) == 1 && covers(working[i].term, tau_vars))
      candidates.push_back(i);

  // Direct consumption: some candidate has x and y on opposite sides.
  for (std::size_t i : candidates) {
    const Constraint& s = working[i].term;
    for (int orient = 0; orient < 2; ++orient) {
      Mask a = orient ? s.second : s.first;
      Mask b = orient ? s.first : s.second;
      if ((xbit & a) != xbit || (ybit & b) != ybit) continue;
      out.consumed[working[i].member] += 1;
      for (auto& t : technical_lemma_slack(ctx.u, a, b, s.cond, xbit, ybit, z))
        out.slack.emplace_back(std::move(t), Rational(1));
      DerivationStep step;
      step.rule = DerivationStep::Rule::TechnicalLemma;
      step.selected = s;
      step.note = "h(" + to_string(tau) + ") <= h(" + to_string(s) + ")";
      out.steps.push_back(std::move(step));
      working.erase(working.begin() + static_cast<long>(i));
      std::move(working.begin(), working.end(), std::back_inserter(out.survivors));
      return true;
    }
  }

  for (std::size_t i : candidates) {
    const Constraint& s = working[i].term;
    for (int orient = 0; orient < 2; ++orient) {
      Mask a = orient ? s.second : s.first;
      Mask b = orient ? s.first : s.second;
      if ((xbit & a) != xbit || (ybit & a) != ybit) continue;  // need x,y in A
      Mask choices = b & ~z & ~(xbit | ybit);
      for (int ub = 0; ub < ctx.u->size(); ++ub) {
        if (!(choices >> ub & 1)) continue;
        Mask ubit = Mask(1) << ub;

        Mask b1 = (b & z) | ubit;
        Constraint sigma1 = ci_term(ctx.u, a, b1, s.cond);
        Constraint sigma2 = ci_term(ctx.u, a, b & ~(z | ubit), s.cond | b1);
        Constraint tau1 = ci_term(ctx.u, xbit, ubit, z);
        Constraint tau2 = ci_term(ctx.u, xbit, ybit, z | ubit);

        std::vector<Piece> next = working;
        next.erase(next.begin() + static_cast<long>(i));
        if (!vec_is_zero(sigma2)) next.push_back({sigma2, working[i].member});

        Run sub(ctx.member_count);
        if (!cover_recurse(ctx, std::move(next), tau2, sub)) continue;

        DerivationStep split_sigma;
        split_sigma.rule = DerivationStep::Rule::ChainSplitSigma;
        split_sigma.selected = s;
        split_sigma.note =
            "h(" + to_string(s) + ") = h(" + to_string(sigma1) + ") + h(" + to_string(sigma2) + ")";
        out.steps.push_back(std::move(split_sigma));

        DerivationStep split_tau;
        split_tau.rule = DerivationStep::Rule::ChainSplitTau;
        split_tau.note = "h(" + to_string(tau) + ") <= h(" + to_string(tau1) + ") + h(" +
                         to_string(tau2) + ")";
        out.steps.push_back(std::move(split_tau));

        // tau = tau1 + tau2 - I(x;u|yZ); the dropped term is slack.
        Constraint chain_slack = ci_term(ctx.u, xbit, ubit, z | ybit);
        if (!vec_is_zero(chain_slack)) out.slack.emplace_back(chain_slack, Rational(1));

        // tau1 <= sigma1 by the technical lemma; sigma1 is consumed.
        out.consumed[working[i].member] += 1;
        for (auto& t : technical_lemma_slack(ctx.u, a, b1, s.cond, xbit, ubit, z))
          out.slack.emplace_back(std::move(t), Rational(1));
        DerivationStep lemma;
        lemma.rule = DerivationStep::Rule::TechnicalLemma;
        lemma.selected = sigma1;
        lemma.note = "h(" + to_string(tau1) + ") <= h(" + to_string(sigma1) + ")";
        out.steps.push_back(std::move(lemma));

        out.absorb(std::move(sub));
        return true;
      }
    }
  }
  return false;
}

// Flattens a finished run: a member touched anywhere rolls up to
// coefficient one, and its surviving pieces move into the slack so that
//   sum_m lambda_m vec(member_m) - vec(tau) = sum slack
// holds exactly.
struct Flat {
  std::vector<Rational> lambda;
  std::vector<std::pair<Constraint, Rational>> slack;
};

Flat flatten(const Run& run) {
  Flat out;
  out.lambda.assign(run.consumed.size(), Rational(0));
  for (std::size_t m = 0; m < run.consumed.size(); ++m)
    if (sgn(run.consumed[m]) > 0) out.lambda[m] = 1;
  out.slack = run.slack;
  for (const auto& p : run.survivors) {
    if (sgn(out.lambda[p.member]) == 0) continue;
    if (!vec_is_zero(p.term)) out.slack.emplace_back(p.term, Rational(1));
  }
  return out;
}

Certificate build_certificate(const UniversePtr& u, const std::vector<Constraint>& originals,
                              const std::vector<Rational>& lambda,
                              const std::vector<std::pair<Constraint, Rational>>& slack) {
  Certificate cert;
  cert.universe = u;
  for (std::size_t i = 0; i < originals.size(); ++i)
    cert.antecedent_coeffs.emplace_back(originals[i], lambda[i]);
  std::map<ElementalInequality, Rational> theta;
  for (const auto& [term, coeff] : slack) shannon_expand(term, coeff, theta);
  for (auto& [e, v] : theta)
    if (sgn(v) != 0) cert.elemental_coeffs.emplace_back(e, v);
  return cert;
}

void check_certificate(const char* who, const RelaxationResult& result,
                       const std::vector<Constraint>& sigma, const Constraint& tau) {
  if (!verify_certificate(result.certificate, Implication(std::vector<Constraint>(sigma), tau)))
    throw std::logic_error(std::string(who) + ": certificate failed verification");
}

// Folds coefficients on the saturated working members back onto the
// caller's antecedents: a conditional that was split into two members is
// charged the larger of the two coefficients, with the difference returned
// as slack on the cheaper piece.
std::pair<std::vector<Rational>, std::vector<std::pair<Constraint, Rational>>> fold_to_original(
    const std::vector<Constraint>& sigma, const std::vector<Constraint>& saturated,
    const Flat& flat) {
  std::vector<Rational> lambda(sigma.size(), Rational(0));
  std::vector<std::pair<Constraint, Rational>> slack = flat.slack;
  std::size_t k = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (classify(sigma[i]).saturated) {
      lambda[i] = flat.lambda[k];
      ++k;
    } else {
      Rational c1 = flat.lambda[k], c2 = flat.lambda[k + 1];
      lambda[i] = std::max(c1, c2);
      if (lambda[i] > c1) slack.emplace_back(saturated[k], lambda[i] - c1);
      if (lambda[i] > c2) slack.emplace_back(saturated[k + 1], lambda[i] - c2);
      k += 2;
    }
  }
  return {std::move(lambda), std::move(slack)};
}

std::optional<Run> fd_partition_recurse(const Ctx& ctx, std::vector<Piece> working, Mask xset,
                                        Mask z, std::vector<DerivationStep>& steps);

}  // namespace

RelaxationResult elemental_cover_certificate(const std::vector<Constraint>& sigma,
                                             const Constraint& tau) {
  if (!tau.is_ci_like()) throw std::invalid_argument("consequent must be a CI");
  const UniversePtr& u = tau.universe;
  if (!classify(tau).elemental)
    throw std::invalid_argument("elemental_cover_certificate: consequent is not elemental");
  Mask tau_vars = tau.first | tau.second | tau.cond;
  for (const auto& s : sigma) {
    if (!s.is_ci_like())
      throw std::invalid_argument("elemental_cover_certificate: antecedents must be CIs");
    require_same_universe(u, s.universe);
    if (!covers(s, tau_vars))
      throw std::invalid_argument("elemental_cover_certificate: antecedent " + to_string(s) +
                                  " does not cover " + to_string(tau));
  }

  Ctx ctx{u, sigma.size()};
  std::vector<Piece> working;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (!vec_is_zero(sigma[i])) working.push_back({sigma[i], i});

  if (!step_ei_holds(working, tau))
    throw std::invalid_argument(
        "elemental_cover_certificate: the step-function implication fails");

  Run run(sigma.size());
  if (!cover_recurse(ctx, std::move(working), tau, run))
    throw std::logic_error("elemental_cover_certificate: derivation search failed");

  Flat flat = flatten(run);
  RelaxationResult result;
  result.derivation = std::move(run.steps);
  result.certificate = build_certificate(u, sigma, flat.lambda, flat.slack);
  result.bound_claimed = result.certificate.max_lambda();
  check_certificate("elemental_cover_certificate", result, sigma, tau);
  return result;
}

std::vector<Constraint> chain_decompose(const Constraint& tau) {
  if (!tau.is_ci_like()) throw std::invalid_argument("chain_decompose expects a CI");
  const UniversePtr& u = tau.universe;
  Mask x = tau.cond;
  Mask y = tau.first & ~x;
  Mask z = tau.second & ~x;
  Mask d = y & z;
  Mask ys = y & ~d, zs = z & ~d;

  std::vector<Constraint> parts;
  Mask ctx = x;
  for (int i = 0; i < u->size(); ++i) {
    if (!(d >> i & 1)) continue;
    Mask bit = Mask(1) << i;
    parts.push_back(ci_term(u, bit, bit, ctx));
    ctx |= bit;
  }
  Mask yctx = ctx;
  for (int i = 0; i < u->size(); ++i) {
    if (!(ys >> i & 1)) continue;
    Mask ybit = Mask(1) << i;
    Mask zctx = yctx;
    for (int j = 0; j < u->size(); ++j) {
      if (!(zs >> j & 1)) continue;
      Mask zbit = Mask(1) << j;
      parts.push_back(ci_term(u, ybit, zbit, zctx));
      zctx |= zbit;
    }
    yctx |= ybit;
  }
  return parts;
}

namespace {

// Induction on |X| for tau = (Z -> X) over saturated working pieces:
// extract u, certify (Z -> u) by the elemental cover over the u-carrying
// chain pieces, recurse on (uZ -> X\u) over the remainder. All u choices
// are tried in index order before giving up.
std::optional<Run> fd_partition_recurse(const Ctx& ctx, std::vector<Piece> working, Mask xset,
                                        Mask z, std::vector<DerivationStep>& steps) {
  Mask xs = xset & ~z;
  Run out(ctx.member_count);
  if (xs == 0) {
    std::move(working.begin(), working.end(), std::back_inserter(out.survivors));
    return out;
  }
  Constraint tau = ci_term(ctx.u, xs, xs, z);
  if (!step_ei_holds(working, tau)) return std::nullopt;

  if (popcount(xs) == 1) {
    if (!cover_recurse(ctx, std::move(working), tau, out)) return std::nullopt;
    return out;
  }

  for (int u_var = 0; u_var < ctx.u->size(); ++u_var) {
    if (!(xs >> u_var & 1)) continue;
    Mask ubit = Mask(1) << u_var;

    std::vector<Piece> sigma1, sigma2;
    std::vector<DerivationStep> split_steps;
    bool feasible = true;
    for (const auto& p : working) {
      const Constraint& s = p.term;
      if (s.cond & ubit) {
        sigma2.push_back(p);
        continue;
      }
      Mask a = s.first, b = s.second;
      if (!(a & ubit)) std::swap(a, b);
      if (!(a & ubit)) {
        feasible = false;  // u absent from a working piece; only possible
        break;             // for non-saturated input, bail out on this u
      }
      Mask a1 = ubit | (a & z);
      Constraint s1 = ci_term(ctx.u, a1, b, s.cond);
      Constraint s2 = ci_term(ctx.u, a & ~a1, b, s.cond | a1);
      DerivationStep step;
      step.rule = DerivationStep::Rule::ChainSplitSigma;
      step.selected = s;
      step.note = "h(" + to_string(s) + ") = h(" + to_string(s1) + ") + h(" + to_string(s2) + ")";
      split_steps.push_back(std::move(step));
      if (!vec_is_zero(s1)) sigma1.push_back({s1, p.member});
      if (!vec_is_zero(s2)) sigma2.push_back({s2, p.member});
    }
    if (!feasible) continue;

    Constraint tau1 = ci_term(ctx.u, ubit, ubit, z);
    Run r1(ctx.member_count);
    if (!step_ei_holds(sigma1, tau1)) continue;
    if (!cover_recurse(ctx, sigma1, tau1, r1)) continue;

    auto r2 = fd_partition_recurse(ctx, sigma2, xs & ~ubit, z | ubit, steps);
    if (!r2) continue;

    DerivationStep split_tau;
    split_tau.rule = DerivationStep::Rule::ChainSplitTau;
    split_tau.note = "h(" + to_string(tau) + ") = h(" + to_string(tau1) + ") + h(" +
                     to_string(ci_term(ctx.u, xs & ~ubit, xs & ~ubit, z | ubit)) + ")";
    steps.push_back(std::move(split_tau));
    for (auto& s : split_steps) steps.push_back(std::move(s));

    out.absorb(std::move(r1));
    out.absorb(std::move(*r2));
    return out;
  }
  return std::nullopt;
}

}  // namespace

RelaxationResult fd_consequent_certificate(const std::vector<Constraint>& sigma,
                                           const Constraint& tau) {
  if (!tau.is_ci_like() || !classify(tau).conditional)
    throw std::invalid_argument("fd_consequent_certificate: consequent must be a conditional");
  const UniversePtr& u = tau.universe;

  std::vector<Constraint> saturated = saturate_conditionals(sigma);
  Ctx ctx{u, saturated.size()};
  std::vector<Piece> working;
  for (std::size_t i = 0; i < saturated.size(); ++i)
    if (!vec_is_zero(saturated[i])) working.push_back({saturated[i], i});

  Mask xs = tau.first & ~tau.cond;
  if (!step_ei_holds(working, ci_term(u, xs, xs, tau.cond)))
    throw std::invalid_argument(
        "fd_consequent_certificate: the step-function implication fails");

  std::vector<DerivationStep> steps;
  auto run = fd_partition_recurse(ctx, std::move(working), xs, tau.cond, steps);
  if (!run) throw std::logic_error("fd_consequent_certificate: derivation search failed");
  for (auto& s : run->steps) steps.push_back(std::move(s));

  Flat flat = flatten(*run);
  auto [lambda, slack] = fold_to_original(sigma, saturated, flat);

  RelaxationResult result;
  result.derivation = std::move(steps);
  result.certificate = build_certificate(u, sigma, lambda, slack);
  result.bound_claimed = result.certificate.max_lambda();
  check_certificate("fd_consequent_certificate", result, sigma, tau);
  return result;
}

RelaxationResult quadratic_certificate(const std::vector<Constraint>& sigma,
                                       const Constraint& tau) {
  if (!tau.is_ci_like()) throw std::invalid_argument("quadratic_certificate expects a CI");
  const UniversePtr& u = tau.universe;

  std::vector<Constraint> saturated = saturate_conditionals(sigma);
  Ctx ctx{u, saturated.size()};
  std::vector<Piece> base_working;
  for (std::size_t i = 0; i < saturated.size(); ++i)
    if (!vec_is_zero(saturated[i])) base_working.push_back({saturated[i], i});

  if (!step_ei_holds(base_working, tau))
    throw std::invalid_argument("quadratic_certificate: the step-function implication fails");

  Mask x = tau.cond;
  Mask y = tau.first & ~x;
  Mask z = tau.second & ~x;
  Mask d = y & z;

  std::vector<Rational> member_lambda(saturated.size(), Rational(0));
  std::vector<std::pair<Constraint, Rational>> slack;
  std::vector<DerivationStep> derivation;

  auto add_flat = [&](Flat&& flat) {
    for (std::size_t m = 0; m < member_lambda.size(); ++m) member_lambda[m] += flat.lambda[m];
    std::move(flat.slack.begin(), flat.slack.end(), std::back_inserter(slack));
  };

  // Shared part of the consequent: a conditional, certified by the unit FD
  // route so the overall bound stays within floor(n^2/4).
  if (d != 0) {
    DerivationStep note;
    note.rule = DerivationStep::Rule::ChainSplitTau;
    note.note = "h(" + to_string(tau) + ") = h(" + to_string(ci_term(u, d, d, x)) +
                ") + h(" + to_string(ci_term(u, y & ~d, z & ~d, x | d)) + ")";
    derivation.push_back(std::move(note));
    std::vector<DerivationStep> fd_steps;
    auto run = fd_partition_recurse(ctx, base_working, d, x, fd_steps);
    if (!run) throw std::logic_error("quadratic_certificate: conditional part failed");
    for (auto& s : fd_steps) derivation.push_back(std::move(s));
    for (auto& s : run->steps) derivation.push_back(std::move(s));
    run->steps.clear();
    add_flat(flatten(*run));
  }

  // Elemental parts over the disjoint remainder, one unit cover each.
  Constraint remainder = ci_term(u, y & ~d, z & ~d, x | d);
  for (const Constraint& part : chain_decompose(remainder)) {
    if (vec_is_zero(part)) continue;
    Run run(saturated.size());
    if (!cover_recurse(ctx, base_working, part, run))
      throw std::logic_error("quadratic_certificate: elemental part failed on " +
                             to_string(part));
    for (auto& s : run.steps) derivation.push_back(std::move(s));
    run.steps.clear();
    add_flat(flatten(run));
  }

  Flat combined;
  combined.lambda = std::move(member_lambda);
  combined.slack = std::move(slack);
  auto [lambda, full_slack] = fold_to_original(sigma, saturated, combined);

  RelaxationResult result;
  result.derivation = std::move(derivation);
  result.certificate = build_certificate(u, sigma, lambda, full_slack);
  result.bound_claimed = result.certificate.max_lambda();
  check_certificate("quadratic_certificate", result, sigma, tau);
  return result;
}

std::vector<Constraint> remove_disjoint_antecedent(const std::vector<Constraint>& sigma,
                                                   const Constraint& tau,
                                                   const Constraint& to_remove) {
  if (!are_disjoint(to_remove, tau))
    throw std::invalid_argument("remove_disjoint_antecedent: terms are not disjoint");
  std::vector<Piece> working;
  for (std::size_t i = 0; i < sigma.size(); ++i) working.push_back({sigma[i], i});
  if (!step_ei_holds(working, tau))
    throw std::invalid_argument(
        "remove_disjoint_antecedent: the step-function implication fails");

  std::vector<Constraint> out;
  bool removed = false;
  for (const auto& s : sigma) {
    if (!removed && s == to_remove) {
      removed = true;
      continue;
    }
    out.push_back(s);
  }
  if (!removed) throw std::invalid_argument("remove_disjoint_antecedent: antecedent not found");

  std::vector<Piece> reduced;
  for (std::size_t i = 0; i < out.size(); ++i) reduced.push_back({out[i], i});
  if (!step_ei_holds(reduced, tau))
    throw std::logic_error("remove_disjoint_antecedent: removal broke the implication");
  return out;
}

RelaxationResult disjoint_saturated_unit(const std::vector<Constraint>& sigma,
                                         const Constraint& tau) {
  if (!tau.is_ci_like() || !classify(tau).saturated)
    throw std::invalid_argument("disjoint_saturated_unit: consequent must be saturated");
  for (const auto& s : sigma) {
    if (!s.is_ci_like() || !classify(s).saturated)
      throw std::invalid_argument("disjoint_saturated_unit: antecedents must be saturated");
  }
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (!are_disjoint(sigma[i], sigma[j]))
        throw std::invalid_argument("disjoint_saturated_unit: antecedents " + to_string(sigma[i]) +
                                    " and " + to_string(sigma[j]) + " are not disjoint");
  std::vector<Piece> working;
  for (std::size_t i = 0; i < sigma.size(); ++i) working.push_back({sigma[i], i});
  if (!step_ei_holds(working, tau))
    throw std::invalid_argument("disjoint_saturated_unit: the step-function implication fails");

  std::vector<std::pair<Rational, Constraint>> terms;
  for (const auto& s : sigma) terms.emplace_back(Rational(1), s);
  Verdict v = verify_inequality(terms, tau);
  if (!v.holds || !v.certificate)
    throw std::logic_error("disjoint_saturated_unit: unit inequality unexpectedly fails");

  RelaxationResult result;
  result.certificate = std::move(*v.certificate);
  result.bound_claimed = 1;
  DerivationStep step;
  step.rule = DerivationStep::Rule::Base;
  step.note = "unit combination of pairwise-disjoint saturated antecedents";
  result.derivation.push_back(std::move(step));
  check_certificate("disjoint_saturated_unit", result, sigma, tau);
  return result;
}

}  // namespace implic
