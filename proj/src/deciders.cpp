#include "implic/deciders.hpp"

#include <cmath>
#include <stdexcept>

namespace implic {

namespace {

void require_ci_like(const Constraint& c, const char* who) {
  if (!c.is_ci_like())
    throw std::invalid_argument(std::string(who) + " accepts CI terms only");
}

SetFunctionQ set_function_from_vector(const UniversePtr& u, const VectorQ& x) {
  VectorQ values(Eigen::Index(u->subset_count()));
  values[0] = 0;
  for (Mask w = 1; w < u->subset_count(); ++w) values[w] = x[w - 1];
  return SetFunctionQ(u, std::move(values));
}

// Shared LP scaffolding: variables are h(W) for nonempty W, constrained by
// every elemental inequality (h >= 0 on the feasible set follows).
struct ConeLp {
  UniversePtr universe;
  std::vector<ElementalInequality> elementals;
  lp::Problem problem;

  explicit ConeLp(UniversePtr u) : universe(std::move(u)) {
    elementals = elemental_inequalities(*universe);
    problem.num_vars = static_cast<int>(universe->subset_count()) - 1;
    problem.objective = VectorQ::Zero(problem.num_vars);
    for (const auto& e : elementals)
      problem.add_row(-elemental_vector(e, *universe), lp::RowType::LessEq, Rational(0));
  }

  void add_normalization() {
    VectorQ row = VectorQ::Zero(problem.num_vars);
    row[problem.num_vars - 1] = 1;  // h(Omega) <= 1
    problem.add_row(std::move(row), lp::RowType::LessEq, Rational(1));
  }

  // eval(h, c) = 0, encoded as two inequalities.
  void add_zero_constraint(const Constraint& c) {
    VectorQ v = constraint_vector(c);
    problem.add_row(v, lp::RowType::LessEq, Rational(0));
    problem.add_row(-v, lp::RowType::LessEq, Rational(0));
  }
};

// Feasibility LP for theta >= 0 with E^T theta = g, minimizing total theta
// so emitted certificates are canonical. Returns nullopt when g is not in
// the cone spanned by the elemental inequalities.
std::optional<std::vector<std::pair<ElementalInequality, Rational>>> elemental_combination(
    const UniversePtr& universe, const VectorQ& g) {
  auto elementals = elemental_inequalities(*universe);
  int coords = static_cast<int>(universe->subset_count()) - 1;
  int vars = static_cast<int>(elementals.size());

  std::vector<VectorQ> columns;
  columns.reserve(vars);
  for (const auto& e : elementals) columns.push_back(elemental_vector(e, *universe));

  lp::Problem p;
  p.num_vars = vars;
  p.objective = VectorQ::Constant(vars, Rational(-1));  // maximize -(sum theta)
  for (int w = 0; w < coords; ++w) {
    VectorQ row(vars);
    for (int j = 0; j < vars; ++j) row[j] = columns[j][w];
    p.add_row(std::move(row), lp::RowType::Equal, g[w]);
  }

  lp::Solution s = lp::solve(p);
  if (s.status != lp::Status::Optimal) return std::nullopt;

  std::vector<std::pair<ElementalInequality, Rational>> out;
  for (int j = 0; j < vars; ++j)
    if (sgn(s.x[j]) != 0) out.emplace_back(elementals[j], s.x[j]);
  return out;
}

}  // namespace

VectorQ constraint_vector(const Constraint& c) {
  VectorQ v = VectorQ::Zero(Eigen::Index(c.universe->subset_count()) - 1);
  for (const auto& [mask, coef] : c.coefficients()) v[mask - 1] = coef;
  return v;
}

VectorQ elemental_vector(const ElementalInequality& e, const VarUniverse& u) {
  VectorQ v = VectorQ::Zero(Eigen::Index(u.subset_count()) - 1);
  for (const auto& [mask, coef] : e.terms(u)) v[mask - 1] += coef;
  return v;
}

void shannon_expand(const Constraint& term, const Rational& coeff,
                    std::map<ElementalInequality, Rational>& into) {
  require_ci_like(term, "shannon_expand");
  if (sgn(coeff) == 0) return;
  if (sgn(coeff) < 0) throw std::invalid_argument("shannon_expand needs coeff >= 0");

  const UniversePtr& uni = term.universe;
  Mask full = uni->full_mask();
  auto add = [&](ElementalInequality e) {
    auto it = into.emplace(e, 0).first;
    it->second += coeff;
    if (sgn(it->second) == 0) into.erase(it);
  };

  // h(d|K): peel the remaining variables one at a time, ending in the
  // monotonicity generator h([n]) - h([n] \ d).
  auto expand_cond_entropy = [&](int d, Mask k) {
    Mask ctx = k;
    for (int y = 0; y < uni->size(); ++y) {
      if (y == d || (ctx >> y & 1)) continue;
      add({ElementalInequality::Kind::Submodularity, std::min(d, y), std::max(d, y), ctx});
      ctx |= Mask(1) << y;
    }
    add({ElementalInequality::Kind::Monotonicity, d, 0, 0});
  };

  Mask x = term.cond;
  Mask y = term.first & ~x;
  Mask z = term.second & ~x;
  Mask d = y & z;
  Mask ys = y & ~d, zs = z & ~d;

  // I(Y;Z|X) = h(D|X) + I(Y';Z'|XD) with D the shared part.
  Mask ctx = x;
  for (int i = 0; i < uni->size(); ++i) {
    if (!(d >> i & 1)) continue;
    expand_cond_entropy(i, ctx);
    ctx |= Mask(1) << i;
  }
  // Double chain over the disjoint parts: every piece is one submodularity.
  Mask yctx = ctx;
  for (int i = 0; i < uni->size(); ++i) {
    if (!(ys >> i & 1)) continue;
    Mask zctx = yctx;
    for (int j = 0; j < uni->size(); ++j) {
      if (!(zs >> j & 1)) continue;
      add({ElementalInequality::Kind::Submodularity, std::min(i, j), std::max(i, j), zctx});
      zctx |= Mask(1) << j;
    }
    yctx |= Mask(1) << i;
  }
  (void)full;
}

Verdict ei_check(const Implication& impl, ModelClass cls) {
  const UniversePtr& u = impl.universe();

  if (cls == ModelClass::StepFunctions) {
    for (Mask w = 0; w < u->full_mask(); ++w) {
      if (step_eval_sum(w, impl.antecedents) == 0 && step_eval(w, impl.consequent) >= 1) {
        Verdict v;
        v.holds = false;
        v.witness_step = w;
        v.witness = step_function(VarSet(u, w));
        return v;
      }
    }
    Verdict v;
    v.holds = true;
    return v;
  }

  if (cls == ModelClass::PositivePolymatroids) {
    AtomSet target = atom_set(impl.consequent);
    Verdict v;
    v.holds = true;
    for (Mask w : target.members) {
      bool covered = false;
      for (std::size_t i = 0; i < impl.antecedents.size(); ++i) {
        if (atom_set(impl.antecedents[i]).contains(w)) {
          v.atom_cover.emplace_back(w, i);
          covered = true;
          break;
        }
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

  // Polymatroids: maximize h(tau) over the cone with h(sigma) = 0 pinned
  // and h(Omega) <= 1; the implication holds iff the optimum is zero.
  require_ci_like(impl.consequent, "ei_check over polymatroids");
  for (const auto& c : impl.antecedents) require_ci_like(c, "ei_check over polymatroids");

  ConeLp lp(u);
  for (const auto& c : impl.antecedents) lp.add_zero_constraint(c);
  lp.add_normalization();
  lp.problem.objective = constraint_vector(impl.consequent);

  lp::Solution s = lp::solve(lp.problem);
  if (s.status != lp::Status::Optimal)
    throw std::logic_error("EI polymatroid LP must be bounded and feasible");

  Verdict v;
  if (sgn(s.objective) == 0) {
    v.holds = true;
  } else {
    v.holds = false;
    v.witness = set_function_from_vector(u, s.x);
  }
  return v;
}

MinLambdaResult min_lambda(const Implication& impl) {
  const UniversePtr& u = impl.universe();
  require_ci_like(impl.consequent, "min_lambda");
  for (const auto& c : impl.antecedents) require_ci_like(c, "min_lambda");

  ConeLp lp(u);
  VectorQ budget = VectorQ::Zero(lp.problem.num_vars);
  for (const auto& c : impl.antecedents) budget += constraint_vector(c);
  lp.problem.add_row(std::move(budget), lp::RowType::LessEq, Rational(1));
  lp.problem.objective = constraint_vector(impl.consequent);

  lp::Solution s = lp::solve(lp.problem);
  MinLambdaResult out;
  if (s.status == lp::Status::Unbounded) {
    out.bounded = false;
    out.ray = set_function_from_vector(u, s.ray);
    return out;
  }
  if (s.status != lp::Status::Optimal) throw std::logic_error("min_lambda LP must be feasible");

  out.bounded = true;
  out.lambda = s.objective;

  // Dual certificate: lambda* sum vec(sigma) - vec(tau) lies in the
  // elemental cone.
  VectorQ g = VectorQ::Zero(lp.problem.num_vars);
  for (const auto& c : impl.antecedents) g += out.lambda * constraint_vector(c);
  g -= constraint_vector(impl.consequent);
  auto theta = elemental_combination(u, g);
  if (!theta) throw std::logic_error("min_lambda dual extraction failed");
  Certificate cert;
  cert.universe = u;
  for (const auto& c : impl.antecedents) cert.antecedent_coeffs.emplace_back(c, out.lambda);
  cert.elemental_coeffs = std::move(*theta);
  out.certificate = std::move(cert);
  return out;
}

Verdict verify_inequality(const std::vector<std::pair<Rational, Constraint>>& terms,
                          const Constraint& target) {
  require_ci_like(target, "verify_inequality");
  const UniversePtr& u = target.universe;
  VectorQ g = -constraint_vector(target);
  for (const auto& [coeff, c] : terms) {
    require_ci_like(c, "verify_inequality");
    require_same_universe(u, c.universe);
    if (sgn(coeff) < 0) throw std::invalid_argument("verify_inequality needs coefficients >= 0");
    g += coeff * constraint_vector(c);
  }

  // First look for a violating polymatroid: minimize g . h over the
  // normalized cone.
  ConeLp lp(u);
  lp.add_normalization();
  lp.problem.objective = -g;
  lp::Solution s = lp::solve(lp.problem);
  if (s.status != lp::Status::Optimal)
    throw std::logic_error("verify_inequality LP must be bounded and feasible");

  Verdict v;
  if (sgn(s.objective) > 0) {  // g . h < 0 somewhere
    v.holds = false;
    v.witness = set_function_from_vector(u, s.x);
    return v;
  }

  auto theta = elemental_combination(u, g);
  if (!theta)
    throw std::logic_error("inequality holds on the cone but has no elemental certificate");
  v.holds = true;
  Certificate cert;
  cert.universe = u;
  for (const auto& [coeff, c] : terms) cert.antecedent_coeffs.emplace_back(c, coeff);
  cert.elemental_coeffs = std::move(*theta);
  v.certificate = std::move(cert);
  return v;
}

bool verify_certificate(const Certificate& cert, const Implication& impl) {
  if (!same_universe(cert.universe, impl.universe())) return false;
  if (!impl.consequent.is_ci_like()) return false;

  for (const auto& [c, coeff] : cert.antecedent_coeffs) {
    if (sgn(coeff) < 0) return false;
    bool known = false;
    for (const auto& a : impl.antecedents)
      if (a == c) known = true;
    if (!known) return false;
  }
  for (const auto& [e, coeff] : cert.elemental_coeffs)
    if (sgn(coeff) < 0) return false;

  VectorQ residual = -constraint_vector(impl.consequent);
  for (const auto& [c, coeff] : cert.antecedent_coeffs)
    residual += coeff * constraint_vector(c);
  for (const auto& [e, coeff] : cert.elemental_coeffs)
    residual -= coeff * elemental_vector(e, *cert.universe);

  for (Eigen::Index i = 0; i < residual.size(); ++i)
    if (sgn(residual[i]) != 0) return false;
  return true;
}

bool matus_inequality_check(const SetFunctionD& h, int k) {
  if (k < 1) throw std::invalid_argument("matus_inequality_check requires k >= 1");
  const UniversePtr& uni = h.universe();
  auto var = [&](const char* name) {
    auto idx = uni->index_of(name);
    if (!idx) throw std::invalid_argument("universe must contain variables A, B, C, D");
    return VarSet(uni, Mask(1) << *idx);
  };
  VarSet a = var("A"), b = var("B"), c = var("C"), d = var("D");
  VarSet none = VarSet::empty(uni);

  double kd = k;
  double lhs = mutual_info(h, c, d, none);
  double rhs = mutual_info(h, c, d, a) + (kd + 3) / 2 * mutual_info(h, c, d, b) +
               mutual_info(h, a, b, none) + (kd - 1) / 2 * mutual_info(h, b, c, d) +
               1 / kd * mutual_info(h, b, d, c);
  return lhs <= rhs + NumericMode<double>::zero_tol;
}

}  // namespace implic
