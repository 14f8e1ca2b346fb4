// implic: decides exact and approximate implication of conditional
// independencies, functional and multivalued dependencies, and market-basket
// differential constraints over information-theoretic model classes, and
// emits independently checkable inequality certificates.

#include <chrono>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "implic/basket.hpp"
#include "implic/deciders.hpp"
#include "implic/io.hpp"
#include "implic/models.hpp"
#include "implic/parse.hpp"
#include "implic/relaxation.hpp"

namespace {

using namespace implic;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitError = 2;

struct Output {
  bool json = false;
  Json report;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit(int exit_code) {
    if (json) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
      report["timing_ms"] = ms;
      report["exit_code"] = exit_code;
      report["schema_version"] = 1;
      std::cout << report.dump(2) << "\n";
    }
  }
};

ModelClass class_from_name(const std::string& name) {
  if (name == "step") return ModelClass::StepFunctions;
  if (name == "gamma") return ModelClass::Polymatroids;
  if (name == "positive") return ModelClass::PositivePolymatroids;
  throw std::invalid_argument("--class must be step, gamma or positive");
}

void require_gamma_scale(const Implication& impl) {
  if (impl.universe()->size() > 8)
    throw std::invalid_argument(
        "the gamma class solves an LP over all elemental inequalities and is "
        "capped at 8 variables; use --class step (complete for "
        "saturated/conditional antecedents) for larger universes");
}

std::string fraction(const Rational& q) { return q.get_str(); }

void print_witness(const SetFunctionQ& h, Output& out) {
  if (out.json) {
    out.report["witness"] = to_json(h);
    return;
  }
  std::cout << "counter-model (set function):\n";
  for (Mask w = 0; w < h.universe()->subset_count(); ++w)
    std::cout << "  h(" << mask_to_string(*h.universe(), w) << ") = " << fraction(h(w)) << "\n";
}

int cmd_check(const std::string& path, const std::string& cls_name, bool witness, Output& out) {
  Implication impl = parse_implication(read_file(path));
  ModelClass cls = class_from_name(cls_name);
  if (cls == ModelClass::Polymatroids) require_gamma_scale(impl);
  Verdict v = ei_check(impl, cls);

  out.report["command"] = "check";
  out.report["class"] = cls_name;
  out.report["holds"] = v.holds;
  out.report["numeric_mode"] = "exact";
  if (!out.json) {
    std::cout << (v.holds ? "implication holds" : "implication fails") << " over class "
              << cls_name << "\n";
  }
  if (!v.holds && v.witness) {
    if (v.witness_step && !out.json)
      std::cout << "witness: step function at {"
                << mask_to_string(*impl.universe(), *v.witness_step) << "}\n";
    if (out.json && v.witness_step)
      out.report["witness_step"] = mask_to_string(*impl.universe(), *v.witness_step);
    if (witness || out.json) print_witness(*v.witness, out);
  }
  if (v.holds && !v.atom_cover.empty() && out.json) {
    Json cover = Json::object();
    for (auto [atom, idx] : v.atom_cover)
      cover[mask_to_string(*impl.universe(), atom)] = to_string(impl.antecedents[idx]);
    out.report["atom_cover"] = std::move(cover);
  }
  return v.holds ? kExitHolds : kExitFails;
}

int cmd_minlambda(const std::string& path, Output& out) {
  Implication impl = parse_implication(read_file(path));
  require_gamma_scale(impl);
  MinLambdaResult r = min_lambda(impl);
  out.report["command"] = "minlambda";
  out.report["numeric_mode"] = "exact";
  if (!r.bounded) {
    out.report["lambda"] = "unbounded";
    if (!out.json) std::cout << "unbounded: no relaxation over the polymatroid cone\n";
    if (r.ray && out.json) out.report["ray"] = to_json(*r.ray);
    return kExitFails;
  }
  out.report["lambda"] = fraction(r.lambda);
  if (!out.json) std::cout << "minimal relaxation factor: " << fraction(r.lambda) << "\n";
  if (r.certificate) {
    bool ok = verify_certificate(*r.certificate, impl);
    if (!ok) throw std::logic_error("internal error: certificate failed re-verification");
    Json cert = to_json(*r.certificate);
    cert["verified"] = true;
    out.report["certificate"] = std::move(cert);
    if (!out.json)
      std::cout << "certificate with " << r.certificate->elemental_coeffs.size()
                << " elemental terms re-verified\n";
  }
  return kExitHolds;
}

int cmd_certify(const std::string& path, const std::string& strategy, Output& out) {
  Implication impl = parse_implication(read_file(path));
  out.report["command"] = "certify";
  out.report["strategy"] = strategy;
  out.report["numeric_mode"] = "exact";

  RelaxationResult result;
  if (strategy == "elemental") {
    result = elemental_cover_certificate(impl.antecedents, impl.consequent);
  } else if (strategy == "quadratic") {
    result = quadratic_certificate(impl.antecedents, impl.consequent);
  } else if (strategy == "fd") {
    result = fd_consequent_certificate(impl.antecedents, impl.consequent);
  } else if (strategy == "disjoint") {
    result = disjoint_saturated_unit(impl.antecedents, impl.consequent);
  } else if (strategy == "lp") {
    require_gamma_scale(impl);
    MinLambdaResult r = min_lambda(impl);
    if (!r.bounded || !r.certificate)
      throw std::invalid_argument("no relaxation exists over the polymatroid cone");
    result.certificate = *r.certificate;
    result.bound_claimed = r.lambda;
    DerivationStep step;
    step.rule = DerivationStep::Rule::Base;
    step.note = "dual solution of the minimal-lambda program";
    result.derivation.push_back(step);
  } else {
    throw std::invalid_argument("--strategy must be elemental, quadratic, fd, disjoint or lp");
  }

  if (!verify_certificate(result.certificate, impl))
    throw std::logic_error("internal error: certificate failed re-verification");
  Json j = to_json(result);
  j["certificate"]["verified"] = true;
  out.report["result"] = std::move(j);
  if (!out.json) {
    std::cout << "certificate verified; claimed bound " << fraction(result.bound_claimed)
              << ", max antecedent coefficient " << fraction(result.certificate.max_lambda())
              << "\n";
    for (const auto& [c, v] : result.certificate.antecedent_coeffs)
      std::cout << "  " << fraction(v) << " * h(" << to_string(c) << ")\n";
  }
  return kExitHolds;
}

int cmd_entropy(const std::string& relation_path, const std::vector<std::string>& constraints,
                bool all_fds, bool all_mvds, int max_lhs, Output& out) {
  Relation r = read_relation_csv(read_file(relation_path));
  SetFunctionD h = empirical_entropy(r);
  const UniversePtr& u = r.universe;
  out.report["command"] = "entropy";
  out.report["numeric_mode"] = "approximate";
  Json degrees = Json::object();

  auto record = [&](const Constraint& c) {
    double degree = eval_constraint(h, c);
    degrees[to_string(c)] = degree;
    if (!out.json) std::cout << to_string(c) << " = " << degree << "\n";
  };

  for (const auto& text : constraints) record(parse_constraint(text, u));
  if (all_fds) {
    for (Mask x = 0; x < u->subset_count(); ++x) {
      if (popcount(x) > max_lhs) continue;
      for (int ybit = 0; ybit < u->size(); ++ybit) {
        if (x >> ybit & 1) continue;
        record(Constraint::conditional(VarSet(u, x), VarSet(u, Mask(1) << ybit)));
      }
    }
  }
  if (all_mvds) {
    for (Mask x = 0; x < u->subset_count(); ++x) {
      if (popcount(x) > max_lhs) continue;
      Mask rest = u->full_mask() & ~x;
      if (popcount(rest) < 2) continue;
      // unordered partitions of the remaining attributes into Y | Z
      for (Mask y = (rest - 1) & rest; y > 0; y = (y - 1) & rest) {
        Mask z = rest & ~y;
        if (z == 0 || y > z) continue;
        record(Constraint::ci(VarSet(u, y), VarSet(u, z), VarSet(u, x)));
      }
    }
  }
  out.report["degrees"] = std::move(degrees);
  return kExitHolds;
}

template <class Scalar>
void print_imeasure(const SetFunction<Scalar>& h, Output& out) {
  IMeasure<Scalar> mu = i_measure(h);
  const UniversePtr& u = h.universe();
  Json atoms = Json::object();
  for (Mask w = 0; w < u->full_mask(); ++w) {
    if constexpr (NumericMode<Scalar>::exact) {
      atoms[mask_to_string(*u, w)] = fraction(mu.atom(w));
      if (!out.json)
        std::cout << "atom " << mask_to_string(*u, w) << " -> " << fraction(mu.atom(w)) << "\n";
    } else {
      atoms[mask_to_string(*u, w)] = mu.atom(w);
      if (!out.json)
        std::cout << "atom " << mask_to_string(*u, w) << " -> " << mu.atom(w) << "\n";
    }
  }
  out.report["atoms"] = std::move(atoms);
  Json decomp = Json::object();
  for (const auto& [mask, coeff] : step_decomposition(h)) {
    if constexpr (NumericMode<Scalar>::exact)
      decomp[mask_to_string(*u, mask)] = fraction(coeff);
    else
      decomp[mask_to_string(*u, mask)] = coeff;
  }
  out.report["step_decomposition"] = std::move(decomp);
}

int cmd_imeasure(const std::string& relation_path, const std::string& basket_path, Output& out) {
  out.report["command"] = "imeasure";
  if (!relation_path.empty()) {
    Relation r = read_relation_csv(read_file(relation_path));
    out.report["numeric_mode"] = "approximate";
    print_imeasure(empirical_entropy(r), out);
  } else {
    BasketSet b = read_baskets(read_file(basket_path));
    out.report["numeric_mode"] = "exact";
    print_imeasure(to_polymatroid(b), out);
  }
  return kExitHolds;
}

int cmd_basket(const std::string& basket_path, const std::string& implication_path, Output& out) {
  Implication impl = parse_implication(read_file(implication_path));
  BasketSet b = read_baskets(read_file(basket_path), impl.universe());
  SetFunctionQ h = to_polymatroid(b);

  out.report["command"] = "basket";
  out.report["numeric_mode"] = "exact";
  Verdict v = differential_implication(impl.antecedents, impl.consequent);
  out.report["holds"] = v.holds;

  Json values = Json::object();
  Rational sigma_total = 0;
  for (const auto& s : impl.antecedents) {
    Rational val = eval_imeasure_constraint(h, s);
    sigma_total += val;
    values[to_string(s)] = fraction(val);
    if (!out.json) std::cout << to_string(s) << " = " << fraction(val) << "\n";
  }
  Rational tau_val = eval_imeasure_constraint(h, impl.consequent);
  values[to_string(impl.consequent)] = fraction(tau_val);
  if (!out.json) std::cout << to_string(impl.consequent) << " = " << fraction(tau_val) << "\n";
  out.report["values"] = std::move(values);

  if (!out.json) {
    std::cout << (v.holds ? "implication holds over positive polymatroids"
                          : "implication fails over positive polymatroids")
              << "\n";
    if (v.holds)
      std::cout << "relaxation h(consequent) <= h(antecedents): " << fraction(tau_val)
                << " <= " << fraction(sigma_total) << " on this data\n";
  }
  if (!v.holds && v.witness_step) {
    Mask w = *v.witness_step;
    if (!out.json)
      std::cout << "witness basket set: one basket {" << mask_to_string(*impl.universe(), w)
                << "}\n";
    out.report["witness_basket"] = mask_to_string(*impl.universe(), w);
  }
  return v.holds ? kExitHolds : kExitFails;
}

int demo_parity(Output& out) {
  Distribution p = parity_distribution();
  SetFunctionD h = distribution_entropy(p);
  auto u = p.universe;
  double marginal = mutual_info(h, VarSet::of(u, {"Y"}), VarSet::of(u, {"Z"}), VarSet::empty(u));
  double conditional =
      mutual_info(h, VarSet::of(u, {"Y"}), VarSet::of(u, {"Z"}), VarSet::of(u, {"X"}));
  std::cout << "parity distribution over X,Y,Z (uniform on x+y+z even):\n";
  std::cout << "  I(Y;Z)   = " << marginal << "\n";
  std::cout << "  I(Y;Z|X) = " << conditional << "\n";
  out.report["I(Y;Z)"] = marginal;
  out.report["I(Y;Z|X)"] = conditional;
  bool ok = std::abs(marginal) < 1e-12 && std::abs(conditional - 1.0) < 1e-12;
  return ok ? kExitHolds : kExitFails;
}

int demo_kr(double eps, Output& out) {
  Distribution p = kr_distribution(eps);
  SetFunctionD h = distribution_entropy(p);
  auto u = p.universe;
  auto mi = [&](const char* b, const char* c, std::vector<std::string_view> cond) {
    VarSet a = VarSet::empty(u);
    for (auto n : cond) a = a | VarSet::of(u, {n});
    return mutual_info(h, VarSet::of(u, {b}), VarSet::of(u, {c}), a);
  };
  double cda = mi("C", "D", {"A"}), cdb = mi("C", "D", {"B"}), ab = mi("A", "B", {});
  double cd = mi("C", "D", {});
  double bcd = mi("B", "C", {"D"});
  std::cout << "two-block distribution at eps = " << eps << ":\n";
  std::cout << "  I(C;D|A) = " << cda << "\n  I(C;D|B) = " << cdb << "\n  I(A;B)   = " << ab
            << "\n";
  std::cout << "  I(C;D)   = " << cd << "  (positive, order eps)\n";
  std::cout << "  I(B;C|D) = " << bcd << "  (order eps^2)\n";
  out.report["I(C;D|A)"] = cda;
  out.report["I(C;D|B)"] = cdb;
  out.report["I(A;B)"] = ab;
  out.report["I(C;D)"] = cd;
  out.report["I(B;C|D)"] = bcd;
  bool ok = std::abs(cda) < 1e-12 && std::abs(cdb) < 1e-12 && std::abs(ab) < 1e-12 && cd > 0;
  return ok ? kExitHolds : kExitFails;
}

int demo_matus(int k, Output& out) {
  bool all_ok = true;
  for (double eps : {0.01, 0.001}) {
    SetFunctionD h = distribution_entropy(kr_distribution(eps));
    bool ok = matus_inequality_check(h, k);
    all_ok = all_ok && ok;
    std::cout << "k = " << k << ", eps = " << eps << ": inequality "
              << (ok ? "holds" : "fails") << "\n";
  }
  out.report["k"] = k;
  out.report["holds"] = all_ok;
  return all_ok ? kExitHolds : kExitFails;
}

int demo_eq9(Output& out) {
  auto u = make_universe({"A", "B", "C", "D", "E", "Z"});
  auto term = [&](const std::string& text) { return parse_constraint(text, u); };
  std::vector<std::pair<Rational, Constraint>> terms = {
      {1, term("I(A;B|C)")}, {1, term("I(A;B|D)")}, {1, term("I(C;D|E)")},
      {1, term("I(A;E)")},   {3, term("H(Z|A)")},   {2, term("H(Z|B)")},
  };
  Constraint target = term("H(Z)");
  Verdict v = verify_inequality(terms, target);
  std::cout << "h(Z) <= I(A;B|C)+I(A;B|D)+I(C;D|E)+I(A;E)+3h(Z|A)+2h(Z|B): "
            << (v.holds ? "verified" : "FAILED") << "\n";
  out.report["holds"] = v.holds;
  if (!v.holds) return kExitFails;

  // tightness: lowering either of the large coefficients breaks it
  for (auto [index, lowered] : {std::pair<int, Rational>{4, rational_from_string("2.999")},
                                std::pair<int, Rational>{5, rational_from_string("1.999")}}) {
    auto weakened = terms;
    weakened[static_cast<std::size_t>(index)].first = lowered;
    Verdict w = verify_inequality(weakened, target);
    std::cout << "  with coefficient " << fraction(lowered) << ": "
              << (w.holds ? "still holds (unexpected)" : "fails, witness polymatroid found")
              << "\n";
    if (w.holds || !w.witness) return kExitFails;
  }
  return kExitHolds;
}

int demo_triangle(Output& out) {
  auto u = make_universe({"A", "B", "C"});
  std::vector<Constraint> sigma = {parse_constraint("I(A;B)", u),
                                   parse_constraint("I(A;C|B)", u)};
  Constraint tau = parse_constraint("I(A;C)", u);
  Implication impl(sigma, tau);
  bool step = ei_check(impl, ModelClass::StepFunctions).holds;
  bool gamma = ei_check(impl, ModelClass::Polymatroids).holds;
  bool positive = ei_check(impl, ModelClass::PositivePolymatroids).holds;
  MinLambdaResult mlr = min_lambda(impl);
  std::cout << "I(A;B), I(A;C|B) => I(A;C)\n";
  std::cout << "  step functions:        " << (step ? "holds" : "fails") << "\n";
  std::cout << "  polymatroids:          " << (gamma ? "holds" : "fails") << "\n";
  std::cout << "  positive polymatroids: " << (positive ? "holds" : "fails") << "\n";
  std::cout << "  minimal lambda:        " << (mlr.bounded ? fraction(mlr.lambda) : "unbounded")
            << "\n";
  out.report["step"] = step;
  out.report["gamma"] = gamma;
  out.report["positive"] = positive;
  out.report["lambda"] = mlr.bounded ? fraction(mlr.lambda) : "unbounded";
  return step && gamma && positive && mlr.bounded && mlr.lambda == 1 ? kExitHolds : kExitFails;
}

int cmd_demo(const std::string& which, Output& out) {
  out.report["command"] = "demo";
  out.report["which"] = which;
  if (which == "parity") return demo_parity(out);
  if (which.rfind("kr:", 0) == 0) return demo_kr(std::stod(which.substr(3)), out);
  if (which.rfind("matus:", 0) == 0) return demo_matus(std::stoi(which.substr(6)), out);
  if (which == "eq9") return demo_eq9(out);
  if (which == "triangle") return demo_triangle(out);
  throw std::invalid_argument("unknown demo: " + which +
                              " (expected parity, kr:<eps>, matus:<k>, eq9 or triangle)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "implication deciding, relaxation bounds and inequality certificates\n"
      "for conditional independencies, FDs/MVDs and differential constraints"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable JSON output");

  std::string impl_path, cls = "step", strategy = "quadratic";
  bool witness = false;
  auto* check = app.add_subcommand(
      "check", "decide an exact implication over a model class (default: step functions)");
  check->add_option("file", impl_path, "implication file")->required();
  check->add_option("--class", cls, "model class: step | gamma | positive");
  check->add_flag("--witness", witness, "print the counter-model table on failure");

  std::string ml_path;
  auto* ml =
      app.add_subcommand("minlambda", "minimal relaxation factor over the polymatroid cone");
  ml->add_option("file", ml_path, "implication file")->required();

  std::string cert_path;
  auto* certify = app.add_subcommand("certify", "build and verify a relaxation certificate");
  certify->add_option("file", cert_path, "implication file")->required();
  certify->add_option("--strategy", strategy, "elemental | quadratic | fd | disjoint | lp");

  std::string rel_path;
  std::vector<std::string> constraint_texts;
  bool all_fds = false, all_mvds = false;
  int max_lhs = 2;
  auto* entropy = app.add_subcommand(
      "entropy", "degrees of satisfaction on the empirical distribution of a relation");
  entropy->add_option("--relation", rel_path, "relation CSV")->required();
  entropy->add_option("--constraint", constraint_texts, "constraint text, repeatable");
  entropy->add_flag("--all-fds", all_fds, "enumerate FD degrees X -> y");
  entropy->add_flag("--all-mvds", all_mvds, "enumerate MVD degrees X ->> Y | Z");
  entropy->add_option("--max-lhs", max_lhs, "bound on |X| for the enumerations");

  std::string im_rel, im_baskets;
  auto* imeasure_cmd =
      app.add_subcommand("imeasure", "atom table and step decomposition of a model");
  imeasure_cmd->add_option("--relation", im_rel, "relation CSV");
  imeasure_cmd->add_option("--baskets", im_baskets, "basket file");

  std::string bk_baskets, bk_impl;
  auto* basket_cmd = app.add_subcommand(
      "basket", "evaluate a differential-constraint implication on basket data");
  basket_cmd->add_option("--baskets", bk_baskets, "basket file")->required();
  basket_cmd->add_option("file", bk_impl, "implication file")->required();

  std::string which;
  auto* demo = app.add_subcommand("demo", "built-in end-to-end computations");
  demo->add_option("--which", which, "parity | kr:<eps> | matus:<k> | eq9 | triangle")
      ->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  Output out;
  out.json = json;
  int code = kExitError;
  try {
    if (check->parsed()) code = cmd_check(impl_path, cls, witness, out);
    if (ml->parsed()) code = cmd_minlambda(ml_path, out);
    if (certify->parsed()) code = cmd_certify(cert_path, strategy, out);
    if (entropy->parsed())
      code = cmd_entropy(rel_path, constraint_texts, all_fds, all_mvds, max_lhs, out);
    if (imeasure_cmd->parsed()) {
      if (im_rel.empty() == im_baskets.empty())
        throw std::invalid_argument("imeasure needs exactly one of --relation / --baskets");
      code = cmd_imeasure(im_rel, im_baskets, out);
    }
    if (basket_cmd->parsed()) code = cmd_basket(bk_baskets, bk_impl, out);
    if (demo->parsed()) code = cmd_demo(which, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  out.emit(code);
  return code;
}
