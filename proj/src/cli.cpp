#include "courantlab/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "courantlab/irreducibility.hpp"
#include "courantlab/models.hpp"
#include "courantlab/suites.hpp"

namespace clab {

namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json check_json(const CheckReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures())
    failures.push_back({{"identity", f.identity}, {"inputs", f.inputs}, {"witness", f.witness}});
  return {{"name", r.name()},
          {"checks", r.checks()},
          {"failures", r.failure_count()},
          {"passed", r.passed()},
          {"counterexamples", failures}};
}

json tensor_json(const AlgebroidTensor& t) {
  json components = json::array();
  for (const auto& c : t.components) components.push_back(to_string(c));
  return {{"side", t.side == Side::A ? "A" : "A*"}, {"components", components}, {"zero", tensor_is_zero(t)}};
}

json cps_json(const std::optional<CpsInfo>& info) {
  if (!info) return nullptr;
  json out{{"lambda", to_string(info->lambda)},
           {"epsilon", info->epsilon},
           {"needs_quadratic_extension", info->needs_quadratic_extension()}};
  out["scale"] = info->scale ? json(to_string(*info->scale)) : json(nullptr);
  return out;
}

json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

json optional_poly(const std::optional<GradedPoly>& p) { return p ? json(p->to_string()) : json(nullptr); }

Model load_model(const std::string& arg) {
  const std::filesystem::path path(arg);
  std::error_code ec;
  if (std::filesystem::is_regular_file(path, ec)) {
    try {
      return parse_model(path);
    } catch (const ParseError& e) {
      throw InputError(arg + ": " + e.what());
    } catch (const AlgebraError& e) {
      throw InputError(arg + ": " + e.what());
    }
  }
  const auto names = builtin_model_names();
  for (const auto& candidate : {arg, path.stem().string()})
    if (std::find(names.begin(), names.end(), candidate) != names.end()) return builtin_model(candidate);
  std::string known;
  for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
  throw InputError("no model file or builtin model named '" + arg + "' (builtin: " + known + ")");
}

GradedPoly expr_arg(const Model& model, const std::string& what, const std::string& text) {
  try {
    return parse_expr(text, model.sig);
  } catch (const ParseError& e) {
    throw InputError(what + ": " + e.what());
  }
}

GradedPoly section_arg(const Model& model, const std::string& what, const std::string& text) {
  auto u = expr_arg(model, what, text);
  if (!u.is_zero() && !is_section(u)) throw InputError(what + ": '" + u.to_string() + "' is not a section");
  return u;
}

ModelEndomorphism endo_arg(const Model& model, const std::string& name) {
  try {
    return model.endomorphism(name);
  } catch (const std::out_of_range& e) {
    throw InputError(e.what());
  }
}

DoubleModel double_arg(const Model& model) {
  if (!model.is_double()) throw InputError("model '" + model.name + "' has no [mu] section");
  return model.double_model();
}

FunctionMatrix block_arg(const Model& model, const DoubleFrame& frame, const std::string& name) {
  const auto e = endo_arg(model, name);
  if (e.block) return *e.block;
  if (name == "0") return zero_functions(frame.signature(), frame.rank(), frame.rank());
  if (name == "Id") return identity_functions(frame.signature(), frame.rank());
  throw InputError("endomorphism '" + name + "' is not given as a rank x rank block on A");
}

FunctionMatrix tensor_arg(const Model& model, const DoubleFrame& frame, const std::string& name, TensorKind kind) {
  if (name == "0") return zero_functions(frame.signature(), frame.rank(), frame.rank());
  try {
    const auto& t = model.tensor(name);
    if (t.kind != kind)
      throw InputError("tensor '" + name + "' is a " + (t.kind == TensorKind::bivector ? "bivector" : "form"));
    return t.matrix;
  } catch (const std::out_of_range& e) {
    throw InputError(e.what());
  }
}

json base_report(const std::string& command, const Model& model) {
  return {{"command", command}, {"model", model.name}};
}

void require_skew(const Endomorphism& n) {
  if (!is_skew(n))
    throw AlgebraError("endomorphism is not skew-symmetric for the pairing: N + tN != 0", (n + transpose(n)).to_string());
}

// ---------------------------------------------------------------- commands

json cmd_validate(const Model& model, int max_degree, std::uint64_t seed, int samples) {
  auto report = base_report("validate", model);
  const auto master = poisson_bracket(model.theta, model.theta);
  const bool degree3 = model.theta.is_zero() || model.theta.is_homogeneous_of(3);
  report["degree3"] = degree3;
  report["master_equation"] = {{"holds", master.is_zero()}, {"witness", master.to_string()}};
  bool passed = degree3 && master.is_zero();
  if (passed) {
    const CourantStructure c(model.theta);
    Sampler s(derive_seed(seed, "validate", 0));
    std::vector<GradedPoly> sections;
    for (int i = 0; i < samples; ++i) sections.push_back(s.section(model.sig, max_degree));
    const auto axioms = verify_courant_axioms(c, sections, max_degree);
    const auto partial = verify_partial_op(c, max_degree);
    report["axioms"] = check_json(axioms);
    report["partial_op"] = check_json(partial);
    passed = axioms.passed() && partial.passed();
  }
  if (model.is_double()) {
    const auto db = model.double_model();
    const auto cond = bialgebroid_conditions(db);
    report["bialgebroid"] = {{"mu_mu", cond.mu_mu.to_string()},
                             {"mu_gamma", cond.mu_gamma.to_string()},
                             {"gamma_gamma", cond.gamma_gamma.to_string()},
                             {"valid", cond.valid()}};
    passed = passed && cond.valid();
  }
  report["passed"] = passed;
  return report;
}

json cmd_bracket(const Model& model, const std::string& a, const std::string& b) {
  const auto f = expr_arg(model, "first expression", a);
  const auto g = expr_arg(model, "second expression", b);
  auto report = base_report("bracket", model);
  report["a"] = f.to_string();
  report["b"] = g.to_string();
  report["result"] = poisson_bracket(f, g).to_string();
  report["passed"] = true;
  return report;
}

json cmd_dorfman(const Model& model, const std::string& a, const std::string& b) {
  const auto u = section_arg(model, "first section", a);
  const auto v = section_arg(model, "second section", b);
  auto report = base_report("dorfman", model);
  report["u"] = u.to_string();
  report["v"] = v.to_string();
  report["dorfman"] = derived_bracket(model.theta, u, v).to_string();
  report["courant"] =
      (Rational(1, 2) * (derived_bracket(model.theta, u, v) - derived_bracket(model.theta, v, u))).to_string();
  report["pairing"] = pairing(u, v).to_string();
  report["passed"] = true;
  return report;
}

json cmd_torsion(const Model& model, const std::string& name, bool courant, int max_degree) {
  const auto n = endo_arg(model, name).full;
  auto report = base_report("torsion", model);
  report["endomorphism"] = n.to_string();
  report["bracket"] = courant ? "courant" : "dorfman";
  json values = json::array();
  const auto basis = basis_sections(model.sig, max_degree);
  for (const auto& u : basis)
    for (const auto& v : basis) {
      const auto t = courant ? torsion_courant(model.theta, n, u, v) : torsion_dorfman(model.theta, n, u, v);
      if (!t.is_zero()) values.push_back({{"u", u.to_string()}, {"v", v.to_string()}, {"value", t.to_string()}});
    }
  report["vanishes"] = values.empty();
  report["nonzero_values"] = values;
  bool passed = true;
  if (is_skew(n)) {
    if (const auto info = cps_check(n)) {
      report["closed_form"] = torsion_tensor(model.theta, lift_endo(n), info->lambda).to_string();
      const auto agreement = check_torsion_tensor(model.theta, n, max_degree);
      report["closed_form_agreement"] = check_json(agreement);
      passed = agreement.passed();
    }
  }
  report["passed"] = passed;
  return report;
}

json cmd_classify(const Model& model, const std::string& name) {
  const auto n = endo_arg(model, name).full;
  require_skew(n);
  const auto t = classify(CourantStructure(model.theta), n);
  auto report = base_report("classify", model);
  report["endomorphism"] = n.to_string();
  report["skew"] = t.skew;
  report["cps"] = cps_json(t.cps);
  report["nijenhuis"] = optional_bool(t.nijenhuis);
  report["weak_nijenhuis"] = optional_bool(t.weak_nijenhuis);
  report["deforming"] = t.deforming();
  report["deforming_factor"] = t.deforming_factor ? json(to_string(*t.deforming_factor)) : json(nullptr);
  report["weak_deforming"] = t.weak_deforming;
  json witnesses = json::array();
  for (const auto& w : t.witnesses) witnesses.push_back({{"label", w.label}, {"value", w.value.to_string()}});
  report["witnesses"] = witnesses;
  report["passed"] = true;
  return report;
}

json cmd_deform(const Model& model, const std::string& name) {
  const auto n = endo_arg(model, name).full;
  require_skew(n);
  const auto d = deform(CourantStructure(model.theta), n);
  auto report = base_report("deform", model);
  report["endomorphism"] = n.to_string();
  report["theta_prime"] = d.theta_prime.to_string();
  report["valid"] = d.valid;
  report["master_defect"] = d.master_defect.to_string();
  report["sum_defect"] = optional_poly(d.sum_defect);
  report["compatible"] = d.compatible();
  report["passed"] = true;
  return report;
}

json cmd_double(const Model& model) {
  const auto db = double_arg(model);
  auto report = base_report("double", model);
  const auto cond = bialgebroid_conditions(db);
  report["mu"] = db.mu.to_string();
  report["gamma"] = db.gamma.to_string();
  report["theta"] = db.theta().to_string();
  report["conditions"] = {{"mu_mu", cond.mu_mu.to_string()},
                          {"mu_gamma", cond.mu_gamma.to_string()},
                          {"gamma_gamma", cond.gamma_gamma.to_string()}};
  report["lie_bialgebroid"] = cond.valid();
  bool passed = cond.valid();
  if (passed) {
    const auto restriction = check_double_restrictions(db);
    const auto c = assemble_double(db);
    const auto axioms = verify_courant_axioms(c, {}, db.frame.signature()->base_dim() > 0 ? 1 : 0);
    report["restrictions"] = check_json(restriction);
    report["axioms"] = check_json(axioms);
    passed = restriction.passed() && axioms.passed();
  }
  report["passed"] = passed;
  return report;
}

json cmd_pn(const Model& model, const std::string& pi_name, const std::string& n_name) {
  const auto db = double_arg(model);
  const auto pi = tensor_arg(model, db.frame, pi_name, TensorKind::bivector);
  const auto n = block_arg(model, db.frame, n_name);
  const auto r = pn_check(db, pi, n);
  auto report = base_report("pn", model);
  report["pi"] = to_string(pi);
  report["n"] = to_string(n);
  report["commutes"] = r.commutes;
  report["schouten"] = r.schouten.to_string();
  report["concomitant"] = r.concomitant.to_string();
  report["torsion"] = tensor_json(r.torsion);
  report["decomposition"] = check_json(r.decomposition);
  report["pn"] = r.pn();
  report["weak_deforming_defect"] = optional_poly(r.weak_deforming_defect);
  report["block_torsion_vanishes"] = optional_bool(r.block_torsion_vanishes);
  report["passed"] = r.pn() && r.decomposition.passed();
  return report;
}

json cmd_omegan(const Model& model, const std::string& omega_name, const std::string& n_name) {
  const auto db = double_arg(model);
  const auto omega = tensor_arg(model, db.frame, omega_name, TensorKind::form);
  const auto n = block_arg(model, db.frame, n_name);
  const auto r = omega_n_check(db, omega, n);
  auto report = base_report("omegan", model);
  report["omega"] = to_string(omega);
  report["n"] = to_string(n);
  report["commutes"] = r.commutes;
  report["d_mu_omega"] = r.d_mu_omega.to_string();
  report["d_mu_n_omega"] = r.d_mu_n_omega.to_string();
  report["torsion"] = tensor_json(r.torsion);
  report["omega_square"] = r.omega_square.to_string();
  report["omega_n"] = r.omega_n();
  report["weak_deforming_defect"] = optional_poly(r.weak_deforming_defect);
  report["passed"] = r.omega_n();
  return report;
}

template <typename Basis, typename Str>
json basis_json(const Basis& basis, Str&& str) {
  json out = json::array();
  for (const auto& b : basis) out.push_back(str(b));
  return out;
}

json cmd_irreducible(const Model& model, int max_degree, bool lie_algebroid) {
  auto report = base_report("irreducible", model);
  report["max_degree"] = max_degree;
  auto verdict_text = [&](Verdict v) {
    return v == Verdict::irreducible_up_to_degree ? verdict_name(v) + "(" + std::to_string(max_degree) + ")"
                                                  : verdict_name(v);
  };
  if (lie_algebroid) {
    const auto db = double_arg(model);
    const auto r = is_irreducible_lie_algebroid(db.frame, db.mu, max_degree);
    report["structure"] = "lie-algebroid";
    report["verdict"] = verdict_name(r.verdict);
    report["verdict_text"] = verdict_text(r.verdict);
    report["dimension"] = r.solutions.space.dimension();
    report["basis"] = basis_json(r.solutions.basis, [](const FunctionMatrix& m) { return to_string(m); });
    report["witness"] = r.witness ? json(to_string(*r.witness)) : json(nullptr);
    report["contains_identity"] = r.contains_identity;
  } else {
    const auto r = is_irreducible_courant(model.theta, max_degree);
    report["structure"] = "courant";
    report["verdict"] = verdict_name(r.verdict);
    report["verdict_text"] = verdict_text(r.verdict);
    report["dimension"] = r.symmetric_p1.space.dimension();
    report["basis"] = basis_json(r.symmetric_p1.basis, [](const Endomorphism& e) { return e.to_string(); });
    report["witness"] = r.witness ? json(r.witness->to_string()) : json(nullptr);
    report["contains_identity"] = r.contains_identity;
    report["p1_equals_p2"] = r.p1_equals_p2;
    report["p1_equals_p1_prime"] = r.p1_equals_p1_prime;
  }
  report["passed"] = true;
  return report;
}

json cmd_verify(const Model& model, const std::string& suite, std::uint64_t seed, bool serial) {
  if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw InputError("unknown suite '" + suite + "'");
  auto report = base_report("verify", model);
  report["seed"] = seed;
  json suites = json::array();
  bool passed = true;
  for (const auto& s : run_suites(model, suite, {seed, !serial})) {
    json reports = json::array();
    std::size_t checks = 0;
    for (const auto& r : s.reports) {
      reports.push_back(check_json(r));
      checks += r.checks();
    }
    suites.push_back({{"name", s.name},
                      {"applicable", s.applicable},
                      {"note", s.note},
                      {"checks", checks},
                      {"passed", s.passed()},
                      {"reports", reports}});
    passed = passed && s.passed();
  }
  report["suites"] = suites;
  report["passed"] = passed;
  return report;
}

// ---------------------------------------------------------------- output

void render(const json& j, std::ostream& out, int indent);

void render_scalar(const json& j, std::ostream& out) {
  if (j.is_string())
    out << j.get<std::string>();
  else
    out << j.dump();
}

void render_entry(const std::string& prefix, const json& v, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object() || (v.is_array() && !v.empty())) {
    out << pad << prefix << "\n";
    render(v, out, indent + 2);
  } else {
    out << pad << prefix << " ";
    if (v.is_array())
      out << "[]";
    else
      render_scalar(v, out);
    out << "\n";
  }
}

void render(const json& j, std::ostream& out, int indent) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_entry(k + ":", v, out, indent);
  } else if (j.is_array()) {
    for (const auto& v : j) render_entry("-", v, out, indent);
  } else {
    out << std::string(static_cast<std::size_t>(indent), ' ');
    render_scalar(j, out);
    out << "\n";
  }
}

void emit(const json& report, bool as_json, std::ostream& out) {
  if (as_json)
    out << report.dump(2) << "\n";
  else
    render(report, out, 0);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact graded Poisson calculus on Courant algebroids and Lie bialgebroid doubles", "courantlab"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Print the report as JSON");

  std::string model_arg, a, b, name;
  bool courant = false, lie_algebroid = false, serial = false;
  int max_degree = -1, samples = 100;
  std::uint64_t seed = 7;
  std::string suite = "all";

  auto model_opt = [&](CLI::App* sub) { sub->add_option("model", model_arg, "Model file or builtin name")->required(); };

  auto* validate = app.add_subcommand("validate", "Master equation, Courant axioms and bialgebroid conditions");
  model_opt(validate);
  validate->add_option("--max-degree", max_degree, "Maximal q-degree of basis sections (default 2)");
  validate->add_option("--seed", seed, "Seed for the random sections");
  validate->add_option("--samples", samples, "Number of random sections")->check(CLI::NonNegativeNumber);

  auto* bracket = app.add_subcommand("bracket", "Poisson bracket {a, b}");
  model_opt(bracket);
  bracket->add_option("a", a)->required();
  bracket->add_option("b", b)->required();

  auto* dorfman_cmd = app.add_subcommand("dorfman", "Dorfman bracket, Courant bracket and pairing of two sections");
  model_opt(dorfman_cmd);
  dorfman_cmd->add_option("u", a)->required();
  dorfman_cmd->add_option("v", b)->required();

  auto* torsion = app.add_subcommand("torsion", "Torsion of an endomorphism on basis sections");
  model_opt(torsion);
  torsion->add_option("endo", name)->required();
  torsion->add_flag("--courant", courant, "Use the skew-symmetrized bracket");
  torsion->add_option("--max-degree", max_degree, "Maximal q-degree of basis sections (default 1)");

  auto* classify_cmd = app.add_subcommand("classify", "Skew, cps, Nijenhuis and deforming properties");
  model_opt(classify_cmd);
  classify_cmd->add_option("endo", name)->required();

  auto* deform_cmd = app.add_subcommand("deform", "Deformed structure {N~, Theta} and its validity");
  model_opt(deform_cmd);
  deform_cmd->add_option("endo", name)->required();

  auto* double_cmd = app.add_subcommand("double", "Assemble and check the double of a Lie bialgebroid");
  model_opt(double_cmd);

  auto* pn = app.add_subcommand("pn", "Poisson-Nijenhuis check for a bivector and an endomorphism of A");
  model_opt(pn);
  pn->add_option("pi", a, "Bivector tensor name or 0")->required();
  pn->add_option("endo", name)->required();

  auto* omegan = app.add_subcommand("omegan", "Omega-N check for a 2-form and an endomorphism of A");
  model_opt(omegan);
  omegan->add_option("omega", a, "Form tensor name or 0")->required();
  omegan->add_option("endo", name)->required();

  auto* irreducible = app.add_subcommand("irreducible", "Endomorphisms commuting with the bracket");
  model_opt(irreducible);
  irreducible->add_option("--max-degree", max_degree, "Maximal q-degree of the ansatz (default 2)")
      ->check(CLI::NonNegativeNumber);
  irreducible->add_flag("--lie-algebroid", lie_algebroid, "Use the Lie algebroid on A of a double");

  auto* verify = app.add_subcommand("verify", "Seeded invariant sweeps");
  model_opt(verify);
  std::string suite_help = "all";
  for (const auto& s : suite_names()) suite_help += ", " + s;
  verify->add_option("--suite", suite, "One of: " + suite_help);
  verify->add_option("--seed", seed, "Seed for the random instances");
  verify->add_flag("--serial", serial, "Run the sweeps on one thread");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    const auto model = load_model(model_arg);
    auto degree = [&](int fallback) { return max_degree >= 0 ? max_degree : fallback; };
    json report;
    if (validate->parsed())
      report = cmd_validate(model, degree(2), seed, samples);
    else if (bracket->parsed())
      report = cmd_bracket(model, a, b);
    else if (dorfman_cmd->parsed())
      report = cmd_dorfman(model, a, b);
    else if (torsion->parsed())
      report = cmd_torsion(model, name, courant, degree(1));
    else if (classify_cmd->parsed())
      report = cmd_classify(model, name);
    else if (deform_cmd->parsed())
      report = cmd_deform(model, name);
    else if (double_cmd->parsed())
      report = cmd_double(model);
    else if (pn->parsed())
      report = cmd_pn(model, a, name);
    else if (omegan->parsed())
      report = cmd_omegan(model, a, name);
    else if (irreducible->parsed())
      report = cmd_irreducible(model, degree(2), lie_algebroid);
    else
      report = cmd_verify(model, suite, seed, serial);
    emit(report, as_json, out);
    return report["passed"].get<bool>() ? kExitPass : kExitMathFailure;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const AlgebraError& e) {
    json report{{"error", e.what()}, {"witness", e.witness()}, {"passed", false}};
    emit(report, as_json, out);
    err << "failure: " << e.what() << (e.witness().empty() ? "" : ": " + e.witness()) << "\n";
    return kExitMathFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace clab
