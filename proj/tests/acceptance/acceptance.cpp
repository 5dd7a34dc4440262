// Acceptance criteria: one PASS/FAIL line each. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "courantlab/cli.hpp"
#include "courantlab/irreducibility.hpp"
#include "courantlab/models.hpp"
#include "courantlab/suites.hpp"

using namespace clab;

namespace {

constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail.clear();
      passed = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    if (passed) detail += (detail.empty() ? "" : ", ") + what;
  }
};

std::string first_failure(const CheckReport& r) {
  if (r.failures().empty()) return r.name();
  const auto& f = r.failures().front();
  return r.name() + ": " + f.identity + " [" + f.inputs + "] -> " + f.witness;
}

const CheckReport* find_report(const SuiteResult& s, const std::string& name) {
  for (const auto& r : s.reports)
    if (r.name() == name) return &r;
  return nullptr;
}

// Requires the suite to pass and, when given, the named sweep to have run at
// least `min_checks` checks.
void require_suite(Outcome& o, const std::string& model, const std::string& suite, const std::string& report = {},
                   std::size_t min_checks = 0) {
  static std::map<std::pair<std::string, std::string>, SuiteResult> cache;
  auto it = cache.find({model, suite});
  if (it == cache.end()) it = cache.emplace(std::pair{model, suite}, run_suite(builtin_model(model), suite, {kSeed, true})).first;
  const auto& s = it->second;
  for (const auto& r : s.reports)
    if (!r.passed()) o.require(false, model + " " + first_failure(r));
  o.require(s.applicable, model + " " + suite + " not applicable");
  if (!report.empty()) {
    const auto* r = find_report(s, report);
    o.require(r != nullptr, model + " has no " + report + " report");
    if (r) {
      o.require(r->checks() >= min_checks, model + " " + report + " ran only " + std::to_string(r->checks()) + " checks");
      o.note(model + " " + std::to_string(r->checks()));
    }
  }
}

SignaturePtr sweep_signature(int odd, int base) {
  std::vector<OddGenerator> gens;
  for (int a = 0; a < odd; ++a) gens.push_back({"t" + std::to_string(a + 1), OddLabel::none});
  RationalMatrix g = identity_matrix(static_cast<std::size_t>(odd));
  if (odd >= 2) {
    g(0, 0) = g(1, 1) = 0;
    g(0, 1) = g(1, 0) = 1;
  }
  if (odd >= 3) g(2, 2) = -2;
  return make_signature(base, gens, g);
}

const std::vector<std::string> kCourantModels{"so3", "so3xso3", "abelian2", "gt1", "aff1", "aff1cob", "sl2", "tr2"};

// ---------------------------------------------------------------- criteria

Outcome poisson_kernel() {
  Outcome o;
  std::size_t triples = 0;
  for (int odd = 1; odd <= 6; ++odd)
    for (int base = 0; base <= 2; ++base) {
      const auto r = poisson_identity_sweep(sweep_signature(odd, base), derive_seed(kSeed, "acceptance", 100 * odd + base),
                                            12, 4, true);
      o.require(r.passed(), first_failure(r));
      triples += 12;
    }
  o.require(triples >= 200, "too few triples");
  o.note(std::to_string(triples) + " triples over 18 signatures");
  return o;
}

Outcome courant_axioms() {
  Outcome o;
  for (const auto& name : {"so3", "aff1", "gt1", "so3xso3"}) {
    const auto model = builtin_model(name);
    const CourantStructure c(model.theta);
    const int maxq = model.sig->base_dim() > 0 ? 2 : 0;
    Sampler s(derive_seed(kSeed, std::string("acceptance-axioms-") + name, 0));
    std::vector<GradedPoly> samples;
    for (int i = 0; i < 100; ++i) samples.push_back(s.section(model.sig, maxq));
    const auto r = verify_courant_axioms(c, samples, maxq);
    o.require(r.passed(), std::string(name) + " " + first_failure(r));
    o.note(std::string(name) + " " + std::to_string(r.checks()));
  }
  return o;
}

Outcome deformed_bracket_agreement() {
  Outcome o;
  for (const auto& m : kCourantModels) require_suite(o, m, "torsion-identities", "deformed-bracket", 50);
  return o;
}

Outcome defect_identities() {
  Outcome o;
  for (const auto& m : kCourantModels) require_suite(o, m, "torsion-identities", "defect-identities", 50);
  return o;
}

Outcome closed_form_torsion() {
  Outcome o;
  for (const auto& name : {"aff1", "aff1cob", "sl2", "tr2"}) {
    const DoubleFrame frame(builtin_model(name).sig);
    const auto instances = cps_instances(frame, derive_seed(kSeed, "cps", 0), 24);
    bool minus_one = false, zero = false, one = false;
    for (const auto& i : instances) {
      minus_one = minus_one || i.lambda == -1;
      zero = zero || i.lambda == 0;
      one = one || i.lambda == 1;
    }
    o.require(instances.size() >= 20, std::string(name) + ": fewer than 20 instances");
    o.require(zero && one && (minus_one || frame.rank() % 2 == 1),
              std::string(name) + ": lambda in {-1, 0, 1} not all covered");
    require_suite(o, name, "theorem-A3", "cps-torsion", 20);
  }
  return o;
}

Outcome cns_equivalence() {
  Outcome o;
  for (const auto& m : {"so3", "aff1", "gt1"}) require_suite(o, m, "theorem-CNS", "cns", 100);
  return o;
}

Outcome paired_invariance() {
  Outcome o;
  for (const auto& m : kCourantModels) require_suite(o, m, "torsion-identities", "paired-shift", 50);
  return o;
}

Outcome torsion_sum() {
  Outcome o;
  for (const auto& m : {"aff1", "gt1", "sl2"}) {
    require_suite(o, m, "torsion-sum", "torsion-components", 50);
    // The sum identity needs at least one cps instance.
    const auto model = builtin_model(m);
    const auto db = model.double_model();
    std::size_t sums = 0;
    for (const auto& inst : cps_instances(db.frame, derive_seed(kSeed, "cps", 0), 24)) {
      if (!is_zero(inst.block.pi) || !is_zero(inst.block.omega)) continue;
      const auto r = torsion_sum_check(db, inst.block.n, 0);
      o.require(r.sum_identity && r.sum_identity->passed(), std::string(m) + ": sum identity");
      ++sums;
    }
    o.require(sums > 0, std::string(m) + ": no cps instance");
  }
  o.note("sl2 has a nonzero cobracket");
  return o;
}

Outcome trivial_double() {
  Outcome o;
  const auto model = builtin_model("gt1");
  const auto db = model.double_model();
  std::vector<FunctionMatrix> tensors{*model.endomorphism("Q").block, *model.endomorphism("Q2").block};
  for (const auto& n : search_nijenhuis(db, derive_seed(kSeed, "nijenhuis-search", 0), 40, 1)) tensors.push_back(n);
  std::size_t non_scalar = 0;
  for (const auto& n : tensors) {
    if (cps_check(double_endo(db.frame, n))) continue;
    ++non_scalar;
    const auto r = trivial_double_deform(db, n);
    const auto label = to_string(n);
    o.require(tensor_is_zero(r.torsion), label + ": torsion");
    o.require(r.square_identity_defect.is_zero(), label + ": {{N,mu},N} = {mu,N^2}");
    o.require(r.cocycle_defect.is_zero(), label + ": cocycle");
    o.require(r.master_defect.is_zero(), label + ": master");
    o.require(r.double_defect.is_zero(), label + ": trivial double");
  }
  o.require(non_scalar >= 2, "fewer than two tensors with non-scalar N^2");
  o.note(std::to_string(non_scalar) + " base Nijenhuis tensors with non-scalar N^2");
  return o;
}

Outcome pn_omega_n() {
  Outcome o;
  const auto model = builtin_model("tr2");
  const auto db = model.double_model();
  const auto& sig = db.frame.signature();
  const auto j = model.tensor("pi").matrix;
  const auto q1 = GradedPoly::q(sig, 0), q2 = GradedPoly::q(sig, 1);
  std::vector<FunctionMatrix> ns;
  for (const auto& f : {GradedPoly(sig), GradedPoly::constant(sig, 1), GradedPoly::constant(sig, -2), q1, q2,
                        q1 + mul(q2, q2), mul(q1, q2) + GradedPoly::constant(sig, Rational(1, 2))}) {
    auto n = zero_functions(sig, 2, 2);
    n(0, 0) = n(1, 1) = f;
    ns.push_back(n);
  }
  std::size_t pn_pairs = 0, omega_pairs = 0, cps_pairs = 0;
  for (const auto& n : ns)
    for (const Rational c : {Rational(1), Rational(-2), Rational(1, 2)}) {
      auto pi = j;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) pi(a, b) = c * pi(a, b);
      const auto label = "pi = " + to_string(pi) + ", N = " + to_string(n);
      const auto p = pn_check(db, pi, n);
      o.require(p.decomposition.passed(), label + ": " + first_failure(p.decomposition));
      o.require(p.commutes, label + ": N pi != pi tN");
      if (p.weak_deforming_defect) o.require(p.weak_deforming_defect->is_zero(), label + ": PN weak deforming");
      if (p.block_torsion_vanishes) {
        o.require(*p.block_torsion_vanishes == p.pn(), label + ": T(calN) = 0 <=> PN");
        ++cps_pairs;
      }
      ++pn_pairs;

      const auto w = omega_n_check(db, pi, n);
      o.require(w.omega_square.is_zero(), label + ": {{omega, mu}, omega}");
      if (w.weak_deforming_defect) o.require(w.weak_deforming_defect->is_zero(), label + ": Omega N weak deforming");
      ++omega_pairs;
    }
  o.require(pn_pairs >= 20 && omega_pairs >= 20, "fewer than 20 pairs");
  o.require(cps_pairs > 0, "no cps pair");
  for (const auto& m : {"tr2", "aff1", "sl2"}) require_suite(o, m, "deformations");
  o.note(std::to_string(pn_pairs) + " PN pairs, " + std::to_string(omega_pairs) + " Omega-N pairs, " +
         std::to_string(cps_pairs) + " cps");
  return o;
}

Outcome irreducibility() {
  Outcome o;
  const auto so3 = is_irreducible_courant(builtin_model("so3").theta, 0);
  o.require(so3.verdict == Verdict::irreducible && so3.symmetric_p1.space.dimension() == 1 && so3.contains_identity,
            "so3 not Irreducible with span{Id}");
  const auto ab = is_irreducible_courant(builtin_model("abelian2").theta, 0);
  o.require(ab.verdict == Verdict::reducible && ab.witness.has_value(), "abelian2 not reducible");
  const auto abd = builtin_model("abelian_double").double_model();
  const auto abl = is_irreducible_lie_algebroid(abd.frame, abd.mu, 0);
  o.require(abl.verdict == Verdict::reducible && abl.witness.has_value(), "abelian Lie algebroid not reducible");
  const auto gt1 = is_irreducible_courant(builtin_model("gt1").theta, 2);
  o.require(gt1.verdict == Verdict::irreducible_up_to_degree && gt1.max_q_degree == 2 &&
                gt1.symmetric_p1.space.dimension() == 1,
            "gt1 not IrreducibleUpToDegree(2)");
  std::size_t models = 0;
  for (const auto& name : builtin_model_names()) {
    const auto model = builtin_model(name);
    if (!poisson_bracket(model.theta, model.theta).is_zero()) continue;
    const int d = model.sig->base_dim() > 0 ? 1 : 0;
    o.require(same_space(solve_property(model.theta, Property::p1, false, d).space,
                         solve_property(model.theta, Property::p2, false, d).space),
              name + ": P1 != P2");
    ++models;
  }
  o.note("P1 = P2 on " + std::to_string(models) + " models");
  return o;
}

Outcome cli_determinism() {
  Outcome o;
  auto run = [](const std::vector<std::string>& args, std::string& out) {
    std::ostringstream o_out, o_err;
    const int code = run_command(args, o_out, o_err);
    out = o_out.str();
    return code;
  };
  for (const auto& m : {"gt1", "aff1", "so3"}) {
    std::string a, b;
    const int ca = run({"verify", m, "--suite", "all", "--seed", "7", "--json"}, a);
    const int cb = run({"verify", m, "--suite", "all", "--seed", "7", "--json"}, b);
    o.require(ca == kExitPass && cb == kExitPass, std::string(m) + ": exit code");
    o.require(a == b && !a.empty(), std::string(m) + ": reports differ");
  }
  std::string failing;
  const int code = run({"verify", "failing", "--suite", "all", "--seed", "7", "--json"}, failing);
  o.require(code == kExitMathFailure, "failing model exit code " + std::to_string(code));
  o.require(failing.find("2 t2 t3 t5 t6") != std::string::npos, "no {Theta, Theta} witness");
  std::string ignored;
  o.require(run({"verify", "no-such-model"}, ignored) == kExitInputError, "input error exit code");
  o.note("byte-identical reports, exit 1 with witness 2 t2 t3 t5 t6");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"poisson-kernel", poisson_kernel},
      {"courant-axioms", courant_axioms},
      {"deformed-bracket-agreement", deformed_bracket_agreement},
      {"defect-identities", defect_identities},
      {"closed-form-torsion", closed_form_torsion},
      {"deformation-master-equivalence", cns_equivalence},
      {"paired-tensor-invariance", paired_invariance},
      {"double-torsion-sum", torsion_sum},
      {"trivial-double-deformation", trivial_double},
      {"pn-omega-n", pn_omega_n},
      {"irreducibility", irreducibility},
      {"cli-determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += o.passed ? 0 : 1;
    std::cout << (o.passed ? "PASS" : "FAIL") << " " << std::setw(2) << i + 1 << " " << criteria[i].first << " ("
              << std::fixed << std::setprecision(2) << dt << " s): " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
