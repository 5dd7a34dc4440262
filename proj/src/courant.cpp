#include "courantlab/courant.hpp"

#include <bit>
#include <functional>

namespace clab {

namespace {

void require_section(const GradedPoly& u, const char* what) {
  if (!is_section(u)) throw DegreeMismatch(std::string(what) + " must be a section (degree 1)", u.to_string());
}

void require_function(const GradedPoly& f, const char* what) {
  if (!is_function(f)) throw DegreeMismatch(std::string(what) + " must be a function (degree 0)", f.to_string());
}

std::string pair_label(const GradedPoly& u, const GradedPoly& v) {
  return "u = " + u.to_string() + "; v = " + v.to_string();
}

std::string triple_label(const GradedPoly& u, const GradedPoly& v, const GradedPoly& w) {
  return pair_label(u, v) + "; w = " + w.to_string();
}

void check_pair(const CourantStructure& c, const GradedPoly& u, const GradedPoly& v, CheckReport& r) {
  const auto uv = dorfman(c, u, v);
  const auto vu = dorfman(c, v, u);
  r.expect_zero("axiom1", uv + vu - partial_op(c, pairing(u, v)), pair_label(u, v));
}

void check_triple(const CourantStructure& c, const GradedPoly& u, const GradedPoly& v, const GradedPoly& w,
                  CheckReport& r) {
  const auto label = triple_label(u, v, w);
  r.expect_zero("axiom2",
                pairing(dorfman(c, u, v), w) + pairing(v, dorfman(c, u, w)) - pairing(u, partial_op(c, pairing(v, w))),
                label);
  r.expect_zero("dorfman-jacobi",
                dorfman(c, u, dorfman(c, v, w)) - dorfman(c, dorfman(c, u, v), w) - dorfman(c, v, dorfman(c, u, w)),
                label);
}

void check_function(const CourantStructure& c, const GradedPoly& u, const GradedPoly& v, const GradedPoly& f,
                    const GradedPoly& h, CheckReport& r) {
  const auto label = pair_label(u, v) + "; f = " + f.to_string();
  r.expect_zero("leibniz-right", dorfman(c, u, mul(f, v)) - mul(f, dorfman(c, u, v)) - mul(anchor_apply(c, u, f), v),
                label);
  r.expect_zero("leibniz-left",
                dorfman(c, mul(f, u), v) - mul(f, dorfman(c, u, v)) + mul(anchor_apply(c, v, f), u) -
                    mul(pairing(u, v), partial_op(c, f)),
                label);
  r.expect_zero("anchor-derivation",
                anchor_apply(c, u, mul(f, h)) - mul(anchor_apply(c, u, f), h) - mul(f, anchor_apply(c, u, h)),
                label + "; h = " + h.to_string());
}

}  // namespace

bool is_section(const GradedPoly& u) { return u.is_homogeneous_of(1); }

bool is_function(const GradedPoly& f) { return f.is_homogeneous_of(0); }

GradedPoly pairing(const GradedPoly& u, const GradedPoly& v) {
  require_section(u, "u");
  require_section(v, "v");
  return poisson_bracket(u, v);
}

GradedPoly derived_bracket(const GradedPoly& theta, const GradedPoly& u, const GradedPoly& v) {
  require_section(u, "u");
  require_section(v, "v");
  return poisson_bracket(poisson_bracket(u, theta), v);
}

GradedPoly derived_anchor(const GradedPoly& theta, const GradedPoly& u, const GradedPoly& f) {
  require_section(u, "u");
  require_function(f, "f");
  return poisson_bracket(poisson_bracket(u, theta), f);
}

GradedPoly anchor_apply(const CourantStructure& c, const GradedPoly& u, const GradedPoly& f) {
  return derived_anchor(c.theta(), u, f);
}

GradedPoly dorfman(const CourantStructure& c, const GradedPoly& u, const GradedPoly& v) {
  return derived_bracket(c.theta(), u, v);
}

GradedPoly partial_op(const CourantStructure& c, const GradedPoly& f) {
  require_function(f, "f");
  return poisson_bracket(c.theta(), f);
}

GradedPoly courant_bracket(const CourantStructure& c, const GradedPoly& u, const GradedPoly& v) {
  return Rational(1, 2) * (dorfman(c, u, v) - dorfman(c, v, u));
}

std::vector<GradedPoly> section_components(const GradedPoly& u) {
  require_section(u, "u");
  const auto& sig = u.signature();
  std::vector<GradedPoly> out(static_cast<std::size_t>(sig->odd_count()), GradedPoly(sig));
  for (const auto& [m, coeff] : u.terms()) {
    Monomial base = m;
    base.odd = 0;
    out[static_cast<std::size_t>(std::countr_zero(m.odd))].add_term(base, coeff);
  }
  return out;
}

std::vector<GradedPoly> base_monomials(const SignaturePtr& sig, int max_degree) {
  std::vector<GradedPoly> out;
  Monomial m;
  std::function<void(int, int)> rec = [&](int var, int remaining) {
    if (var == sig->base_dim()) {
      out.push_back(GradedPoly::from_term(sig, m, Rational(1)));
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      m.q[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(e);
      rec(var + 1, remaining - e);
    }
    m.q[static_cast<std::size_t>(var)] = 0;
  };
  rec(0, max_degree);
  return out;
}

std::vector<GradedPoly> basis_sections(const SignaturePtr& sig, int max_q_degree) {
  std::vector<GradedPoly> out;
  for (const auto& m : base_monomials(sig, max_q_degree))
    for (int a = 0; a < sig->odd_count(); ++a) out.push_back(mul(m, GradedPoly::odd(sig, a)));
  return out;
}

CheckReport verify_courant_axioms(const CourantStructure& c, std::span<const GradedPoly> samples, int max_q_degree) {
  const auto& sig = c.signature();
  const auto basis = basis_sections(sig, max_q_degree);
  std::vector<GradedPoly> gens;
  for (int a = 0; a < sig->odd_count(); ++a) gens.push_back(GradedPoly::odd(sig, a));
  const auto funcs = base_monomials(sig, max_q_degree);

  CheckReport report("courant-axioms");
  const std::size_t n = basis.size();
  report.merge(parallel_sweep("courant-axioms", n, [&](std::size_t i, CheckReport& r) {
    for (std::size_t j = 0; j < n; ++j) {
      check_pair(c, basis[i], basis[j], r);
      for (const auto& w : basis) check_triple(c, basis[i], basis[j], w, r);
    }
  }));
  report.merge(parallel_sweep("courant-axioms", gens.size(), [&](std::size_t i, CheckReport& r) {
    for (const auto& v : basis)
      for (const auto& f : funcs)
        for (const auto& h : funcs) check_function(c, gens[i], v, f, h, r);
  }));
  const std::size_t s = samples.size();
  report.merge(parallel_sweep("courant-axioms", s, [&](std::size_t i, CheckReport& r) {
    const auto& u = samples[i];
    const auto& v = samples[(i + 1) % s];
    const auto& w = samples[(i + 2) % s];
    check_pair(c, u, v, r);
    check_pair(c, u, u, r);
    check_triple(c, u, v, w, r);
    for (const auto& f : funcs) check_function(c, u, v, f, funcs.back(), r);
  }));
  return report;
}

CheckReport verify_partial_op(const CourantStructure& c, int max_q_degree) {
  const auto& sig = c.signature();
  CheckReport report("partial-op");
  for (const auto& f : base_monomials(sig, max_q_degree))
    for (const auto& u : basis_sections(sig, max_q_degree))
      report.expect_zero("pairing with d f", pairing(u, partial_op(c, f)) - anchor_apply(c, u, f),
                         "u = " + u.to_string() + "; f = " + f.to_string());
  return report;
}

}  // namespace clab
