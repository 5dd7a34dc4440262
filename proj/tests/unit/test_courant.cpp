#include "doctest.h"

#include "courantlab/courant.hpp"
#include "courantlab/models.hpp"
#include "courantlab/sampling.hpp"
#include "helpers.hpp"

using namespace clab;

namespace {

GradedPoly zero_theta(int odd, int base = 0) { return GradedPoly(test::euclidean(odd, base)); }

}  // namespace

TEST_CASE("zero structure has zero anchor, bracket and d") {
  const CourantStructure c(zero_theta(2, 1));
  const auto& sig = c.signature();
  const auto t1 = GradedPoly::odd(sig, 0), t2 = GradedPoly::odd(sig, 1);
  const auto q = GradedPoly::q(sig, 0);
  CHECK(anchor_apply(c, t1, q).is_zero());
  CHECK(dorfman(c, t1, mul(q, t2)).is_zero());
  CHECK(partial_op(c, mul(q, q)).is_zero());
  CHECK(verify_courant_axioms(c, {}, 2).passed());
}

TEST_CASE("so(3): bracket is the cross product up to one global sign, anchor and d vanish") {
  const auto model = builtin_model("so3");
  const CourantStructure c(model.theta);
  auto t = [&](int a) { return GradedPoly::odd(model.sig, a); };
  const auto e12 = dorfman(c, t(0), t(1));
  REQUIRE((e12 == t(2) || e12 == -t(2)));
  const Rational s = e12 == t(2) ? 1 : -1;
  CHECK(dorfman(c, t(1), t(2)) == s * t(0));
  CHECK(dorfman(c, t(2), t(0)) == s * t(1));
  CHECK(dorfman(c, t(1), t(0)) == -s * t(2));
  CHECK(dorfman(c, t(0), t(0)).is_zero());
  // Over a point the Courant and Dorfman brackets agree.
  CHECK(courant_bracket(c, t(0), t(1)) == e12);
  CHECK(partial_op(c, GradedPoly::constant(model.sig, 5)).is_zero());
  CHECK(anchor_apply(c, t(0), GradedPoly::constant(model.sig, 1)).is_zero());
  CHECK(verify_courant_axioms(c, {}, 0).passed());
}

TEST_CASE("generalized tangent bundle of the line") {
  const auto model = builtin_model("gt1");
  const CourantStructure c(model.theta);
  const auto& sig = model.sig;
  const auto th = GradedPoly::odd(sig, 0), ta = GradedPoly::odd(sig, 1);
  const auto q = GradedPoly::q(sig, 0);

  // rho(d/dx) x = 1
  CHECK(anchor_apply(c, th, q) == GradedPoly::constant(sig, 1));
  // [d/dx, x d/dx] = d/dx
  CHECK(dorfman(c, th, mul(q, th)) == th);
  // dx pairs with d/dx to rho(d/dx) x = 1, so d q = dx.
  const auto dq = partial_op(c, q);
  CHECK(dq == ta);
  CHECK(pairing(th, dq) == anchor_apply(c, th, q));
  CHECK(partial_op(c, GradedPoly::constant(sig, 3)).is_zero());

  // Courant and Dorfman brackets differ by 1/2 d<u, v>.
  const auto v = mul(q, ta);
  CHECK(dorfman(c, th, v) - courant_bracket(c, th, v) == Rational(1, 2) * partial_op(c, pairing(th, v)));
  CHECK(courant_bracket(c, th, th).is_zero());

  Sampler s(11);
  std::vector<GradedPoly> samples;
  for (int i = 0; i < 100; ++i) samples.push_back(s.section(sig, 2));
  CHECK(verify_courant_axioms(c, samples, 2).passed());
  CHECK(verify_partial_op(c, 2).passed());
}

TEST_CASE("axioms on so(3) + so(3) with random sections") {
  const auto model = builtin_model("so3xso3");
  const CourantStructure c(model.theta);
  Sampler s(3);
  std::vector<GradedPoly> samples;
  for (int i = 0; i < 100; ++i) samples.push_back(s.section(model.sig, 0));
  const auto report = verify_courant_axioms(c, samples, 0);
  CHECK(report.passed());
  CHECK(report.checks() > 100);
}

TEST_CASE("a structure violating the master equation is rejected") {
  const auto model = builtin_model("failing");
  CHECK_THROWS_AS(CourantStructure{model.theta}, MasterEquationFails);
  // The derived bracket itself is still defined.
  CHECK_FALSE(derived_bracket(model.theta, GradedPoly::odd(model.sig, 1), GradedPoly::odd(model.sig, 2)).is_zero());
}

TEST_CASE("basis sections and components") {
  auto sig = test::euclidean(2, 1);
  CHECK(base_monomials(sig, 2).size() == 3);
  CHECK(basis_sections(sig, 1).size() == 4);
  const auto q = GradedPoly::q(sig, 0);
  const auto u = mul(q, GradedPoly::odd(sig, 0)) + Rational(3) * GradedPoly::odd(sig, 1);
  const auto comps = section_components(u);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == q);
  CHECK(comps[1] == GradedPoly::constant(sig, 3));
  CHECK(is_section(u));
  CHECK_FALSE(is_function(u));
}
