#include "doctest.h"

#include "courantlab/bialgebroid.hpp"
#include "courantlab/models.hpp"
#include "courantlab/suites.hpp"

using namespace clab;

namespace {

SignaturePtr double_signature(int rank, int base = 0) {
  std::vector<OddGenerator> gens;
  for (int a = 0; a < rank; ++a) gens.push_back({"e" + std::to_string(a + 1), OddLabel::A});
  for (int a = 0; a < rank; ++a) gens.push_back({"x" + std::to_string(a + 1), OddLabel::ADual});
  const auto n = static_cast<std::size_t>(2 * rank);
  RationalMatrix g(n, n, Rational(0));
  for (std::size_t a = 0; a < static_cast<std::size_t>(rank); ++a)
    g(a, a + static_cast<std::size_t>(rank)) = g(a + static_cast<std::size_t>(rank), a) = 1;
  return make_signature(base, gens, g);
}

FunctionMatrix rational_block(const SignaturePtr& sig, std::initializer_list<std::initializer_list<Rational>> rows) {
  RationalMatrix m(rows.size(), rows.size(), Rational(0));
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return rational_functions(sig, m);
}

}  // namespace

TEST_CASE("frame requires a canonical pairing") {
  CHECK_NOTHROW(DoubleFrame(double_signature(2)));
  RationalMatrix g = identity_matrix(2);
  CHECK_THROWS_AS(make_signature(0, {{"e1", OddLabel::A}, {"x1", OddLabel::ADual}}, g), InvalidSignature);
}

TEST_CASE("the Lie algebroid element reproduces its structure") {
  const DoubleFrame frame(double_signature(2));
  auto data = zero_algebroid(frame);
  data.structure[1](0, 1) = GradedPoly::constant(frame.signature(), 1);
  data.structure[1](1, 0) = GradedPoly::constant(frame.signature(), -1);
  const auto mu = lie_algebroid_element(frame, data, Side::A);
  CHECK(mu == -mul(mul(frame.x(0), frame.x(1)), frame.e(1)));
  CHECK(derived_bracket(mu, frame.e(0), frame.e(1)) == frame.e(1));
  const auto back = read_algebroid(frame, mu, Side::A);
  CHECK(back.structure[1] == data.structure[1]);
  CHECK(is_zero(back.anchor));
}

namespace {

DoubleModel so3_on_a() {
  const DoubleFrame frame(double_signature(3));
  const auto& sig = frame.signature();
  auto data = zero_algebroid(frame);
  for (std::size_t a = 0; a < 3; ++a) {
    const std::size_t b = (a + 1) % 3, c = (a + 2) % 3;
    data.structure[c](a, b) = GradedPoly::constant(sig, 1);
    data.structure[c](b, a) = GradedPoly::constant(sig, -1);
  }
  return {frame, lie_algebroid_element(frame, data, Side::A), GradedPoly(sig)};
}

}  // namespace

TEST_CASE("assembling doubles") {
  SUBCASE("so(3) on A with zero cobracket") {
    const auto db = so3_on_a();
    CHECK(bialgebroid_conditions(db).valid());
    CHECK_NOTHROW(assemble_double(db));
    CHECK(check_double_restrictions(db).passed());
  }
  SUBCASE("zero structures") {
    const DoubleFrame frame(double_signature(2));
    const DoubleModel db{frame, GradedPoly(frame.signature()), GradedPoly(frame.signature())};
    const auto c = assemble_double(db);
    CHECK(dorfman(c, frame.e(0), frame.x(1)).is_zero());
  }
  SUBCASE("the generalized tangent bundle is the standard Courant algebroid") {
    const auto db = builtin_model("gt1").double_model();
    const auto c = assemble_double(db);
    const auto q = GradedPoly::q(db.frame.signature(), 0);
    CHECK(anchor_apply(c, db.frame.e(0), q) == GradedPoly::constant(db.frame.signature(), 1));
    CHECK(check_double_restrictions(db).passed());
  }
  SUBCASE("a cobracket that is not a cocycle is rejected") {
    // A rank-one cobracket on so(3) is never a coboundary, hence not a cocycle.
    auto db = so3_on_a();
    db.gamma = mul(mul(db.frame.e(0), db.frame.e(1)), db.frame.x(2));
    CHECK_FALSE(bialgebroid_conditions(db).valid());
    CHECK_THROWS_AS(assemble_double(db), BialgebroidConditionFails);
  }
  SUBCASE("coboundary doubles") {
    for (const auto& name : {"aff1cob", "sl2"}) {
      const auto db = builtin_model(name).double_model();
      CHECK(bialgebroid_conditions(db).valid());
      CHECK(check_double_restrictions(db).passed());
    }
  }
}

TEST_CASE("block endomorphisms") {
  const DoubleFrame frame(double_signature(2));
  const auto& sig = frame.signature();
  const auto zero = zero_functions(sig, 2, 2);
  const auto j = rational_block(sig, {{0, 1}, {-1, 0}});

  SUBCASE("pi = omega = 0") {
    const auto r = block_cps(frame, {rational_block(sig, {{1, 0}, {0, -1}}), zero, zero});
    CHECK(r.cps());
    CHECK(r.lambda == Rational(1));
    CHECK(r.consistent());
  }
  SUBCASE("generalized almost complex") {
    const auto r = block_cps(frame, {zero, j, j});
    CHECK(r.cps());
    CHECK(r.lambda == Rational(-1));
    CHECK(r.assembled_skew);
    CHECK(r.consistent());
  }
  SUBCASE("almost subtangent") {
    const auto r = block_cps(frame, {zero, j, zero});
    CHECK(r.cps());
    CHECK(r.lambda == Rational(0));
  }
  SUBCASE("symmetric pi is not a bivector") {
    const auto r = block_cps(frame, {zero, rational_block(sig, {{1, 0}, {0, 0}}), zero});
    CHECK_FALSE(r.cps());
    CHECK_FALSE(r.assembled_skew);
    CHECK(r.consistent());
  }
  SUBCASE("diag(N, -tN) lifts to the same element as the block") {
    const auto n = rational_block(sig, {{1, 2}, {0, 3}});
    CHECK(lift_endo(double_endo(frame, n)) == block_lift(frame, block_from_n(frame, n)));
    const BlockEndomorphism b{n, j, j};
    CHECK(lift_endo(assemble_block(frame, b)) == block_lift(frame, b));
    CHECK(block_lift(frame, b) == lift_endo(double_endo(frame, n)) + bivector_lift(frame, j) + form_lift(frame, j));
  }
}

TEST_CASE("lifting 3-tensors") {
  const DoubleFrame frame(double_signature(2));
  const auto& sig = frame.signature();
  AlgebroidTensor zero{Side::A, {zero_functions(sig, 2, 2), zero_functions(sig, 2, 2)}};
  CHECK(lift_tensor(frame, zero).is_zero());

  // t(e1, e2) = e1
  AlgebroidTensor t{Side::A, {rational_block(sig, {{0, 1}, {-1, 0}}), zero_functions(sig, 2, 2)}};
  const auto lifted = lift_tensor(frame, t);
  CHECK(lifted.size() == 1);
  CHECK(poisson_bracket(poisson_bracket(poisson_bracket(frame.e(0), lifted), frame.e(1)), frame.x(0)) ==
        GradedPoly::constant(sig, 1));
  CHECK(check_tensor_lift(frame, t).passed());
  const auto back = read_tensor(frame, lifted, Side::A);
  CHECK(back.components[0] == t.components[0]);
  CHECK(back.components[1] == t.components[1]);

  AlgebroidTensor dual{Side::ADual, t.components};
  CHECK(check_tensor_lift(frame, dual).passed());
  CHECK(read_tensor(frame, lift_tensor(frame, dual), Side::ADual).components[0] == t.components[0]);

  AlgebroidTensor bad{Side::A, {rational_block(sig, {{1, 0}, {0, 0}}), zero_functions(sig, 2, 2)}};
  CHECK_THROWS_AS(lift_tensor(frame, bad), AlgebraError);
}

TEST_CASE("torsion sum") {
  SUBCASE("aff(1), N = diag(1, -1)") {
    const auto model = builtin_model("aff1");
    const auto db = model.double_model();
    const auto r = torsion_sum_check(db, *model.endomorphism("F").block, 0);
    CHECK(r.passed());
    CHECK(r.degree3);
    CHECK(r.tensorial);
    REQUIRE(r.lambda);
    CHECK(*r.lambda == 1);
    REQUIRE(r.sum_identity);
    CHECK(r.sum_identity->passed());
  }
  SUBCASE("identity has no torsion") {
    const auto db = builtin_model("sl2").double_model();
    const auto id = identity_functions(db.frame.signature(), 3);
    const auto r = torsion_sum_check(db, id, 0);
    CHECK(r.passed());
    CHECK(tensor_is_zero(side_torsion(db.frame, db.mu, id, Side::A)));
    CHECK(tensor_is_zero(side_torsion(db.frame, db.gamma, id, Side::ADual)));
  }
  SUBCASE("zero cobracket: the torsion of the double is the lifted torsion of N") {
    const auto model = builtin_model("aff1");
    const auto db = model.double_model();
    for (const auto& inst : cps_instances(db.frame, 3, 10)) {
      if (!is_zero(inst.block.pi) || !is_zero(inst.block.omega)) continue;
      const auto n = inst.block.n;
      const auto closed = torsion_tensor(db.theta(), lift_endo(double_endo(db.frame, n)), inst.lambda);
      CHECK(closed == lift_tensor(db.frame, side_torsion(db.frame, db.mu, n, Side::A)));
    }
  }
  SUBCASE("non-scalar N^2 on the line: degree 3 but not tensorial") {
    const auto model = builtin_model("gt1");
    const auto r = torsion_sum_check(model.double_model(), *model.endomorphism("Q").block, 1);
    CHECK(r.degree3);
    CHECK_FALSE(r.lambda);
    CHECK(r.components.passed());
    CHECK(r.restriction.passed());
    CHECK(r.double_of_brackets.passed());
  }
}

TEST_CASE("deformations of bialgebroids") {
  SUBCASE("N = Id reproduces the bracket") {
    const auto db = builtin_model("aff1").double_model();
    const auto id = identity_functions(db.frame.signature(), 2);
    const auto d = deform_bialgebroid(db, id);
    CHECK(d.equals_deformed_double == true);
    CHECK(derived_bracket(d.mu_n, db.frame.e(0), db.frame.e(1)) == derived_bracket(db.mu, db.frame.e(0), db.frame.e(1)));
    CHECK(d.lie_bialgebroid());
  }
  SUBCASE("zero cobracket and Nijenhuis N give a trivial bialgebroid") {
    const auto model = builtin_model("aff1");
    const auto db = model.double_model();
    const auto d = deform_bialgebroid(db, *model.endomorphism("F").block);
    CHECK(d.torsions_vanish);
    CHECK(d.lie_bialgebroid());
    CHECK(d.gamma_n.is_zero());
    CHECK(poisson_bracket(d.mu_n, d.mu_n).is_zero());
  }
  SUBCASE("N' = Id on A*") {
    const auto model = builtin_model("aff1cob");
    const auto db = model.double_model();
    const auto d = deform_bialgebroid(db, *model.endomorphism("F").block, identity_functions(db.frame.signature(), 2));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        CHECK(derived_bracket(d.gamma_n, db.frame.x(a), db.frame.x(b)) ==
              derived_bracket(db.gamma, db.frame.x(a), db.frame.x(b)));
  }
}

TEST_CASE("Poisson-Nijenhuis and Omega-N structures on the plane") {
  const auto model = builtin_model("tr2");
  const auto db = model.double_model();
  const auto& sig = db.frame.signature();
  const auto zero = zero_functions(sig, 2, 2);
  const auto pi = model.tensor("pi").matrix;

  SUBCASE("pi = 0 reduces to the Nijenhuis condition") {
    const auto r = pn_check(db, zero, *model.endomorphism("PW").block);
    CHECK(r.pn() == tensor_is_zero(r.torsion));
  }
  SUBCASE("constant pi with N = 0") {
    const auto r = pn_check(db, pi, zero);
    CHECK(r.pn());
    CHECK(r.decomposition.passed());
    REQUIRE(r.weak_deforming_defect);
    CHECK(r.weak_deforming_defect->is_zero());
  }
  SUBCASE("N = pi omega0 for constant omega0") {
    const auto omega0 = rational_block(sig, {{0, 2}, {-2, 0}});
    const auto n = multiply(pi, omega0);
    const auto r = pn_check(db, pi, n);
    CHECK(r.decomposition.passed());
    CHECK(r.decomposition.checks() > 0);
    CHECK(r.commutes);
  }
  SUBCASE("function multiples of the identity") {
    const auto q1 = GradedPoly::q(sig, 0);
    auto n = zero;
    n(0, 0) = n(1, 1) = q1;
    const auto r = pn_check(db, pi, n);
    CHECK(r.commutes);
    CHECK(r.decomposition.passed());
    // On the plane the concomitant of pi and f Id vanishes (checked by hand for f = q1).
    CHECK(r.concomitant.is_zero());
    CHECK(r.concomitant == concomitant(db, pi, n));
    CHECK(schouten(db, pi).is_zero());
  }
  SUBCASE("omega-N with constant omega") {
    const auto omega = model.tensor("omega").matrix;
    const auto r = omega_n_check(db, omega, *model.endomorphism("PW").block);
    CHECK(r.omega_n());
    CHECK(r.omega_square.is_zero());
    REQUIRE(r.weak_deforming_defect);
    CHECK(r.weak_deforming_defect->is_zero());
  }
}

TEST_CASE("trivial doubles deformed by base Nijenhuis tensors") {
  SUBCASE("identity") {
    const auto db = builtin_model("aff1").double_model();
    const auto r = trivial_double_deform(db, identity_functions(db.frame.signature(), 2));
    CHECK(r.passed());
  }
  SUBCASE("aff(1), N = diag(0, 1)") {
    const auto model = builtin_model("aff1");
    const auto db = model.double_model();
    const auto n = *model.endomorphism("D").block;
    const bool torsion_zero = tensor_is_zero(side_torsion(db.frame, db.mu, n, Side::A));
    if (torsion_zero)
      CHECK(trivial_double_deform(db, n).passed());
    else
      CHECK_THROWS_AS(trivial_double_deform(db, n), TorsionNonzero);
  }
  SUBCASE("q Id on the line") {
    const auto model = builtin_model("gt1");
    const auto db = model.double_model();
    const auto n = *model.endomorphism("Q").block;
    const auto r = trivial_double_deform(db, n);
    CHECK(tensor_is_zero(r.torsion));
    CHECK(r.square_identity_defect.is_zero());
    CHECK(r.cocycle_defect.is_zero());
    CHECK(r.master_defect.is_zero());
    CHECK(r.double_defect.is_zero());
    CHECK_FALSE(r.block_torsion);
  }
  SUBCASE("requires zero cobracket") {
    const auto model = builtin_model("aff1cob");
    CHECK_THROWS_AS(trivial_double_deform(model.double_model(), *model.endomorphism("F").block), AlgebraError);
  }
}
