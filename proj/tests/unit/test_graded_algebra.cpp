#include "doctest.h"

#include "courantlab/graded_algebra.hpp"
#include "courantlab/sampling.hpp"
#include "helpers.hpp"

using namespace clab;

TEST_CASE("normalize_monomial sorts odd words with the permutation sign") {
  const std::vector<int> none;
  auto swap = normalize_monomial(std::vector<int>{1, 0}, none, none);
  CHECK(swap.sign == -1);
  CHECK(swap.monomial.odd == 0b11u);

  auto square = normalize_monomial(std::vector<int>{0, 0}, none, none);
  CHECK(square.sign == 0);

  auto cyclic = normalize_monomial(std::vector<int>{2, 0, 1}, none, none);
  CHECK(cyclic.sign == 1);
  CHECK(cyclic.monomial.odd == 0b111u);

  // Idempotent on a normal form.
  auto again = normalize_monomial(std::vector<int>{0, 1, 2}, none, none);
  CHECK(again.sign == 1);
  CHECK(again.monomial == cyclic.monomial);
}

TEST_CASE("monomial order is lexicographic on the odd index sequence") {
  MonomialOrder less;
  Monomial a, b;
  a.odd = 0b011;  // t1 t2
  b.odd = 0b101;  // t1 t3
  CHECK(less(a, b));
  CHECK_FALSE(less(b, a));
  a.odd = 0b001;  // t1 is a prefix of t1 t2
  b.odd = 0b011;
  CHECK(less(a, b));
  a.odd = 0b100;  // t3 > t1 t2
  CHECK(less(b, a));
  Monomial q;
  q.q[0] = 1;
  CHECK(less(b, q));
}

TEST_CASE("products of generators") {
  auto sig = test::euclidean(2, 1);
  auto t1 = GradedPoly::odd(sig, 0), t2 = GradedPoly::odd(sig, 1);
  auto q1 = GradedPoly::q(sig, 0), p1 = GradedPoly::p(sig, 0);

  CHECK(mul(t1, t2).to_string() == "t1 t2");
  CHECK(mul(t2, t1).to_string() == "-t1 t2");
  CHECK(mul(t1, t1).is_zero());
  CHECK(mul(q1, p1) == mul(p1, q1));
  CHECK(mul(q1, p1).to_string() == "q1 p1");
  CHECK(mul(t1 + t2, t1 - t2).to_string() == "-2 t1 t2");
}

TEST_CASE("degree of homogeneous and mixed polynomials") {
  auto sig = test::euclidean(3, 1);
  auto t = [&](int a) { return GradedPoly::odd(sig, a); };
  CHECK(mul(mul(t(0), t(1)), t(2)).degree() == 3);
  CHECK(mul(GradedPoly::p(sig, 0), t(0)).degree() == 3);
  CHECK_FALSE((t(0) + GradedPoly::p(sig, 0)).degree().has_value());
  CHECK(GradedPoly(sig).is_homogeneous_of(3));
}

TEST_CASE("printing orders factors q, odd, p and handles signs") {
  auto sig = test::euclidean(2, 1);
  auto t1 = GradedPoly::odd(sig, 0), t2 = GradedPoly::odd(sig, 1);
  auto q1 = GradedPoly::q(sig, 0), p1 = GradedPoly::p(sig, 0);
  GradedPoly f = Rational(1, 2) * mul(t1, t2) - mul(mul(mul(q1, q1), t1), p1);
  CHECK(f.to_string() == "1/2 t1 t2 - q1^2 t1 p1");
  CHECK(GradedPoly(sig).to_string() == "0");
  CHECK((Rational(-3) * GradedPoly::constant(sig, 1)).to_string() == "-3");
}

TEST_CASE("signature validation") {
  CHECK_THROWS_AS(make_signature(0, test::names(2), RationalMatrix(2, 2, Rational(0))), InvalidSignature);
  RationalMatrix skew(2, 2, Rational(0));
  skew(0, 1) = 1;
  skew(1, 0) = -1;
  CHECK_THROWS_AS(make_signature(0, test::names(2), skew), InvalidSignature);
  CHECK_THROWS_AS(make_signature(0, {{"q1", OddLabel::none}}, identity_matrix(1)), InvalidSignature);
  CHECK_THROWS_AS(make_signature(0, {{"a", OddLabel::none}, {"a", OddLabel::none}}, identity_matrix(2)),
                  InvalidSignature);

  RationalMatrix hyp(2, 2, Rational(0));
  hyp(0, 1) = hyp(1, 0) = 1;
  auto sig = make_signature(1, {{"th", OddLabel::A}, {"ta", OddLabel::ADual}}, hyp);
  CHECK(sig->labelled());
  CHECK(sig->inverse_pairing(0, 1) == 1);
  CHECK_THROWS_AS(make_signature(0, {{"x", OddLabel::A}, {"y", OddLabel::A}}, hyp), InvalidSignature);
  CHECK_THROWS_AS(make_signature(0, {{"x", OddLabel::A}, {"y", OddLabel::ADual}}, identity_matrix(2)),
                  InvalidSignature);
}

TEST_CASE("mixing signatures is rejected") {
  auto a = test::euclidean(2);
  auto b = test::euclidean(3);
  CHECK_THROWS_AS(mul(GradedPoly::odd(a, 0), GradedPoly::odd(b, 0)), SignatureMismatch);
}

TEST_CASE("graded commutativity and associativity on random polynomials") {
  Sampler rng(11);
  int checked = 0;
  for (int odd = 1; odd <= 6; ++odd) {
    for (int base = 0; base <= 2; ++base) {
      auto sig = test::euclidean(odd, base);
      for (int trial = 0; trial < 12; ++trial) {
        const int df = rng.uniform(5), dg = rng.uniform(5), dh = rng.uniform(5);
        auto f = rng.homogeneous(sig, df, 5, 2);
        auto g = rng.homogeneous(sig, dg, 5, 2);
        auto h = rng.homogeneous(sig, dh, 5, 2);
        const Rational sign = (df * dg) % 2 == 0 ? Rational(1) : Rational(-1);
        CHECK(mul(f, g) == sign * mul(g, f));
        CHECK(mul(mul(f, g), h) == mul(f, mul(g, h)));
        ++checked;
      }
    }
  }
  CHECK(checked == 216);
}
