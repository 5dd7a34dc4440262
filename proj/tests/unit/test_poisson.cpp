#include "doctest.h"

#include "courantlab/poisson.hpp"
#include "courantlab/sampling.hpp"
#include "helpers.hpp"

using namespace clab;

namespace {

Rational koszul(int a, int b) { return (a * b) % 2 == 0 ? Rational(1) : Rational(-1); }

}  // namespace

TEST_CASE("bracket table on generators") {
  RationalMatrix g(2, 2, Rational(0));
  g(0, 0) = 2;
  g(0, 1) = g(1, 0) = Rational(1, 3);
  auto sig = make_signature(1, test::names(2), g);
  auto t1 = GradedPoly::odd(sig, 0), t2 = GradedPoly::odd(sig, 1);
  auto q1 = GradedPoly::q(sig, 0), p1 = GradedPoly::p(sig, 0);

  CHECK(poisson_bracket(t1, t2) == GradedPoly::constant(sig, Rational(1, 3)));
  CHECK(poisson_bracket(t1, t1) == GradedPoly::constant(sig, 2));
  CHECK(poisson_bracket(t2, t2).is_zero());
  CHECK(poisson_bracket(q1, p1) == GradedPoly::constant(sig, 1));
  CHECK(poisson_bracket(p1, q1) == GradedPoly::constant(sig, -1));
  CHECK(poisson_bracket(q1, t1).is_zero());
  CHECK(poisson_bracket(p1, t1).is_zero());
  CHECK(poisson_bracket(q1, q1).is_zero());
}

TEST_CASE("pairing of degree one elements") {
  auto sig = test::euclidean(2);
  auto t1 = GradedPoly::odd(sig, 0);
  CHECK(poisson_bracket(t1, t1) == GradedPoly::constant(sig, 1));
}

TEST_CASE("master equation on small models") {
  auto sig = test::euclidean(3);
  auto t = [&](int a) { return GradedPoly::odd(sig, a); };
  auto theta = mul(mul(t(0), t(1)), t(2));
  CHECK(is_master(GradedPoly(sig)));
  CHECK(is_master(theta));
  CHECK_THROWS_AS(is_master(t(0)), NotDegree3);

  CourantStructure so3(theta);
  CHECK(d_operator(so3, theta).is_zero());
  CHECK(d_operator(so3, t(0)).to_string() == "t2 t3");

  auto sig6 = test::euclidean(6);
  auto s = [&](int a) { return GradedPoly::odd(sig6, a); };
  auto broken = mul(mul(s(0), s(1)), s(2)) + mul(mul(s(0), s(4)), s(5));
  CHECK_FALSE(is_master(broken));
  CHECK(poisson_bracket(broken, broken).to_string() == "2 t2 t3 t5 t6");
  CHECK_THROWS_AS(CourantStructure{broken}, MasterEquationFails);
}

TEST_CASE("derivatives") {
  auto sig = test::euclidean(3, 1);
  auto t = [&](int a) { return GradedPoly::odd(sig, a); };
  auto f = mul(mul(t(0), t(1)), t(2));
  CHECK(right_d_dodd(f, 0) == mul(t(1), t(2)));
  CHECK(right_d_dodd(f, 1) == -mul(t(0), t(2)));
  CHECK(left_d_dodd(f, 1) == -mul(t(0), t(2)));
  CHECK(left_d_dodd(f, 2) == mul(t(0), t(1)));
  auto q1 = GradedPoly::q(sig, 0);
  CHECK(d_dq(mul(mul(q1, q1), t(0)), 0) == Rational(2) * mul(q1, t(0)));
}

TEST_CASE("graded symmetry, Leibniz and Jacobi on random homogeneous triples") {
  Sampler rng(2024);
  int triples = 0;
  for (int odd = 1; odd <= 6; ++odd) {
    for (int base = 0; base <= 2; ++base) {
      // A non-diagonal pairing exercises off-diagonal g^{ab}.
      RationalMatrix g = identity_matrix(static_cast<std::size_t>(odd));
      if (odd >= 2) {
        g(0, 0) = 0;
        g(1, 1) = 0;
        g(0, 1) = g(1, 0) = 1;
      }
      auto sig = make_signature(base, test::names(odd), g);
      for (int trial = 0; trial < 14; ++trial) {
        const int df = rng.uniform(5), dg = rng.uniform(5), dh = rng.uniform(5);
        auto f = rng.homogeneous(sig, df, 4, 2);
        auto gg = rng.homogeneous(sig, dg, 4, 2);
        auto h = rng.homogeneous(sig, dh, 4, 2);

        auto fg = poisson_bracket(f, gg);
        CHECK(fg.is_homogeneous_of(df + dg - 2));
        CHECK((fg + koszul(df, dg) * poisson_bracket(gg, f)).is_zero());

        auto lhs = poisson_bracket(f, mul(gg, h));
        auto rhs = mul(fg, h) + koszul(df, dg) * mul(gg, poisson_bracket(f, h));
        CHECK(lhs == rhs);

        auto jl = poisson_bracket(f, poisson_bracket(gg, h));
        auto jr = poisson_bracket(fg, h) + koszul(df, dg) * poisson_bracket(gg, poisson_bracket(f, h));
        CHECK(jl == jr);

        CHECK(poisson_bracket_parallel(f, gg) == poisson_bracket_serial(f, gg));
        ++triples;
      }
    }
  }
  CHECK(triples >= 200);
}
