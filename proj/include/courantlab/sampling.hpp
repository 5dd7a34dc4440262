#pragma once

// Seeded random generation of polynomials, sections and endomorphisms for the
// property sweeps. Only integer operations on the engine output are used, so a
// seed reproduces the same samples on every platform.

#include <cstdint>
#include <random>

#include "courantlab/endomorphism.hpp"
#include "courantlab/graded_algebra.hpp"

namespace clab {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n).
  int uniform(int n);
  /// One of {-2, -1, 0, 1, 2, 1/2}.
  Rational coefficient();
  Rational nonzero_coefficient();

  /// Random monomial of the given degree with total q-degree at most max_q_degree;
  /// nullopt when the signature has no monomial of that degree.
  std::optional<Monomial> monomial(const Signature& sig, int degree, int max_q_degree);

  /// Homogeneous polynomial with up to max_terms terms (possibly zero).
  GradedPoly homogeneous(const SignaturePtr& sig, int degree, int max_terms, int max_q_degree);

  /// Polynomial in q only.
  GradedPoly function(const SignaturePtr& sig, int max_q_degree, int max_terms = 3);

  /// Section sum_a f_a tau^a with random polynomial coefficients.
  GradedPoly section(const SignaturePtr& sig, int max_q_degree);

  /// Entries are random polynomials in q of degree <= max_q_degree.
  Endomorphism endomorphism(const SignaturePtr& sig, int max_q_degree);
  /// 1/2 (M - tM) for a random M.
  Endomorphism skew_endomorphism(const SignaturePtr& sig, int max_q_degree);

 private:
  std::mt19937_64 engine_;
};

}  // namespace clab
