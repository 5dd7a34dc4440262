#pragma once

// Vector bundle endomorphisms over the base polynomial ring, acting on
// sections u = sum_a f_a tau^a by N(tau^a) = sum_b N^b_a tau^b.

#include <optional>
#include <string>

#include "courantlab/graded_algebra.hpp"

namespace clab {

class Endomorphism {
 public:
  /// Zero endomorphism.
  explicit Endomorphism(SignaturePtr sig);

  static Endomorphism identity(SignaturePtr sig);
  static Endomorphism scalar(SignaturePtr sig, const Rational& c);
  static Endomorphism from_rational(SignaturePtr sig, const RationalMatrix& m);

  const SignaturePtr& signature() const { return sig_; }
  int size() const { return sig_->odd_count(); }

  /// N^b_a, the tau^b component of N(tau^a). Entries must be functions of q.
  GradedPoly& at(int b, int a) { return m_(static_cast<std::size_t>(b), static_cast<std::size_t>(a)); }
  const GradedPoly& at(int b, int a) const { return m_(static_cast<std::size_t>(b), static_cast<std::size_t>(a)); }

  bool is_zero() const;
  /// Throws DegreeMismatch if an entry involves odd or p variables.
  void validate() const;

  Endomorphism& operator+=(const Endomorphism& o);
  Endomorphism& operator-=(const Endomorphism& o);
  Endomorphism& operator*=(const Rational& c);
  friend Endomorphism operator+(Endomorphism a, const Endomorphism& b) { return a += b; }
  friend Endomorphism operator-(Endomorphism a, const Endomorphism& b) { return a -= b; }
  friend Endomorphism operator*(const Rational& c, Endomorphism a) { return a *= c; }
  friend bool operator==(const Endomorphism& a, const Endomorphism& b) { return a.m_ == b.m_; }

  /// Rows of the matrix (N^b_a)_{b,a} in canonical text.
  std::string to_string() const;

 private:
  SignaturePtr sig_;
  Matrix<GradedPoly> m_;
};

/// (N o M)(u) = N(M(u)).
Endomorphism compose(const Endomorphism& n, const Endomorphism& m);

Endomorphism apply_square(const Endomorphism& n);

GradedPoly apply(const Endomorphism& n, const GradedPoly& section);

/// Adjoint for the pairing: <N u, v> = <u, tN v>.
Endomorphism transpose(const Endomorphism& n);
bool is_skew(const Endomorphism& n);

/// The constant c with N = c Id, if it exists.
std::optional<Rational> scalar_value(const Endomorphism& n);

/// Degree 2 element N~ with {u, N~} = N(u) for every section u.
/// Throws NotSkew.
GradedPoly lift_endo(const Endomorphism& n);

/// Inverse of lift_endo: reads N off {tau^a, X}. Throws DegreeMismatch when
/// X is not a quadratic expression in the odd generators.
Endomorphism extract_endo(const GradedPoly& x);

}  // namespace clab
