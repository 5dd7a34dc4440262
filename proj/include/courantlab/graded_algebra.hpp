#pragma once

// Sparse graded-commutative polynomials in
//   q^i  (degree 0, even),  tau^a (degree 1, odd),  p_i (degree 2, even),
// with exact rational coefficients. This is the function algebra of the
// minimal symplectic realization in a coordinate chart.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "courantlab/errors.hpp"
#include "courantlab/linalg.hpp"
#include "courantlab/rational.hpp"

namespace clab {

inline constexpr int kMaxBaseDim = 6;
inline constexpr int kMaxOddGens = 32;

enum class OddLabel { none, A, ADual };

std::string_view label_name(OddLabel label);

struct OddGenerator {
  std::string name;
  OddLabel label = OddLabel::none;
  friend bool operator==(const OddGenerator&, const OddGenerator&) = default;
};

/// The coordinate model: number of (q,p) pairs, the odd generators, and the
/// symmetric nondegenerate matrix g. The bracket table is {tau^a, tau^b} = g^{ab}.
class Signature {
 public:
  Signature(int base_dim, std::vector<OddGenerator> odd, RationalMatrix pairing);

  int base_dim() const { return base_dim_; }
  int odd_count() const { return static_cast<int>(odd_.size()); }
  const std::vector<OddGenerator>& odd() const { return odd_; }

  const Rational& pairing(int a, int b) const { return g_(a, b); }
  const Rational& inverse_pairing(int a, int b) const { return g_inv_(a, b); }
  const RationalMatrix& pairing_matrix() const { return g_; }
  const RationalMatrix& inverse_pairing_matrix() const { return g_inv_; }

  struct BracketEntry {
    int a;
    int b;
    Rational value;
  };
  /// Nonzero entries of g^{ab}, both orders.
  const std::vector<BracketEntry>& odd_bracket_entries() const { return entries_; }

  bool labelled() const;
  std::vector<int> indices_with(OddLabel label) const;

  std::optional<int> find_odd(std::string_view name) const;
  std::string q_name(int i) const;
  std::string p_name(int i) const;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.base_dim_ == b.base_dim_ && a.odd_ == b.odd_ && a.g_ == b.g_;
  }

 private:
  int base_dim_;
  std::vector<OddGenerator> odd_;
  RationalMatrix g_;
  RationalMatrix g_inv_;
  std::vector<BracketEntry> entries_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

SignaturePtr make_signature(int base_dim, std::vector<OddGenerator> odd, RationalMatrix pairing);

/// q^alpha * tau^{S} * p^beta with S stored as a bit set; the odd factors are
/// understood in increasing index order.
struct Monomial {
  std::array<std::uint8_t, kMaxBaseDim> q{};
  std::uint32_t odd = 0;
  std::array<std::uint8_t, kMaxBaseDim> p{};

  int degree() const;
  int odd_count() const;
  bool has_p() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Lexicographic on (q exponents, odd index sequence, p exponents).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct NormalizedMonomial {
  Monomial monomial;
  int sign = 1;  // 0 when an odd generator repeats
};

/// Sorts an odd word into increasing order, tracking the permutation sign.
NormalizedMonomial normalize_monomial(std::span<const int> odd_word, std::span<const int> q_exp,
                                      std::span<const int> p_exp);

/// Sign of tau^{a} * tau^{b} -> tau^{a|b}; zero on overlap.
int merge_sign(std::uint32_t a, std::uint32_t b);

/// Product of two monomials with the Koszul sign from reordering odd factors.
std::pair<Monomial, int> multiply_monomials(const Monomial& a, const Monomial& b);

class GradedPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  explicit GradedPoly(SignaturePtr sig) : sig_(std::move(sig)) {}

  static GradedPoly constant(SignaturePtr sig, const Rational& c);
  static GradedPoly q(SignaturePtr sig, int i);
  static GradedPoly p(SignaturePtr sig, int i);
  static GradedPoly odd(SignaturePtr sig, int a);
  static GradedPoly from_term(SignaturePtr sig, const Monomial& m, const Rational& c);

  const SignaturePtr& signature() const { return sig_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Common degree of all terms; nullopt if the terms disagree or if the
  /// polynomial is zero (zero is homogeneous of every degree).
  std::optional<int> degree() const;
  bool is_homogeneous_of(int d) const;
  bool has_p() const;

  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& c);

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator-(GradedPoly a) { return a *= Rational(-1); }
  friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }
  friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);

  friend bool operator==(const GradedPoly& a, const GradedPoly& b);

  /// Canonical text, e.g. "1/2 t1 t2 - q1^2 t1 p1". Parsable by parse_expr.
  std::string to_string() const;

 private:
  SignaturePtr sig_;
  TermMap terms_;
};

/// Graded-commutative product: fg = (-1)^{|f||g|} gf on homogeneous inputs.
GradedPoly mul(const GradedPoly& f, const GradedPoly& g);

void require_same_signature(const GradedPoly& a, const GradedPoly& b);

std::string monomial_to_string(const Signature& sig, const Monomial& m);

}  // namespace clab
