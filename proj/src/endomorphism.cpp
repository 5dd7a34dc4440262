#include "courantlab/endomorphism.hpp"

#include <bit>

#include "courantlab/poisson.hpp"

namespace clab {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

bool is_base_function(const GradedPoly& f) {
  for (const auto& [m, c] : f.terms())
    if (m.odd != 0 || m.has_p()) return false;
  return true;
}

}  // namespace

Endomorphism::Endomorphism(SignaturePtr sig)
    : sig_(std::move(sig)), m_(idx(sig_->odd_count()), idx(sig_->odd_count()), GradedPoly(sig_)) {}

Endomorphism Endomorphism::identity(SignaturePtr sig) { return scalar(std::move(sig), Rational(1)); }

Endomorphism Endomorphism::scalar(SignaturePtr sig, const Rational& c) {
  Endomorphism out(std::move(sig));
  for (int a = 0; a < out.size(); ++a) out.at(a, a) = GradedPoly::constant(out.sig_, c);
  return out;
}

Endomorphism Endomorphism::from_rational(SignaturePtr sig, const RationalMatrix& m) {
  Endomorphism out(std::move(sig));
  if (m.rows() != idx(out.size()) || m.cols() != idx(out.size()))
    throw DegreeMismatch("endomorphism matrix has the wrong shape");
  for (int b = 0; b < out.size(); ++b)
    for (int a = 0; a < out.size(); ++a) out.at(b, a) = GradedPoly::constant(out.sig_, m(idx(b), idx(a)));
  return out;
}

bool Endomorphism::is_zero() const {
  for (int b = 0; b < size(); ++b)
    for (int a = 0; a < size(); ++a)
      if (!at(b, a).is_zero()) return false;
  return true;
}

void Endomorphism::validate() const {
  for (int b = 0; b < size(); ++b)
    for (int a = 0; a < size(); ++a)
      if (!is_base_function(at(b, a)))
        throw DegreeMismatch("endomorphism entries must be polynomials in q", at(b, a).to_string());
}

Endomorphism& Endomorphism::operator+=(const Endomorphism& o) {
  for (int b = 0; b < size(); ++b)
    for (int a = 0; a < size(); ++a) at(b, a) += o.at(b, a);
  return *this;
}

Endomorphism& Endomorphism::operator-=(const Endomorphism& o) {
  for (int b = 0; b < size(); ++b)
    for (int a = 0; a < size(); ++a) at(b, a) -= o.at(b, a);
  return *this;
}

Endomorphism& Endomorphism::operator*=(const Rational& c) {
  for (int b = 0; b < size(); ++b)
    for (int a = 0; a < size(); ++a) at(b, a) *= c;
  return *this;
}

std::string Endomorphism::to_string() const {
  std::string out;
  for (int b = 0; b < size(); ++b) {
    if (b) out += "; ";
    for (int a = 0; a < size(); ++a) {
      if (a) out += ", ";
      out += at(b, a).to_string();
    }
  }
  return "[" + out + "]";
}

Endomorphism compose(const Endomorphism& n, const Endomorphism& m) {
  Endomorphism out(n.signature());
  for (int c = 0; c < n.size(); ++c)
    for (int b = 0; b < n.size(); ++b) {
      if (n.at(c, b).is_zero()) continue;
      for (int a = 0; a < n.size(); ++a)
        if (!m.at(b, a).is_zero()) out.at(c, a) += mul(n.at(c, b), m.at(b, a));
    }
  return out;
}

Endomorphism apply_square(const Endomorphism& n) { return compose(n, n); }

GradedPoly apply(const Endomorphism& n, const GradedPoly& section) {
  const auto& sig = n.signature();
  GradedPoly out(sig);
  for (const auto& [m, c] : section.terms()) {
    if (std::popcount(m.odd) != 1 || m.has_p())
      throw DegreeMismatch("endomorphisms act on sections only", section.to_string());
    const int a = std::countr_zero(m.odd);
    Monomial base = m;
    base.odd = 0;
    const auto coeff = GradedPoly::from_term(sig, base, c);
    for (int b = 0; b < n.size(); ++b)
      if (!n.at(b, a).is_zero()) out += mul(mul(coeff, n.at(b, a)), GradedPoly::odd(sig, b));
  }
  return out;
}

Endomorphism transpose(const Endomorphism& n) {
  // With G the bracket matrix, <N e_a, e_c> = (M^T G)_{ac}, so tN = G^{-1} M^T G.
  const auto& sig = n.signature();
  const auto& g = sig->pairing_matrix();
  const auto& gi = sig->inverse_pairing_matrix();
  const int k = n.size();
  Endomorphism mt_g(sig);  // (M^T G)_{ac} = sum_b M[b][a] G[b][c]
  for (int a = 0; a < k; ++a)
    for (int c = 0; c < k; ++c)
      for (int b = 0; b < k; ++b)
        if (g(idx(b), idx(c)) != 0 && !n.at(b, a).is_zero()) mt_g.at(a, c) += g(idx(b), idx(c)) * n.at(b, a);
  Endomorphism out(sig);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      for (int a = 0; a < k; ++a)
        if (gi(idx(r), idx(a)) != 0 && !mt_g.at(a, c).is_zero()) out.at(r, c) += gi(idx(r), idx(a)) * mt_g.at(a, c);
  return out;
}

bool is_skew(const Endomorphism& n) { return (n + transpose(n)).is_zero(); }

std::optional<Rational> scalar_value(const Endomorphism& n) {
  const int k = n.size();
  if (k == 0) return Rational(0);
  const Monomial one{};
  for (int b = 0; b < k; ++b)
    for (int a = 0; a < k; ++a) {
      const auto& e = n.at(b, a);
      if (a != b && !e.is_zero()) return std::nullopt;
      if (e.size() > 1 || (e.size() == 1 && !(e.terms().begin()->first == one))) return std::nullopt;
    }
  const Rational c = n.at(0, 0).coefficient(one);
  for (int a = 1; a < k; ++a)
    if (n.at(a, a).coefficient(one) != c) return std::nullopt;
  return c;
}

GradedPoly lift_endo(const Endomorphism& n) {
  n.validate();
  if (!is_skew(n)) throw NotSkew();
  // N~ = 1/2 sum_{a,c} A_{ac} tau^a tau^c with A = G^{-1} M^T, so that
  // {tau^d, N~} = sum_c (G A)_{dc} tau^c = sum_c M[c][d] tau^c.
  const auto& sig = n.signature();
  const auto& gi = sig->inverse_pairing_matrix();
  const int k = n.size();
  GradedPoly out(sig);
  for (int a = 0; a < k; ++a)
    for (int c = a + 1; c < k; ++c) {
      GradedPoly coeff(sig);
      for (int b = 0; b < k; ++b)
        if (gi(idx(a), idx(b)) != 0) coeff += gi(idx(a), idx(b)) * n.at(c, b);
      // A is antisymmetric, so the (a,c) and (c,a) halves add up.
      out += mul(coeff, mul(GradedPoly::odd(sig, a), GradedPoly::odd(sig, c)));
    }
  return out;
}

Endomorphism extract_endo(const GradedPoly& x) {
  for (const auto& [m, c] : x.terms())
    if (std::popcount(m.odd) != 2 || m.has_p())
      throw DegreeMismatch("expected a quadratic expression in the odd generators", x.to_string());
  const auto& sig = x.signature();
  Endomorphism out(sig);
  for (int d = 0; d < out.size(); ++d) {
    const auto image = poisson_bracket(GradedPoly::odd(sig, d), x);
    for (const auto& [m, c] : image.terms()) {
      Monomial base = m;
      base.odd = 0;
      out.at(std::countr_zero(m.odd), d).add_term(base, c);
    }
  }
  return out;
}

}  // namespace clab
