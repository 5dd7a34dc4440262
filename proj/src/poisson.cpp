#include "courantlab/poisson.hpp"

#include <bit>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace clab {

namespace {

constexpr std::size_t kParallelThreshold = 256;

int sign_of_parity(int n) { return (n % 2 == 0) ? 1 : -1; }

void accumulate(GradedPoly& out, const Monomial& a, const Monomial& b, const Rational& c) {
  auto [m, sign] = multiply_monomials(a, b);
  if (sign == 0) return;
  out.add_term(m, sign > 0 ? c : Rational(-c));
}

// {c_f m_f, c_g m_g} added into out.
void bracket_terms(const Signature& sig, const Monomial& mf, const Rational& cf, const Monomial& mg,
                   const Rational& cg, GradedPoly& out) {
  const Rational cc = cf * cg;
  for (int i = 0; i < sig.base_dim(); ++i) {
    if (mf.q[i] && mg.p[i]) {
      Monomial a = mf, b = mg;
      --a.q[i];
      --b.p[i];
      accumulate(out, a, b, cc * mf.q[i] * mg.p[i]);
    }
    if (mf.p[i] && mg.q[i]) {
      Monomial a = mf, b = mg;
      --a.p[i];
      --b.q[i];
      accumulate(out, a, b, -(cc * mf.p[i] * mg.q[i]));
    }
  }
  if (!mf.odd || !mg.odd) return;
  for (const auto& e : sig.odd_bracket_entries()) {
    const std::uint32_t bit_a = std::uint32_t{1} << e.a;
    const std::uint32_t bit_b = std::uint32_t{1} << e.b;
    if (!(mf.odd & bit_a) || !(mg.odd & bit_b)) continue;
    Monomial a = mf, b = mg;
    a.odd &= ~bit_a;
    b.odd &= ~bit_b;
    // Right derivative moves tau^a past the larger indices, left derivative past the smaller ones.
    const int right = std::popcount(a.odd & ~((bit_a << 1) - 1));
    const int left = std::popcount(b.odd & (bit_b - 1));
    const Rational c = cc * e.value;
    accumulate(out, a, b, sign_of_parity(right + left) > 0 ? c : Rational(-c));
  }
}

}  // namespace

GradedPoly poisson_bracket_serial(const GradedPoly& f, const GradedPoly& g) {
  require_same_signature(f, g);
  const Signature& sig = *f.signature();
  GradedPoly out(f.signature());
  for (const auto& [mf, cf] : f.terms())
    for (const auto& [mg, cg] : g.terms()) bracket_terms(sig, mf, cf, mg, cg, out);
  return out;
}

GradedPoly poisson_bracket_parallel(const GradedPoly& f, const GradedPoly& g) {
  require_same_signature(f, g);
  const Signature& sig = *f.signature();
  std::vector<std::pair<Monomial, Rational>> left(f.terms().begin(), f.terms().end());
  std::vector<GradedPoly> partial(left.size(), GradedPoly(f.signature()));
  const auto n = static_cast<long>(left.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    const auto& [mf, cf] = left[static_cast<std::size_t>(i)];
    for (const auto& [mg, cg] : g.terms()) bracket_terms(sig, mf, cf, mg, cg, partial[static_cast<std::size_t>(i)]);
  }
  GradedPoly out(f.signature());
  for (const auto& piece : partial) out += piece;
  return out;
}

GradedPoly poisson_bracket(const GradedPoly& f, const GradedPoly& g) {
#ifdef _OPENMP
  if (omp_get_max_threads() > 1 && f.size() * g.size() >= kParallelThreshold && f.size() > 1)
    return poisson_bracket_parallel(f, g);
#endif
  return poisson_bracket_serial(f, g);
}

GradedPoly d_dq(const GradedPoly& f, int i) {
  GradedPoly out(f.signature());
  for (const auto& [m, c] : f.terms()) {
    if (!m.q[i]) continue;
    Monomial d = m;
    --d.q[i];
    out.add_term(d, c * m.q[i]);
  }
  return out;
}

GradedPoly d_dp(const GradedPoly& f, int i) {
  GradedPoly out(f.signature());
  for (const auto& [m, c] : f.terms()) {
    if (!m.p[i]) continue;
    Monomial d = m;
    --d.p[i];
    out.add_term(d, c * m.p[i]);
  }
  return out;
}

GradedPoly right_d_dodd(const GradedPoly& f, int a) {
  const std::uint32_t bit = std::uint32_t{1} << a;
  GradedPoly out(f.signature());
  for (const auto& [m, c] : f.terms()) {
    if (!(m.odd & bit)) continue;
    Monomial d = m;
    d.odd &= ~bit;
    const int n = std::popcount(d.odd & ~((bit << 1) - 1));
    out.add_term(d, sign_of_parity(n) > 0 ? c : Rational(-c));
  }
  return out;
}

GradedPoly left_d_dodd(const GradedPoly& f, int a) {
  const std::uint32_t bit = std::uint32_t{1} << a;
  GradedPoly out(f.signature());
  for (const auto& [m, c] : f.terms()) {
    if (!(m.odd & bit)) continue;
    Monomial d = m;
    d.odd &= ~bit;
    const int n = std::popcount(d.odd & (bit - 1));
    out.add_term(d, sign_of_parity(n) > 0 ? c : Rational(-c));
  }
  return out;
}

bool is_master(const GradedPoly& theta) {
  if (!theta.is_homogeneous_of(3)) throw NotDegree3(theta.to_string());
  return poisson_bracket(theta, theta).is_zero();
}

CourantStructure::CourantStructure(GradedPoly theta) : theta_(std::move(theta)) {
  if (!theta_.is_homogeneous_of(3)) throw NotDegree3(theta_.to_string());
  GradedPoly square = poisson_bracket(theta_, theta_);
  if (!square.is_zero()) throw MasterEquationFails(square.to_string());
}

GradedPoly d_operator(const CourantStructure& c, const GradedPoly& f) {
  return poisson_bracket(c.theta(), f);
}

}  // namespace clab
