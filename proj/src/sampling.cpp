#include "courantlab/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace clab {

int Sampler::uniform(int n) {
  if (n <= 0) return 0;
  return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
}

Rational Sampler::coefficient() {
  switch (uniform(6)) {
    case 0: return Rational(-2);
    case 1: return Rational(-1);
    case 2: return Rational(0);
    case 3: return Rational(1);
    case 4: return Rational(2);
    default: return Rational(1, 2);
  }
}

Rational Sampler::nonzero_coefficient() {
  Rational c = coefficient();
  while (c == 0) c = coefficient();
  return c;
}

std::optional<Monomial> Sampler::monomial(const Signature& sig, int degree, int max_q_degree) {
  std::vector<int> p_counts;
  for (int k = 0; 2 * k <= degree; ++k) {
    const int odd = degree - 2 * k;
    if (odd > sig.odd_count()) continue;
    if (k > 0 && sig.base_dim() == 0) continue;
    p_counts.push_back(k);
  }
  if (p_counts.empty()) return std::nullopt;
  const int k = p_counts[static_cast<std::size_t>(uniform(static_cast<int>(p_counts.size())))];
  Monomial m;
  for (int j = 0; j < k; ++j) ++m.p[static_cast<std::size_t>(uniform(sig.base_dim()))];

  std::vector<int> indices(static_cast<std::size_t>(sig.odd_count()));
  std::iota(indices.begin(), indices.end(), 0);
  for (int j = 0; j < degree - 2 * k; ++j) {
    const int pick = j + uniform(sig.odd_count() - j);
    std::swap(indices[static_cast<std::size_t>(j)], indices[static_cast<std::size_t>(pick)]);
    m.odd |= std::uint32_t{1} << indices[static_cast<std::size_t>(j)];
  }

  if (sig.base_dim() > 0) {
    const int q_total = uniform(max_q_degree + 1);
    for (int j = 0; j < q_total; ++j) ++m.q[static_cast<std::size_t>(uniform(sig.base_dim()))];
  }
  return m;
}

GradedPoly Sampler::homogeneous(const SignaturePtr& sig, int degree, int max_terms, int max_q_degree) {
  GradedPoly out(sig);
  const int terms = 1 + uniform(max_terms);
  for (int t = 0; t < terms; ++t) {
    auto m = monomial(*sig, degree, max_q_degree);
    if (!m) break;
    out.add_term(*m, coefficient());
  }
  return out;
}

GradedPoly Sampler::function(const SignaturePtr& sig, int max_q_degree, int max_terms) {
  return homogeneous(sig, 0, max_terms, max_q_degree);
}

GradedPoly Sampler::section(const SignaturePtr& sig, int max_q_degree) {
  GradedPoly out(sig);
  for (int a = 0; a < sig->odd_count(); ++a)
    out += mul(function(sig, max_q_degree, 2), GradedPoly::odd(sig, a));
  return out;
}

Endomorphism Sampler::endomorphism(const SignaturePtr& sig, int max_q_degree) {
  Endomorphism out(sig);
  for (int b = 0; b < out.size(); ++b)
    for (int a = 0; a < out.size(); ++a) out.at(b, a) = function(sig, max_q_degree, 2);
  return out;
}

Endomorphism Sampler::skew_endomorphism(const SignaturePtr& sig, int max_q_degree) {
  const auto m = endomorphism(sig, max_q_degree);
  return Rational(1, 2) * (m - transpose(m));
}

}  // namespace clab
