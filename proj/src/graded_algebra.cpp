#include "courantlab/graded_algebra.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>
#include <sstream>

namespace clab {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// q<digits> and p<digits> always denote base coordinates.
bool is_reserved(std::string_view s) {
  if (s.size() < 2 || (s.front() != 'q' && s.front() != 'p')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

std::string_view label_name(OddLabel label) {
  switch (label) {
    case OddLabel::A: return "A";
    case OddLabel::ADual: return "A*";
    case OddLabel::none: break;
  }
  return "";
}

Signature::Signature(int base_dim, std::vector<OddGenerator> odd, RationalMatrix pairing)
    : base_dim_(base_dim), odd_(std::move(odd)), g_(std::move(pairing)) {
  if (base_dim_ < 0 || base_dim_ > kMaxBaseDim)
    throw InvalidSignature("base dimension must lie in [0, " + std::to_string(kMaxBaseDim) + "]");
  const std::size_t m = odd_.size();
  if (m > static_cast<std::size_t>(kMaxOddGens))
    throw InvalidSignature("at most " + std::to_string(kMaxOddGens) + " odd generators are supported");
  if (g_.rows() != m || g_.cols() != m)
    throw InvalidSignature("pairing must be " + std::to_string(m) + "x" + std::to_string(m));

  std::set<std::string, std::less<>> seen;
  for (const auto& gen : odd_) {
    if (!is_identifier(gen.name)) throw InvalidSignature("invalid generator name '" + gen.name + "'");
    if (is_reserved(gen.name)) throw InvalidSignature("generator name '" + gen.name + "' is reserved");
    if (!seen.insert(gen.name).second) throw InvalidSignature("duplicate generator name '" + gen.name + "'");
  }
  const auto labelled_count = std::count_if(odd_.begin(), odd_.end(),
                                            [](const OddGenerator& g) { return g.label != OddLabel::none; });
  if (labelled_count != 0 && static_cast<std::size_t>(labelled_count) != m)
    throw InvalidSignature("either every odd generator carries an A/A* label or none does");

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (g_(a, b) != g_(b, a)) throw InvalidSignature("pairing is not symmetric");
  auto inv = inverse(g_);
  if (!inv) throw InvalidSignature("pairing is degenerate");
  g_inv_ = std::move(*inv);

  if (labelled_count != 0) {
    std::size_t a_count = 0;
    for (const auto& gen : odd_) a_count += gen.label == OddLabel::A;
    if (2 * a_count != m) throw InvalidSignature("A and A* generators must be equally many");
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (odd_[a].label == odd_[b].label && g_(a, b) != 0)
          throw InvalidSignature("pairing must vanish on A x A and on A* x A*");
  }

  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (g_(a, b) != 0) entries_.push_back({static_cast<int>(a), static_cast<int>(b), g_(a, b)});
}

bool Signature::labelled() const {
  return !odd_.empty() && odd_.front().label != OddLabel::none;
}

std::vector<int> Signature::indices_with(OddLabel label) const {
  std::vector<int> out;
  for (int a = 0; a < odd_count(); ++a)
    if (odd_[a].label == label) out.push_back(a);
  return out;
}

std::optional<int> Signature::find_odd(std::string_view name) const {
  for (int a = 0; a < odd_count(); ++a)
    if (odd_[a].name == name) return a;
  return std::nullopt;
}

std::string Signature::q_name(int i) const { return "q" + std::to_string(i + 1); }
std::string Signature::p_name(int i) const { return "p" + std::to_string(i + 1); }

SignaturePtr make_signature(int base_dim, std::vector<OddGenerator> odd, RationalMatrix pairing) {
  return std::make_shared<const Signature>(base_dim, std::move(odd), std::move(pairing));
}

int Monomial::odd_count() const { return std::popcount(odd); }

bool Monomial::has_p() const {
  return std::any_of(p.begin(), p.end(), [](std::uint8_t e) { return e != 0; });
}

int Monomial::degree() const {
  int d = odd_count();
  for (auto e : p) d += 2 * e;
  return d;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  if (a.q != b.q) return a.q < b.q;
  if (a.odd != b.odd) {
    // The index sequences agree below the lowest differing bit d. The set
    // containing d is smaller iff the other set still has an index above d.
    const std::uint32_t x = a.odd ^ b.odd;
    const std::uint32_t d = x & (~x + 1);
    const std::uint32_t above = ~((d << 1) - 1);
    if (a.odd & d) return (b.odd & above) != 0;
    return (a.odd & above) == 0;
  }
  return a.p < b.p;
}

NormalizedMonomial normalize_monomial(std::span<const int> odd_word, std::span<const int> q_exp,
                                      std::span<const int> p_exp) {
  NormalizedMonomial out;
  if (q_exp.size() > kMaxBaseDim || p_exp.size() > kMaxBaseDim)
    throw std::invalid_argument("too many base coordinates");
  for (std::size_t i = 0; i < q_exp.size(); ++i) out.monomial.q[i] = static_cast<std::uint8_t>(q_exp[i]);
  for (std::size_t i = 0; i < p_exp.size(); ++i) out.monomial.p[i] = static_cast<std::uint8_t>(p_exp[i]);
  int inversions = 0;
  for (std::size_t i = 0; i < odd_word.size(); ++i) {
    const int a = odd_word[i];
    if (a < 0 || a >= kMaxOddGens) throw std::invalid_argument("odd index out of range");
    const std::uint32_t bit = std::uint32_t{1} << a;
    if (out.monomial.odd & bit) {
      out.sign = 0;
      return out;
    }
    out.monomial.odd |= bit;
    for (std::size_t j = i + 1; j < odd_word.size(); ++j)
      if (odd_word[j] < a) ++inversions;
  }
  out.sign = (inversions % 2 == 0) ? 1 : -1;
  return out;
}

int merge_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  // Count pairs (s in a, t in b) with s > t.
  int swaps = 0;
  while (b) {
    const int t = std::countr_zero(b);
    b &= b - 1;
    const std::uint32_t above = (t == 31) ? 0u : ~((std::uint32_t{2} << t) - 1);
    swaps += std::popcount(a & above);
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

std::pair<Monomial, int> multiply_monomials(const Monomial& a, const Monomial& b) {
  const int sign = merge_sign(a.odd, b.odd);
  Monomial m;
  if (sign == 0) return {m, 0};
  for (int i = 0; i < kMaxBaseDim; ++i) {
    m.q[i] = static_cast<std::uint8_t>(a.q[i] + b.q[i]);
    m.p[i] = static_cast<std::uint8_t>(a.p[i] + b.p[i]);
  }
  m.odd = a.odd | b.odd;
  return {m, sign};
}

GradedPoly GradedPoly::constant(SignaturePtr sig, const Rational& c) {
  return from_term(std::move(sig), Monomial{}, c);
}

GradedPoly GradedPoly::q(SignaturePtr sig, int i) {
  if (i < 0 || i >= sig->base_dim()) throw std::out_of_range("q index out of range");
  Monomial m;
  m.q[i] = 1;
  return from_term(std::move(sig), m, Rational(1));
}

GradedPoly GradedPoly::p(SignaturePtr sig, int i) {
  if (i < 0 || i >= sig->base_dim()) throw std::out_of_range("p index out of range");
  Monomial m;
  m.p[i] = 1;
  return from_term(std::move(sig), m, Rational(1));
}

GradedPoly GradedPoly::odd(SignaturePtr sig, int a) {
  if (a < 0 || a >= sig->odd_count()) throw std::out_of_range("odd index out of range");
  Monomial m;
  m.odd = std::uint32_t{1} << a;
  return from_term(std::move(sig), m, Rational(1));
}

GradedPoly GradedPoly::from_term(SignaturePtr sig, const Monomial& m, const Rational& c) {
  GradedPoly out(std::move(sig));
  out.add_term(m, c);
  return out;
}

std::optional<int> GradedPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  const int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return std::nullopt;
  return d;
}

bool GradedPoly::is_homogeneous_of(int d) const {
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

bool GradedPoly::has_p() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.has_p(); });
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void require_same_signature(const GradedPoly& a, const GradedPoly& b) {
  if (a.signature() != b.signature() && !(*a.signature() == *b.signature())) throw SignatureMismatch();
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  require_same_signature(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  require_same_signature(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

GradedPoly mul(const GradedPoly& f, const GradedPoly& g) {
  require_same_signature(f, g);
  GradedPoly out(f.signature());
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      auto [m, sign] = multiply_monomials(mf, mg);
      if (sign == 0) continue;
      out.add_term(m, sign > 0 ? Rational(cf * cg) : Rational(-(cf * cg)));
    }
  }
  return out;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) { return mul(a, b); }

bool operator==(const GradedPoly& a, const GradedPoly& b) {
  if (a.sig_ != b.sig_ && !(*a.sig_ == *b.sig_)) return false;
  return a.terms_ == b.terms_;
}

std::string monomial_to_string(const Signature& sig, const Monomial& m) {
  std::vector<std::string> factors;
  auto power = [](std::string name, int e) { return e == 1 ? name : name + "^" + std::to_string(e); };
  for (int i = 0; i < kMaxBaseDim; ++i)
    if (m.q[i]) factors.push_back(power(sig.q_name(i), m.q[i]));
  for (std::uint32_t s = m.odd; s; s &= s - 1) factors.push_back(sig.odd()[std::countr_zero(s)].name);
  for (int i = 0; i < kMaxBaseDim; ++i)
    if (m.p[i]) factors.push_back(power(sig.p_name(i), m.p[i]));
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += ' ';
    out += f;
  }
  return out;
}

std::string GradedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string body = monomial_to_string(*sig_, m);
    if (body.empty()) {
      out += clab::to_string(mag);
    } else {
      if (mag != 1) out += clab::to_string(mag) + " ";
      out += body;
    }
  }
  return out;
}

}  // namespace clab
