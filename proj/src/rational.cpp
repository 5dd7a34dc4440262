#include "courantlab/rational.hpp"

#include <cctype>

namespace clab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::optional<Integer> integer_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer root = boost::multiprecision::sqrt(n);
  if (root * root != n) return std::nullopt;
  return root;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) return std::nullopt;
  Integer n{std::string(num)};
  Integer d{std::string(den)};
  if (d == 0) return std::nullopt;
  Rational r(n, d);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) { return value.str(); }

std::optional<Rational> rational_sqrt(const Rational& value) {
  if (value < 0) return std::nullopt;
  auto n = integer_sqrt(Integer(boost::multiprecision::numerator(value)));
  auto d = integer_sqrt(Integer(boost::multiprecision::denominator(value)));
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

}  // namespace clab
