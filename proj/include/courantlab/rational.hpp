#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace clab {

/// Exact rational scalar. Expression templates are disabled so that values
/// behave like plain value types inside containers and lambdas.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Parses "3", "-3/7", "+2/4". Anything else (decimals, exponents, empty
/// denominators) returns nullopt.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical text form: "0", "-3", "1/2".
std::string to_string(const Rational& value);

/// Exact square root in Q, if one exists.
std::optional<Rational> rational_sqrt(const Rational& value);

}  // namespace clab
