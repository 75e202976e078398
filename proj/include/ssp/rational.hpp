#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssp {

// GMP-backed rationals are canonical: lowest terms, positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", "p" or a plain decimal such as "0.125" exactly.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// Exact binary value of a finite double.
Rational from_double(double value);

/// Nearest fraction with the given denominator.
Rational rationalize(double value, long denominator);

double to_double(const Rational& value);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace ssp
