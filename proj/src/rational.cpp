#include "ssp/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "ssp/errors.hpp"

namespace ssp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw StructuralError("not an integer: '" + std::string(s) + "'");
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw StructuralError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw StructuralError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot_pos = text.find('.'); dot_pos != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot_pos);
    std::string_view frac = text.substr(dot_pos + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty()) whole = "0";
    if (frac.empty() || !all_digits(frac) || !all_digits(whole)) {
      throw StructuralError("bad decimal literal '" + std::string(text) + "'");
    }
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    Integer num = Integer(std::string(whole)) * scale + Integer(std::string(frac));
    Rational value(num, scale);
    return negative ? Rational(-value) : value;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot convert non-finite double to rational");
  return Rational(value);
}

Rational rationalize(double value, long denominator) {
  if (!std::isfinite(value)) throw DomainError("cannot rationalize non-finite double");
  if (denominator <= 0) throw DomainError("denominator must be positive");
  return Rational(static_cast<long long>(std::llround(value * static_cast<double>(denominator))),
                  denominator);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw StructuralError("dot product of vectors with different lengths");
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) sum += a[i] * b[i];
  }
  return sum;
}

}  // namespace ssp
