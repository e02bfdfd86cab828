#include "hyperlat/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>

namespace hyperlat {

Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("denominator must be positive");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational literal: '" + s + "'");
  }
}

Rat parse_decimal_or_rational(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) return parse_rational(s);
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  size_t frac_len = s.size() - dot - 1;
  Int den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  try {
    return Rat(Int(digits), den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a decimal literal: '" + s + "'");
  }
}

std::string to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

Int isqrt_floor(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative value");
  return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Int& n, Int* root) {
  if (n < 0) return false;
  Int r = boost::multiprecision::sqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

}  // namespace hyperlat
