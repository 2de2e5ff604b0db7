#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace endowkit {

// The only numeric scalar in the core.  Always in lowest terms with a
// positive denominator; every operation is exact.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// The two-argument mpq constructor requires canonical signs, so general
// construction goes through an exact division instead.
inline Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("rational: denominator must be nonzero");
  return Rational(num) / Rational(den);
}

namespace detail {
inline BigInt parse_integer(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("rational: empty integer part");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("rational: sign without digits");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("rational: invalid digit in '" + text + "'");
  }
  return BigInt(text);
}
}  // namespace detail

// Accepts "p" or "p/q" with optional signs; q must be nonzero.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(detail::parse_integer(text));
  const BigInt num = detail::parse_integer(text.substr(0, slash));
  const BigInt den = detail::parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::domain_error("rational: denominator must be nonzero");
  return Rational(num) / Rational(den);
}

// Canonical form: "p" for integers, "p/q" otherwise.
inline std::string format_rational(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace endowkit
