#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace graevkit {

/// Arbitrary precision rational, always kept in lowest terms.
using Rational = mpq_class;

/// Parses "p/q" or an integer literal with optional sign. The result is
/// canonical. Throws ParseError on anything else, including q == 0.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, else "p/q" with q > 0.
std::string to_string(const Rational& value);

/// num / den in lowest terms. den must be nonzero.
Rational make_rational(const mpz_class& num, const mpz_class& den);

bool is_integer(const Rational& value);
Rational floor(const Rational& value);
Rational ceil(const Rational& value);

}  // namespace graevkit
