#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace parataur {

using Rational = mpq_class;

/// Parses "n", "-n" or "n/d" (canonicalized). Throws Error{Syntax} otherwise.
Rational parse_rational(std::string_view text);

/// Lowest terms, integers printed without a denominator ("3", "-1/2").
std::string to_string(const Rational& q);

/// Always "num/den" ("3/1"); used by every machine-readable interface.
std::string to_fraction(const Rational& q);

Rational floor(const Rational& q);
Rational ceil(const Rational& q);

/// Throws Error{InvalidArgument} when q is not an integer fitting int64.
std::int64_t to_int64(const Rational& q);

}  // namespace parataur
