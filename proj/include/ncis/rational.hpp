#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncis {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Parses "p", "-p" or "p/q" (whitespace not allowed).
Rational parse_rational(std::string_view text);

}  // namespace ncis
