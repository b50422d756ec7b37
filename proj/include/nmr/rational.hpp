#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace nmr {

// Arbitrary-precision rational, always held in reduced form with a positive
// denominator.
using Rational = boost::multiprecision::cpp_rational;

// Accepts "N", "N/D" and finite decimals such as "0.125" or "-2.5"; decimals
// are converted exactly. Throws SemanticError on anything else.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

}  // namespace nmr
