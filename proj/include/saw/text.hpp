#pragma once

#include <string>

#include "saw/curve.hpp"

namespace saw {

// Canonical decimal forms used by certificates and the command line:
// integers as plain decimal, rationals always as "num/den" with positive
// denominator in lowest terms, points as "inf" or "x,y".

std::string format_int(const Int& v);
std::string format_rational(const Rat& v);
std::string format_point(const RationalPoint& p);

// Strict integer grammar: optional '-', then digits. Leading zeros are
// accepted and normalized away. Throws std::invalid_argument.
Int parse_int(const std::string& s);

// "num" or "num/den" with den nonzero; normalized on input.
Rat parse_rational(const std::string& s);

// "inf" or "<rational>,<rational>".
RationalPoint parse_point(const std::string& s);

}  // namespace saw
