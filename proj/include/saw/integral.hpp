#pragma once

#include <vector>

#include "saw/curve.hpp"

namespace saw {

// Box for the bounded search: affine points x = u/d^2, y = v/d^3 with
// 1 <= d <= max_denominator and |u| <= max_numerator_abs.
struct SearchBounds {
  Int max_denominator;
  Int max_numerator_abs;
};

struct TIntegralPoint {
  RationalPoint point;
  std::vector<Int> denominator_support;  // primes dividing d, ascending
};

// All affine points within the bounds whose x-denominator is a square
// d^2 with d supported on T, excluding the punctures. Ordered by
// (d, u, sign of v). The enumeration is complete within the box but says
// nothing beyond it.
std::vector<TIntegralPoint> enumerate_T_integral(const Curve& c,
                                                 const PunctureSet& m,
                                                 const std::vector<Int>& T,
                                                 const SearchBounds& bounds);

}  // namespace saw
