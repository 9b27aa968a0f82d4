#include "saw/integral.hpp"

#include <algorithm>
#include <stdexcept>

namespace saw {

namespace {

bool smooth_over(const Int& d, const std::vector<Int>& T) {
  Int rem = d;
  for (const Int& t : T) {
    while (rem % t == 0) rem /= t;
  }
  return rem == 1;
}

}  // namespace

std::vector<TIntegralPoint> enumerate_T_integral(const Curve& c,
                                                 const PunctureSet& m,
                                                 const std::vector<Int>& T,
                                                 const SearchBounds& bounds) {
  if (bounds.max_denominator < 1) {
    throw std::invalid_argument("denominator bound must be at least 1");
  }
  if (bounds.max_numerator_abs < 0) {
    throw std::invalid_argument("numerator bound must be non-negative");
  }
  std::vector<TIntegralPoint> out;
  for (Int d = 1; d <= bounds.max_denominator; ++d) {
    if (!smooth_over(d, T)) continue;
    Int d2 = d * d, d4 = d2 * d2, d6 = d4 * d2;
    std::vector<Int> support = d == 1 ? std::vector<Int>{}
                                      : num::prime_divisors(d);
    for (Int u = -bounds.max_numerator_abs; u <= bounds.max_numerator_abs;
         ++u) {
      Int g;
      mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), d.get_mpz_t());
      if (g != 1) continue;  // x = u/d^2 in lowest terms
      Int rhs = u * u * u + c.a() * u * d4 + c.b() * d6;
      if (rhs < 0) continue;
      if (!mpz_perfect_square_p(rhs.get_mpz_t())) continue;
      Int v;
      mpz_sqrt(v.get_mpz_t(), rhs.get_mpz_t());
      Rat x(u, d2), y(v, d * d2);
      x.canonicalize();
      y.canonicalize();
      // negative branch first so points sort by (d, u, sign of v)
      std::vector<RationalPoint> found;
      if (v != 0) found.emplace_back(x, -y);
      found.emplace_back(x, y);
      for (auto& pt : found) {
        if (std::find(m.points.begin(), m.points.end(), pt) !=
            m.points.end()) {
          continue;
        }
        out.push_back({std::move(pt), support});
      }
    }
  }
  return out;
}

}  // namespace saw
