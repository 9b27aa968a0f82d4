#pragma once

#include <optional>
#include <string>
#include <vector>

#include "saw/numeric.hpp"

namespace saw {

// A point of E(Q) in affine coordinates, or the point at infinity.
// Coordinates are kept canonical (reduced fraction, positive denominator).
class RationalPoint {
 public:
  RationalPoint(Rat x, Rat y);
  static RationalPoint infinity();

  bool is_infinity() const { return inf_; }
  const Rat& x() const;
  const Rat& y() const;

  friend bool operator==(const RationalPoint& a, const RationalPoint& b);
  friend bool operator!=(const RationalPoint& a, const RationalPoint& b) {
    return !(a == b);
  }

 private:
  RationalPoint() : inf_(true) {}
  bool inf_;
  Rat x_, y_;
};

// y^2 = x^3 + a x + b with integral coefficients and nonzero discriminant.
class Curve {
 public:
  Curve(Int a, Int b);  // throws SingularCurve when -16(4a^3+27b^2) = 0

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& disc() const { return disc_; }
  const std::vector<Int>& bad_primes() const { return bad_; }
  bool is_bad(const Int& p) const;

 private:
  Int a_, b_;
  Int disc_;
  std::vector<Int> bad_;
};

Int discriminant(const Int& a, const Int& b);  // throws SingularCurve on zero

bool on_curve(const Curve& c, const RationalPoint& p);

RationalPoint neg(const Curve& c, const RationalPoint& p);
RationalPoint add(const Curve& c, const RationalPoint& p,
                  const RationalPoint& q);
RationalPoint scalar_mul(const Curve& c, const Int& k, const RationalPoint& p);

// Exact order when <= 12, nullopt for infinite order. Correct by the
// classification of rational torsion: any finite order divides one of
// 1..10 or 12, so order > 12 never occurs.
std::optional<unsigned> torsion_order(const Curve& c, const RationalPoint& p);

// 2 when the discriminant is positive, else 1.
int real_components(const Curve& c);

// Primitive integral projective coordinates (X : Y : Z), Z > 0 for affine
// points, (0 : 1 : 0) for infinity.
struct ProjectiveTriple {
  Int X, Y, Z;
};
ProjectiveTriple primitive_triple(const RationalPoint& p);

// Finite set of torsion punctures with their orders and the lcm n.
struct PunctureSet {
  std::vector<RationalPoint> points;
  std::vector<unsigned> orders;
  unsigned long n = 1;

  // Validates: non-empty, pairwise distinct, on the curve, all torsion.
  static PunctureSet create(const Curve& c, std::vector<RationalPoint> pts);
};

}  // namespace saw
