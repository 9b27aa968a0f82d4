#pragma once

#include <string>

#include "saw/curve.hpp"

namespace saw {

// A smooth point of the curve over Z/p^e in canonical projective
// coordinates: affine residues are (x : y : 1); residues near the origin
// of the formal group are (t : 1 : w) with t, w divisible by p. The class
// invariant is that coordinates are reduced mod p^e, the triple is
// primitive mod p, and the projective curve equation holds mod p^e.
class ModPoint {
 public:
  ModPoint(const Curve& c, const Int& p, unsigned e, const Int& X,
           const Int& Y, const Int& Z);
  static ModPoint infinity(const Int& p, unsigned e);

  const Int& p() const { return p_; }
  unsigned e() const { return e_; }
  const Int& modulus() const { return pe_; }
  const Int& X() const { return X_; }
  const Int& Y() const { return Y_; }
  const Int& Z() const { return Z_; }

  bool is_infinity() const;  // the exact residue (0 : 1 : 0)
  std::string str() const;   // "X:Y:Z" in decimal

  friend bool operator==(const ModPoint& a, const ModPoint& b);
  friend bool operator!=(const ModPoint& a, const ModPoint& b) {
    return !(a == b);
  }

 private:
  ModPoint() = default;
  Int p_;
  unsigned e_ = 1;
  Int pe_;
  Int X_, Y_, Z_;
};

// Whether a and b agree as projective points mod p^r, i.e. all three
// 2x2 minors of their coordinate matrix vanish mod p^r. Requires the same
// p and 1 <= r <= min(e_a, e_b).
bool proj_congruent(const ModPoint& a, const ModPoint& b, unsigned r);

// Reduction of an exact point mod p^e. p must be a prime of good
// reduction (BadPrime otherwise); denominators divisible by p are fine
// and land near the origin of the formal group.
ModPoint reduce_point(const Curve& c, const RationalPoint& pt, const Int& p,
                      unsigned e);

// Group operations on E(Z/p^e). Results equal the reduction of the exact
// operation on any lifts, which is well defined because reduction
// E(Z_p) -> E(Z/p^e) is a surjective homomorphism.
ModPoint mod_neg(const Curve& c, const ModPoint& a);
ModPoint mod_add(const Curve& c, const ModPoint& a, const ModPoint& b);
ModPoint mod_scalar_mul(const Curve& c, const Int& k, const ModPoint& a);

// l * reduce(pt) mod p^e computed without ever forming the exact multiple,
// so l may be large while heights stay bounded. l >= 1.
ModPoint multiple_mod_prime_power(const Curve& c, const RationalPoint& pt,
                                  const Int& l, const Int& p, unsigned e);

// |E(F_p)| by direct character summation over x. Exact; intended for
// desk-scale p (the loop is linear in p).
Int count_points(const Curve& c, const Int& p);

// Order of a point of E(F_p) given a multiple N of the group order
// (typically N = |E(F_p)|). Requires e = 1.
Int mod_order(const Curve& c, const ModPoint& a, const Int& group_multiple);

}  // namespace saw
