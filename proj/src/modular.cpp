#include "saw/modular.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "saw/errors.hpp"
#include "saw/parallel.hpp"

// Arithmetic on E(Z/p^e) is computed through exact lifts: every input
// residue is lifted to a point mod p^W for a working precision W >= e, the
// group law is evaluated projectively over the integers, and the common
// p-power content of the result (the digits lost where a single law
// degenerates) is divided out. Two complementary laws are evaluated and
// the one losing fewer digits wins:
//
//   * the chord law, which degenerates only on the diagonal and against
//     the zero section, and
//   * a complete bidegree-(2,2) law, which degenerates only where the
//     difference of the arguments has exact order 2.
//
// The degeneracy loci are disjoint except at pairs (near-zero, near
// 2-torsion), so at least one law is usable at every step and in the
// common case the better law loses nothing. Whenever the accumulated loss
// would eat into the requested e digits the whole computation restarts at
// a higher W; the loss is bounded by fixed p-adic distances of the exact
// lifted points, so a finite W always suffices and the retry terminates.

namespace saw {

namespace {

Int pk(const Int& p, unsigned k) { return num::pow_ui(p, k); }

// v_p(x) capped at `cap`; the cap is also returned for x = 0.
unsigned val_capped(const Int& x, const Int& p, unsigned cap) {
  if (x == 0) return cap;
  Int v = x;
  unsigned c = 0;
  while (c < cap && mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) {
    v /= p;
    ++c;
  }
  return c;
}

struct Ctx {
  Int a, b;    // curve coefficients
  Int asq;     // a^2
  Int b3;      // 3b
  Int p;
};

// Working point: coordinates reduced mod p^prec, prec > 0 digits valid.
struct WP {
  Int X, Y, Z;
  unsigned prec;
};

bool exact_zero_section(const WP& t, const Ctx& cx) {
  Int m = pk(cx.p, t.prec);
  return t.X % m == 0 && t.Z % m == 0;
}

WP truncated(const WP& t, unsigned prec, const Ctx& cx) {
  Int m = pk(cx.p, prec);
  WP r;
  r.X = t.X % m;
  r.Y = t.Y % m;
  r.Z = t.Z % m;
  r.prec = prec;
  return r;
}

struct Tri {
  Int X, Y, Z;
};

// Complete law of bidegree (2,2); degenerates exactly where P - Q has
// order 2 (in particular it handles the diagonal and the zero section).
Tri law_complete(const Ctx& cx, const WP& P, const WP& Q, const Int& m) {
  Int t0 = P.X * Q.X % m;
  Int t1 = P.Y * Q.Y % m;
  Int t2 = P.Z * Q.Z % m;
  Int s = (P.X * Q.Z + Q.X * P.Z) % m;
  Int u = (P.Y * Q.Z + Q.Y * P.Z) % m;
  Int w = (P.X * Q.Y + Q.X * P.Y) % m;
  Int f = (t1 - cx.a * s - cx.b3 * t2) % m;
  Int g = (t1 + cx.a * s + cx.b3 * t2) % m;
  Int q = (cx.a * t0 + cx.b3 * s - cx.asq * t2) % m;
  Int r = (3 * t0 + cx.a * t2) % m;
  Tri out;
  out.X = (w * f - u * q) % m;
  out.Y = (g * f + r * q) % m;
  out.Z = (u * g + w * r) % m;
  return out;
}

// Chord law; degenerates on the diagonal and against the zero section.
Tri law_chord(const WP& P, const WP& Q, const Int& m) {
  Int u = (Q.Y * P.Z - P.Y * Q.Z) % m;
  Int v = (Q.X * P.Z - P.X * Q.Z) % m;
  Int vv = v * v % m;
  Int vvv = vv * v % m;
  Int z12 = P.Z * Q.Z % m;
  Int x1z2 = P.X * Q.Z % m;
  Int A = (u * u % m * z12 - vvv - 2 * vv % m * x1z2) % m;
  Tri out;
  out.X = v * A % m;
  out.Y = (u * (vv * x1z2 % m - A) - vvv * P.Y) % m;
  out.Z = vvv * z12 % m;
  return out;
}

unsigned content(const Tri& t, const Ctx& cx, unsigned cap) {
  unsigned c = val_capped(t.X, cx.p, cap);
  c = std::min(c, val_capped(t.Y, cx.p, cap));
  return std::min(c, val_capped(t.Z, cx.p, cap));
}

// One group-law step with best-of-two selection. The result is valid to
// min(P.prec, Q.prec) minus the digits divided out; prec = 0 marks the
// (theoretically transient) case of both laws degenerating at once.
WP law_add(const Ctx& cx, const WP& P, const WP& Q) {
  unsigned wv = std::min(P.prec, Q.prec);
  if (exact_zero_section(P, cx)) return truncated(Q, wv, cx);
  if (exact_zero_section(Q, cx)) return truncated(P, wv, cx);
  Int m = pk(cx.p, wv);
  Tri comp = law_complete(cx, P, Q, m);
  Tri chor = law_chord(P, Q, m);
  unsigned cc = content(comp, cx, wv);
  unsigned ch = content(chor, cx, wv);
  const Tri& best = cc <= ch ? comp : chor;
  unsigned c = std::min(cc, ch);
  if (c >= wv) return WP{0, 0, 0, 0};
  Int d = pk(cx.p, c);
  Int mm = pk(cx.p, wv - c);
  WP out;
  out.X = best.X / d % mm;
  out.Y = best.Y / d % mm;
  out.Z = best.Z / d % mm;
  // representatives in [0, p^prec)
  if (out.X < 0) out.X += mm;
  if (out.Y < 0) out.Y += mm;
  if (out.Z < 0) out.Z += mm;
  out.prec = wv - c;
  return out;
}

// k * base by double-and-add, k >= 1. Returns prec = 0 when precision ran
// out before finishing.
WP scalar_chain(const Ctx& cx, const WP& base, const Int& k, unsigned need) {
  WP acc = base;
  long top = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1;
  for (long i = top - 1; i >= 0; --i) {
    acc = law_add(cx, acc, acc);
    if (acc.prec < need) return WP{0, 0, 0, 0};
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      acc = law_add(cx, acc, base);
      if (acc.prec < need) return WP{0, 0, 0, 0};
    }
  }
  return acc;
}

Ctx make_ctx(const Curve& c, const Int& p) {
  Ctx cx;
  cx.a = c.a();
  cx.b = c.b();
  cx.asq = cx.a * cx.a;
  cx.b3 = 3 * c.b();
  cx.p = p;
  return cx;
}

// Fixed-point Newton iteration mod p^W; the iterate has a unit derivative
// so each pass at least doubles the correct digits.
template <class Step>
Int newton(Int x, const Step& step, int rounds = 64) {
  for (int i = 0; i < rounds; ++i) {
    Int nx = step(x);
    if (nx == x) return x;
    x = nx;
  }
  return x;
}

Int inv_mod(const Int& x, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t())) {
    throw std::logic_error("non-invertible element during lifting");
  }
  return r;
}

// Lift a canonical residue mod p^e to a curve point mod p^W, W >= e,
// congruent to the input mod p^e. In the affine chart the lift moves the
// coordinate whose partial derivative is a unit (y when y is a unit, x at
// residues near 2-torsion); in the chart at the zero section the equation
// w = t^3 + a t w^2 + b w^3 has derivative -1 in w, so w lifts with t held
// fixed.
Tri hensel_lift(const Ctx& cx, const ModPoint& pt, unsigned W) {
  Int m = pk(cx.p, W);
  if (pt.Z() == 1) {
    Int x = pt.X(), y = pt.Y();
    if (y % cx.p != 0) {
      y = newton(y, [&](const Int& v) -> Int {
        Int fx = (x * x % m * x + cx.a * x + cx.b) % m;
        Int r = (v - (v * v - fx) % m * inv_mod(2 * v % m, m)) % m;
        return r < 0 ? r + m : r;
      });
    } else {
      x = newton(x, [&](const Int& v) -> Int {
        Int fv = (v * v % m * v + cx.a * v + cx.b) % m;
        Int fp = (3 * v * v + cx.a) % m;
        Int r = (v - (fv - y * y) % m * inv_mod(fp, m)) % m;
        return r < 0 ? r + m : r;
      });
    }
    Int check = (y * y - x * x % m * x - cx.a * x - cx.b) % m;
    if (check != 0) throw std::logic_error("affine lift left the curve");
    return {x, y, 1};
  }
  // chart at the zero section: (t : 1 : w)
  Int t = pt.X(), w = pt.Z();
  w = newton(w, [&](const Int& v) -> Int {
    Int g = (t * t % m * t + cx.a * t % m * v % m * v + cx.b * v % m * v % m * v - v) % m;
    Int gp = (2 * cx.a * t % m * v + 3 * cx.b * v % m * v - 1) % m;
    Int r = (v - g * inv_mod(gp, m)) % m;
    return r < 0 ? r + m : r;
  });
  Int check = (w - t * t % m * t - cx.a * t % m * w % m * w -
               cx.b * w % m * w % m * w) % m;
  if (check != 0) throw std::logic_error("formal-group lift left the curve");
  return {t, 1 % m, w};
}

Tri reduce_triple(const RationalPoint& pt, const Int& p, unsigned W) {
  ProjectiveTriple t = primitive_triple(pt);
  Int m = pk(p, W);
  Tri r{t.X % m, t.Y % m, t.Z % m};
  if (r.X < 0) r.X += m;
  if (r.Y < 0) r.Y += m;
  if (r.Z < 0) r.Z += m;
  return r;
}

// Shared retry driver: base_at(W) must yield the base point mod p^W for
// any W. Doubles the working precision until the chain finishes with >= e
// valid digits.
template <class BaseAt>
Tri scalar_mod(const Curve& c, const BaseAt& base_at, const Int& k,
               const Int& p, unsigned e) {
  Ctx cx = make_ctx(c, p);
  unsigned W = e + 2;
  for (int attempt = 0; attempt < 40; ++attempt) {
    Tri bt = base_at(W);
    WP base{bt.X, bt.Y, bt.Z, W};
    if (exact_zero_section(base, cx)) return {0, 1, 0};
    WP out = scalar_chain(cx, base, k, e);
    if (out.prec >= e) {
      Int m = pk(p, e);
      return {out.X % m, out.Y % m, out.Z % m};
    }
    W = 2 * W + 4;
  }
  throw std::logic_error("scalar multiple did not stabilize under retries");
}

void require_good_prime(const Curve& c, const Int& p) {
  if (p < 2 || !num::is_prime(p)) {
    throw std::invalid_argument("modulus base must be prime");
  }
  if (c.is_bad(p)) {
    throw BadPrime("prime divides the discriminant: " + p.get_str());
  }
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, base = b % m;
  while (e) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

ModPoint::ModPoint(const Curve& c, const Int& p, unsigned e, const Int& X,
                   const Int& Y, const Int& Z) {
  if (e < 1) throw std::invalid_argument("precision must be at least 1");
  if (p < 2 || !num::is_prime(p)) {
    throw std::invalid_argument("modulus base must be prime");
  }
  p_ = p;
  e_ = e;
  pe_ = pk(p, e);
  Int x = X % pe_, y = Y % pe_, z = Z % pe_;
  if (x < 0) x += pe_;
  if (y < 0) y += pe_;
  if (z < 0) z += pe_;
  if (x % p == 0 && y % p == 0 && z % p == 0) {
    throw std::invalid_argument("projective triple is not primitive");
  }
  // canonical chart: divide by Z when Z is a unit, else by Y; a smooth
  // point with both Y and Z non-units would force X non-unit too
  if (z % p != 0) {
    Int zi = inv_mod(z, pe_);
    X_ = x * zi % pe_;
    Y_ = y * zi % pe_;
    Z_ = 1;
  } else if (y % p != 0) {
    Int yi = inv_mod(y, pe_);
    X_ = x * yi % pe_;
    Y_ = 1 % pe_;
    Z_ = z * yi % pe_;
  } else {
    throw std::invalid_argument("triple does not lie on the smooth locus");
  }
  Int lhs = (Y_ * Y_ % pe_ * Z_) % pe_;
  Int rhs = (X_ * X_ % pe_ * X_ + c.a() * X_ % pe_ * Z_ % pe_ * Z_ +
             c.b() * Z_ % pe_ * Z_ % pe_ * Z_) % pe_;
  if ((lhs - rhs) % pe_ != 0) {
    throw std::invalid_argument("triple does not satisfy the curve equation");
  }
}

ModPoint ModPoint::infinity(const Int& p, unsigned e) {
  if (e < 1) throw std::invalid_argument("precision must be at least 1");
  if (p < 2 || !num::is_prime(p)) {
    throw std::invalid_argument("modulus base must be prime");
  }
  ModPoint m;
  m.p_ = p;
  m.e_ = e;
  m.pe_ = pk(p, e);
  m.X_ = 0;
  m.Y_ = 1 % m.pe_;
  m.Z_ = 0;
  return m;
}

bool ModPoint::is_infinity() const { return X_ == 0 && Z_ == 0; }

std::string ModPoint::str() const {
  return X_.get_str() + ":" + Y_.get_str() + ":" + Z_.get_str();
}

bool operator==(const ModPoint& a, const ModPoint& b) {
  return a.p_ == b.p_ && a.e_ == b.e_ && a.X_ == b.X_ && a.Y_ == b.Y_ &&
         a.Z_ == b.Z_;
}

bool proj_congruent(const ModPoint& a, const ModPoint& b, unsigned r) {
  if (a.p() != b.p()) {
    throw std::invalid_argument("projective comparison across different primes");
  }
  if (r < 1 || r > std::min(a.e(), b.e())) {
    throw std::invalid_argument("comparison level exceeds available precision");
  }
  Int m = pk(a.p(), r);
  Int m1 = (a.X() * b.Y() - a.Y() * b.X()) % m;
  Int m2 = (a.X() * b.Z() - a.Z() * b.X()) % m;
  Int m3 = (a.Y() * b.Z() - a.Z() * b.Y()) % m;
  return m1 == 0 && m2 == 0 && m3 == 0;
}

ModPoint reduce_point(const Curve& c, const RationalPoint& pt, const Int& p,
                      unsigned e) {
  require_good_prime(c, p);
  if (e < 1) throw std::invalid_argument("precision must be at least 1");
  if (!on_curve(c, pt)) {
    throw std::invalid_argument("point does not lie on the curve");
  }
  Tri t = reduce_triple(pt, p, e);
  return ModPoint(c, p, e, t.X, t.Y, t.Z);
}

ModPoint mod_neg(const Curve& c, const ModPoint& a) {
  return ModPoint(c, a.p(), a.e(), a.X(), -a.Y(), a.Z());
}

ModPoint mod_add(const Curve& c, const ModPoint& a, const ModPoint& b) {
  if (a.p() != b.p() || a.e() != b.e()) {
    throw std::invalid_argument("addition requires matching moduli");
  }
  if (a.is_infinity()) return b;
  if (b.is_infinity()) return a;
  const Int& p = a.p();
  unsigned e = a.e();
  Ctx cx = make_ctx(c, p);
  unsigned W = e + 2;
  for (int attempt = 0; attempt < 40; ++attempt) {
    Tri ta = hensel_lift(cx, a, W);
    Tri tb = hensel_lift(cx, b, W);
    WP out = law_add(cx, WP{ta.X, ta.Y, ta.Z, W}, WP{tb.X, tb.Y, tb.Z, W});
    if (out.prec >= e) {
      return ModPoint(c, p, e, out.X, out.Y, out.Z);
    }
    W = 2 * W + 4;
  }
  throw std::logic_error("addition did not stabilize under retries");
}

ModPoint mod_scalar_mul(const Curve& c, const Int& k, const ModPoint& a) {
  if (k == 0 || a.is_infinity()) return ModPoint::infinity(a.p(), a.e());
  if (k < 0) return mod_scalar_mul(c, -k, mod_neg(c, a));
  Ctx cx = make_ctx(c, a.p());
  Tri t = scalar_mod(
      c, [&](unsigned W) { return hensel_lift(cx, a, W); }, k, a.p(), a.e());
  return ModPoint(c, a.p(), a.e(), t.X, t.Y, t.Z);
}

ModPoint multiple_mod_prime_power(const Curve& c, const RationalPoint& pt,
                                  const Int& l, const Int& p, unsigned e) {
  require_good_prime(c, p);
  if (e < 1) throw std::invalid_argument("precision must be at least 1");
  if (l < 1) throw std::invalid_argument("multiplier must be positive");
  if (!on_curve(c, pt)) {
    throw std::invalid_argument("point does not lie on the curve");
  }
  if (pt.is_infinity()) return ModPoint::infinity(p, e);
  Tri t = scalar_mod(
      c, [&](unsigned W) { return reduce_triple(pt, p, W); }, l, p, e);
  return ModPoint(c, p, e, t.X, t.Y, t.Z);
}

Int count_points(const Curve& c, const Int& p) {
  require_good_prime(c, p);
  if (!p.fits_ulong_p()) {
    throw std::invalid_argument("prime too large for exhaustive counting");
  }
  std::uint64_t pp = p.get_ui();
  Int am = c.a() % p, bm = c.b() % p;
  if (am < 0) am += p;
  if (bm < 0) bm += p;
  std::uint64_t a = am.get_ui(), b = bm.get_ui();
  std::uint64_t half = (pp - 1) / 2;
  auto chi_sum_range = [&](std::uint64_t lo, std::uint64_t hi) {
    long s = 0;
    for (std::uint64_t x = lo; x < hi; ++x) {
      unsigned __int128 xx = static_cast<unsigned __int128>(x) * x % pp;
      std::uint64_t fx = static_cast<std::uint64_t>(
          (xx * x + static_cast<unsigned __int128>(a) * x + b) % pp);
      if (fx == 0) continue;
      s += powmod_u64(fx, half, pp) == 1 ? 1 : -1;
    }
    return s;
  };
  long sum = 0;
  unsigned budget = thread_budget();
  if (pp > (1u << 17) && budget > 1) {
    std::size_t chunks = budget;
    std::vector<long> partial(chunks, 0);
    std::uint64_t step = pp / chunks + 1;
    parallel_for(chunks, [&](std::size_t i) {
      std::uint64_t lo = i * step;
      std::uint64_t hi = std::min(pp, lo + step);
      if (lo < hi) partial[i] = chi_sum_range(lo, hi);
    });
    for (long s : partial) sum += s;
  } else {
    sum = chi_sum_range(0, pp);
  }
  return Int(static_cast<unsigned long>(pp)) + 1 + sum;
}

Int mod_order(const Curve& c, const ModPoint& a, const Int& group_multiple) {
  if (a.e() != 1) {
    throw std::invalid_argument("order computation works over F_p only");
  }
  if (group_multiple < 1) {
    throw std::invalid_argument("group order multiple must be positive");
  }
  if (!mod_scalar_mul(c, group_multiple, a).is_infinity()) {
    throw std::invalid_argument(
        "given multiple does not annihilate the point");
  }
  Int ord = group_multiple;
  for (const auto& [q, k] : num::factor(group_multiple)) {
    for (unsigned i = 0; i < k; ++i) {
      Int cand = ord / q;
      if (mod_scalar_mul(c, cand, a).is_infinity()) {
        ord = cand;
      } else {
        break;
      }
    }
  }
  return ord;
}

}  // namespace saw
