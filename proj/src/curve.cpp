#include "saw/curve.hpp"

#include <numeric>
#include <stdexcept>

#include "saw/errors.hpp"

namespace saw {

RationalPoint::RationalPoint(Rat x, Rat y)
    : inf_(false), x_(std::move(x)), y_(std::move(y)) {
  x_.canonicalize();
  y_.canonicalize();
}

RationalPoint RationalPoint::infinity() { return RationalPoint(); }

const Rat& RationalPoint::x() const {
  if (inf_) throw std::logic_error("coordinate of the point at infinity");
  return x_;
}

const Rat& RationalPoint::y() const {
  if (inf_) throw std::logic_error("coordinate of the point at infinity");
  return y_;
}

bool operator==(const RationalPoint& a, const RationalPoint& b) {
  if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
  return a.x_ == b.x_ && a.y_ == b.y_;
}

Int discriminant(const Int& a, const Int& b) {
  Int d = -16 * (4 * a * a * a + 27 * b * b);
  if (d == 0) throw SingularCurve("vanishing discriminant");
  return d;
}

Curve::Curve(Int a, Int b) : a_(std::move(a)), b_(std::move(b)) {
  disc_ = discriminant(a_, b_);
  bad_ = num::prime_divisors(disc_);
}

bool Curve::is_bad(const Int& p) const {
  return std::binary_search(bad_.begin(), bad_.end(), p);
}

bool on_curve(const Curve& c, const RationalPoint& p) {
  if (p.is_infinity()) return true;
  const Rat& x = p.x();
  const Rat& y = p.y();
  return y * y == x * x * x + c.a() * x + c.b();
}

RationalPoint neg(const Curve&, const RationalPoint& p) {
  if (p.is_infinity()) return p;
  return RationalPoint(p.x(), -p.y());
}

RationalPoint add(const Curve& c, const RationalPoint& p,
                  const RationalPoint& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const Rat &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();
  Rat lambda;
  if (x1 == x2) {
    if (y1 != y2 || y1 == 0) return RationalPoint::infinity();
    // tangent slope at a point of order != 2
    lambda = (3 * x1 * x1 + c.a()) / (2 * y1);
  } else {
    lambda = (y2 - y1) / (x2 - x1);
  }
  Rat x3 = lambda * lambda - x1 - x2;
  Rat y3 = lambda * (x1 - x3) - y1;
  return RationalPoint(x3, y3);
}

RationalPoint scalar_mul(const Curve& c, const Int& k,
                         const RationalPoint& p) {
  if (k == 0 || p.is_infinity()) return RationalPoint::infinity();
  Int m = abs(k);
  RationalPoint base = k < 0 ? neg(c, p) : p;
  RationalPoint acc = RationalPoint::infinity();
  // left-to-right double-and-add over the bits of |k|
  for (long i = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2)) - 1;
       i >= 0; --i) {
    acc = add(c, acc, acc);
    if (mpz_tstbit(m.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      acc = add(c, acc, base);
    }
  }
  return acc;
}

std::optional<unsigned> torsion_order(const Curve& c, const RationalPoint& p) {
  if (p.is_infinity()) return 1u;
  RationalPoint r = p;
  for (unsigned k = 1; k <= 12; ++k) {
    if (r.is_infinity()) return k;
    r = add(c, r, p);
  }
  return std::nullopt;
}

int real_components(const Curve& c) { return c.disc() > 0 ? 2 : 1; }

ProjectiveTriple primitive_triple(const RationalPoint& p) {
  if (p.is_infinity()) return {0, 1, 0};
  Int dx = p.x().get_den(), dy = p.y().get_den();
  Int L;
  mpz_lcm(L.get_mpz_t(), dx.get_mpz_t(), dy.get_mpz_t());
  Int X = p.x().get_num() * (L / dx);
  Int Y = p.y().get_num() * (L / dy);
  Int Z = L;
  Int g;
  mpz_gcd(g.get_mpz_t(), X.get_mpz_t(), Y.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Z.get_mpz_t());
  return {X / g, Y / g, Z / g};
}

PunctureSet PunctureSet::create(const Curve& c,
                                std::vector<RationalPoint> pts) {
  if (pts.empty()) {
    throw std::invalid_argument("puncture set must be non-empty");
  }
  PunctureSet m;
  m.points = std::move(pts);
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    for (std::size_t j = i + 1; j < m.points.size(); ++j) {
      if (m.points[i] == m.points[j]) {
        throw std::invalid_argument("puncture points must be distinct");
      }
    }
  }
  Int n = 1;
  for (const auto& p : m.points) {
    if (!on_curve(c, p)) {
      throw std::invalid_argument("puncture point not on the curve");
    }
    auto ord = torsion_order(c, p);
    if (!ord) throw NotTorsion("puncture point has infinite order");
    m.orders.push_back(*ord);
    mpz_lcm_ui(n.get_mpz_t(), n.get_mpz_t(), *ord);
  }
  m.n = n.get_ui();
  return m;
}

}  // namespace saw
