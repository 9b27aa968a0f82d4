#include "saw/numeric.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace saw::num {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// one strong-probable-prime round; n odd, n-1 = d * 2^s
bool sprp(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 rho_step(u64 x, u64 c, u64 n) {
  u64 y = mulmod(x, x, n) + c;
  return y >= n ? y - n : y;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Brent's cycle-finding variant of Pollard's rho; n odd composite, not a
// prime power of a sieved prime. Deterministic: c walks 1,2,3,...
u64 rho_factor(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    u64 power = 1, lam = 1;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power *= 2;
        lam = 0;
      }
      y = rho_step(y, c, n);
      ++lam;
      u64 diff = x > y ? x - y : y - x;
      d = diff ? gcd_u64(diff, n) : n;
    }
    if (d != n) return d;
  }
}

void factor_u64_into(u64 n, std::map<Int, unsigned>& out) {
  if (n <= 1) return;
  if (is_prime_u64(n)) {
    out[Int(static_cast<unsigned long>(n))] += 1;
    return;
  }
  u64 d = rho_factor(n);
  factor_u64_into(d, out);
  factor_u64_into(n / d, out);
}

void factor_mpz_into(Int n, std::map<Int, unsigned>& out) {
  if (n <= 1) return;
  if (n.fits_ulong_p()) {
    factor_u64_into(n.get_ui(), out);
    return;
  }
  if (mpz_probab_prime_p(n.get_mpz_t(), 50) > 0) {
    out[n] += 1;
    return;
  }
  // Floyd rho with mpz arithmetic; only reached for composites past 64 bits.
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Int diff = abs(x - y);
      if (diff == 0) {
        d = n;
      } else {
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (d != n) {
      factor_mpz_into(d, out);
      factor_mpz_into(n / d, out);
      return;
    }
  }
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (!sprp(n, a, d, s)) return false;
  }
  return true;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 50) > 0;
}

std::vector<std::pair<Int, unsigned>> factor(const Int& n) {
  if (n == 0) throw std::invalid_argument("factor: zero has no factorization");
  Int m = abs(n);
  std::map<Int, unsigned> acc;
  static const std::vector<std::uint32_t> small = primes_up_to(100000);
  for (std::uint32_t p : small) {
    if (Int(p) * p > m) break;
    while (m % p == 0) {
      acc[Int(p)] += 1;
      m /= p;
    }
  }
  factor_mpz_into(m, acc);
  return {acc.begin(), acc.end()};
}

std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> out;
  for (const auto& [p, e] : factor(n)) out.push_back(p);
  return out;
}

unsigned long valuation(const Int& value, const Int& p) {
  if (value == 0) throw std::invalid_argument("valuation: zero input");
  if (p < 2) throw std::invalid_argument("valuation: base must be >= 2");
  Int v = abs(value);
  unsigned long k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> sieve(static_cast<std::size_t>(limit) + 1, true);
  sieve[0] = sieve[1] = false;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!sieve[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) sieve[j] = false;
  }
  return out;
}

Int pow_ui(const Int& p, unsigned long k) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), k);
  return r;
}

}  // namespace saw::num
