#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace saw {

using Int = mpz_class;
using Rat = mpq_class;

namespace num {

// Deterministic Miller-Rabin over the fixed base set
// {2,3,5,7,11,13,17,19,23,29,31,37}, correct for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Deterministic for inputs fitting 64 bits; mpz_probab_prime_p(50) beyond.
bool is_prime(const Int& n);

// Factorization of |n| into (prime, exponent) pairs, primes ascending.
// Trial division by a small sieve, then Brent's rho. n must be nonzero.
std::vector<std::pair<Int, unsigned>> factor(const Int& n);

// Distinct prime divisors of |n|, ascending. n must be nonzero.
std::vector<Int> prime_divisors(const Int& n);

// Largest k with p^k | value. value must be nonzero, p >= 2.
unsigned long valuation(const Int& value, const Int& p);

// Ascending primes <= limit.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

// p^k as an Int.
Int pow_ui(const Int& p, unsigned long k);

}  // namespace num
}  // namespace saw
