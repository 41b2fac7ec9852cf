#pragma once

#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace chillag {

using PrimeSet = std::set<int>;

/// Distinct prime divisors in increasing order.
inline std::vector<int> prime_divisors(std::int64_t n) {
  std::vector<int> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(static_cast<int>(p));
      while (n % p == 0)
        n /= p;
    }
  }
  if (n > 1)
    out.push_back(static_cast<int>(n));
  return out;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2)
    return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0)
      return false;
  return true;
}

/// True iff every prime factor of n lies in pi (1 is a pi-number for any pi).
inline bool is_pi_number(std::int64_t n, const PrimeSet &pi) {
  for (int p : prime_divisors(n))
    if (!pi.contains(p))
      return false;
  return true;
}

/// Largest divisor of n whose prime factors all lie in pi.
inline std::int64_t pi_part(std::int64_t n, const PrimeSet &pi) {
  std::int64_t part = 1;
  for (int p : pi)
    while (p > 1 && n % p == 0) {
      n /= p;
      part *= p;
    }
  return part;
}

/// Primes of |G| outside pi.
inline PrimeSet complement_primes(std::int64_t order, const PrimeSet &pi) {
  PrimeSet out;
  for (int p : prime_divisors(order))
    if (!pi.contains(p))
      out.insert(p);
  return out;
}

inline std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base %= mod;
  if (base < 0)
    base += mod;
  while (exp > 0) {
    if (exp & 1)
      result = static_cast<std::int64_t>((__int128)result * base % mod);
    base = static_cast<std::int64_t>((__int128)base * base % mod);
    exp >>= 1;
  }
  return result;
}

/// Inverse modulo a prime via Fermat.
inline std::int64_t mod_inv(std::int64_t a, std::int64_t prime) {
  a %= prime;
  if (a < 0)
    a += prime;
  return mod_pow(a, prime - 2, prime);
}

/// Inverse modulo an arbitrary modulus (a coprime to m).
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, r = ((a % m) + m) % m;
  while (r != 0) {
    std::int64_t q = g / r;
    std::int64_t t = g - q * r;
    g = r;
    r = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  return ((x % m) + m) % m;
}

} // namespace chillag
