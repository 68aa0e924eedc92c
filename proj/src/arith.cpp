#include "artin/arith.hpp"

#include <algorithm>
#include <string>

namespace artin::arith {

u64 powmod(u64 a, u64 e, u64 n) {
  if (n == 1) return 0;
  u64 r = 1;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 invmod(u64 a, u64 n) {
  // extended Euclid on signed 128-bit intermediates
  i64 t = 0, newt = 1;
  u64 r = n, newr = a % n;
  while (newr != 0) {
    u64 q = r / newr;
    i64 tmp = t - (i64)q * newt;
    t = newt;
    newt = tmp;
    u64 tmpr = r - q * newr;
    r = newr;
    newr = tmpr;
  }
  if (r != 1) throw MathError("invmod: arguments not coprime");
  i64 res = t % (i64)n;
  if (res < 0) res += (i64)n;
  return (u64)res;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  // Known-complete base set for the full 64-bit range.
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL,
                1795265022ULL}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<u64> sieve_primes(u64 limit) {
  if (limit > kSieveLimitMax)
    throw ResourceError("sieve_primes: limit " + std::to_string(limit) +
                        " exceeds budget " + std::to_string(kSieveLimitMax));
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 p = 2; p * p <= limit; ++p) {
    if (composite[p]) continue;
    for (u64 m = p * p; m <= limit; m += p) composite[m] = true;
  }
  for (u64 p = 2; p <= limit; ++p)
    if (!composite[p]) primes.push_back(p);
  return primes;
}

bool Factorization::check_invariants() const {
  u128 prod = 1;
  u64 last = 0;
  for (const auto& [p, e] : parts) {
    if (p <= last || e <= 0 || !is_prime(p)) return false;
    last = p;
    for (int i = 0; i < e; ++i) {
      prod *= p;
      if (prod > (u128)UINT64_MAX) return false;
    }
  }
  return prod == value;
}

const Factorization* FactorCache::find(u64 n) const {
  auto it = entries_.find(n);
  if (it != entries_.end()) return &it->second;
  return parent_ ? parent_->find(n) : nullptr;
}

void FactorCache::put(const Factorization& f) {
  entries_.emplace(f.value, f);
}

void FactorCache::merge(const FactorCache& other) {
  for (const auto& [n, f] : other.entries_) {
    auto it = entries_.find(n);
    if (it == entries_.end()) {
      entries_.emplace(n, f);
    } else if (it->second.parts != f.parts) {
      throw CacheIntegrityError("factor cache merge: conflicting entries for " +
                                std::to_string(n));
    }
  }
}

namespace {

const std::vector<u64>& small_prime_table() {
  static const std::vector<u64> table = sieve_primes(4096);
  return table;
}

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
u64 brent_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const u64 m = 128;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = addmod(mulmod(y, y, n), c, n);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = addmod(mulmod(y, y, n), c, n);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u64(q, n);
        k += m;
      }
      r <<= 1;
    }
    if (g == n) {
      // backtrack one squaring at a time
      do {
        ys = addmod(mulmod(ys, ys, n), c, n);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
    // rare degenerate polynomial choice: retry with the next c
  }
}

void factor_recursive(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  u64 d = brent_rho(n);
  factor_recursive(d, out);
  factor_recursive(n / d, out);
}

}  // namespace

Factorization factorize(u64 n, FactorCache* cache) {
  if (n == 0) throw MathError("factorize: n must be positive");
  if (cache) {
    if (const Factorization* hit = cache->find(n)) return *hit;
  }
  Factorization result;
  result.value = n;
  u64 m = n;
  for (u64 p : small_prime_table()) {
    if (p * p > m) break;
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      result.parts.emplace_back(p, e);
    }
  }
  if (m > 1) {
    if (m <= 4096ULL * 4096ULL || is_prime(m)) {
      // no factor below 4096 survived, so m <= 4096^2 is prime
      result.parts.emplace_back(m, 1);
    } else {
      std::map<u64, int> rest;
      factor_recursive(m, rest);
      for (const auto& [p, e] : rest) result.parts.emplace_back(p, e);
    }
  }
  std::sort(result.parts.begin(), result.parts.end());
  if (cache) cache->put(result);
  return result;
}

u64 multiplicative_order(i64 a, u64 n, const Factorization& group_exponent) {
  if (n == 0) throw MathError("multiplicative_order: modulus must be positive");
  u64 r = (u64)(((a % (i64)n) + (i64)n) % (i64)n);
  if (n == 1) return 1;
  if (gcd_u64(r, n) != 1)
    throw MathError("multiplicative_order: base not coprime to modulus");
  const u64 E = group_exponent.value;
  if (powmod(r, E, n) != 1)
    throw InternalError(
        "multiplicative_order: supplied exponent does not annihilate the base");
  u64 ord = E;
  for (const auto& [q, e] : group_exponent.parts) {
    for (int i = 0; i < e; ++i) {
      if (powmod(r, ord / q, n) == 1)
        ord /= q;
      else
        break;
    }
  }
  return ord;
}

}  // namespace artin::arith
