// Exact 64-bit integer arithmetic: primes, factorization, multiplicative
// orders in (Z/n)^x. Everything here is deterministic and safe to call
// concurrently; the FactorCache supports concurrent reads plus serialized
// merges (census workers keep a local scratch cache chained to a shared
// read-only parent and merge after the parallel phase).
#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "artin/errors.hpp"

namespace artin::arith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 n) {
  return static_cast<u64>((u128)a * b % n);
}

inline u64 addmod(u64 a, u64 b, u64 n) {
  u64 r = a + b;
  if (r >= n || r < a) r -= n;
  return r;
}

u64 powmod(u64 a, u64 e, u64 n);
u64 gcd_u64(u64 a, u64 b);

// inverse of a mod n, gcd(a, n) must be 1
u64 invmod(u64 a, u64 n);

// Deterministic for the whole uint64 range (fixed Miller-Rabin base set).
bool is_prime(u64 n);

// All primes in [2, limit], ascending. Throws ResourceError above the
// configured budget (the artifact does not target sieves beyond ~1e8).
inline constexpr u64 kSieveLimitMax = 400'000'000;
std::vector<u64> sieve_primes(u64 limit);

struct Factorization {
  u64 value = 1;
  std::vector<std::pair<u64, int>> parts;  // (prime, exponent), primes ascending

  bool check_invariants() const;  // product identity + per-part primality
};

class FactorCache {
 public:
  FactorCache() = default;
  explicit FactorCache(const FactorCache* parent) : parent_(parent) {}

  // Read-through lookup: local entries first, then the parent chain.
  const Factorization* find(u64 n) const;
  void put(const Factorization& f);
  // Union with consistency check; conflicting duplicate -> CacheIntegrityError.
  void merge(const FactorCache& other);

  const std::map<u64, Factorization>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  const FactorCache* parent_ = nullptr;
  std::map<u64, Factorization> entries_;
};

// Trial division by a small prime table, then Brent's cycle-finding rho with
// deterministic primality testing on the cofactors. Terminates for every
// n in [1, 2^63]. n = 1 yields the empty product. When a cache is supplied,
// the result is looked up first and stored on a miss.
Factorization factorize(u64 n, FactorCache* cache = nullptr);

// Least k >= 1 with a^k = 1 (mod n), found by dividing prime factors out of
// the factored group exponent (never a linear scan). Requires gcd(a, n) = 1
// (MathError otherwise) and a^E = 1 mod n for E = group_exponent.value
// (InternalError otherwise; the caller promised E annihilates a).
u64 multiplicative_order(i64 a, u64 n, const Factorization& group_exponent);

}  // namespace artin::arith
