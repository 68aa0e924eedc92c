// Univariate polynomial arithmetic and factorization over prime fields F_p.
// Coefficients are stored constant term first with no trailing zeros; the
// zero polynomial is the empty list. All functions are pure.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "artin/arith.hpp"
#include "artin/rational.hpp"

namespace artin::polyfp {

using arith::u64;

struct PolyFp {
  u64 p = 0;                // prime modulus
  std::vector<u64> c;       // constant term first

  PolyFp() = default;
  PolyFp(u64 modulus, std::vector<u64> coeffs) : p(modulus), c(std::move(coeffs)) {
    normalize();
  }

  static PolyFp zero(u64 p) { return PolyFp(p, {}); }
  static PolyFp one(u64 p) { return PolyFp(p, {1}); }
  static PolyFp x(u64 p) { return PolyFp(p, {0, 1}); }
  static PolyFp constant(u64 p, u64 v) { return PolyFp(p, {v % p}); }

  int degree() const { return (int)c.size() - 1; }  // zero poly: -1
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  u64 lead() const { return c.back(); }

  void normalize() {
    for (auto& v : c) v %= p;
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  friend bool operator==(const PolyFp& a, const PolyFp& b) {
    return a.p == b.p && a.c == b.c;
  }
  friend bool operator!=(const PolyFp& a, const PolyFp& b) { return !(a == b); }
  // modulus-first, then degree, then lexicographic on coefficients
  friend bool operator<(const PolyFp& a, const PolyFp& b) {
    if (a.p != b.p) return a.p < b.p;
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
    for (std::size_t i = a.c.size(); i-- > 0;)
      if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
  }
};

PolyFp add(const PolyFp& a, const PolyFp& b);
PolyFp sub(const PolyFp& a, const PolyFp& b);
PolyFp mul(const PolyFp& a, const PolyFp& b);
PolyFp scale(const PolyFp& a, u64 k);
void divmod(const PolyFp& a, const PolyFp& b, PolyFp& q, PolyFp& r);
PolyFp rem(const PolyFp& a, const PolyFp& b);
PolyFp make_monic(const PolyFp& a);
PolyFp gcd(const PolyFp& a, const PolyFp& b);  // monic (or zero)
PolyFp derivative(const PolyFp& a);

// base^e mod modulus, square-and-multiply with intermediate reduction.
PolyFp powmod(const PolyFp& base, u64 e, const PolyFp& modulus);
PolyFp powmod(const PolyFp& base, const Int& e, const PolyFp& modulus);

u64 eval(const PolyFp& a, u64 x);

// Multiset of factor degrees, counted with multiplicity; squarefree is false
// iff the polynomial has a repeated factor.
struct DegreePattern {
  std::vector<std::pair<int, int>> entries;  // (degree, count), degree ascending
  bool squarefree = true;

  int total_degree() const {
    int s = 0;
    for (auto& [d, c] : entries) s += d * c;
    return s;
  }
  friend bool operator==(const DegreePattern& a, const DegreePattern& b) {
    return a.entries == b.entries && a.squarefree == b.squarefree;
  }
  friend bool operator!=(const DegreePattern& a, const DegreePattern& b) {
    return !(a == b);
  }
};

// Squarefree decomposition followed by distinct-degree splitting; no
// equal-degree splitting is performed (and no randomness is needed).
DegreePattern factor_degree_pattern(const PolyFp& f);

// Full factorization into monic irreducibles with multiplicities. The output
// is canonically sorted (degree, then lexicographic), so it is independent of
// the seed; the seed drives the randomized equal-degree splitting internally.
std::vector<std::pair<PolyFp, int>> factor_full(const PolyFp& f, u64 rng_seed);

// (f, f^p, f^{p^2}, ...)-style irreducibility test, used by property tests
// and the integer-polynomial certification: g of degree d >= 1 is irreducible
// iff x^{p^d} = x (mod g) and gcd(x^{p^{d/l}} - x, g) = 1 for primes l | d.
bool is_irreducible(const PolyFp& g);

}  // namespace artin::polyfp
