#include "artin/polyfp.hpp"

#include <algorithm>
#include <map>

namespace artin::polyfp {

using arith::mulmod;
using arith::u128;

namespace {

void require_same_modulus(const PolyFp& a, const PolyFp& b) {
  if (a.p != b.p) throw MathError("polynomial operands have mixed moduli");
}

// xorshift-style deterministic generator; self-contained so that factor_full
// is reproducible across standard libraries.
struct SplitMix64 {
  u64 s;
  explicit SplitMix64(u64 seed) : s(seed) {}
  u64 next() {
    u64 z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  u64 below(u64 bound) { return next() % bound; }
};

}  // namespace

PolyFp add(const PolyFp& a, const PolyFp& b) {
  require_same_modulus(a, b);
  std::vector<u64> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    u64 v = 0;
    if (i < a.c.size()) v = a.c[i];
    if (i < b.c.size()) v = arith::addmod(v, b.c[i], a.p);
    c[i] = v;
  }
  return PolyFp(a.p, std::move(c));
}

PolyFp sub(const PolyFp& a, const PolyFp& b) {
  require_same_modulus(a, b);
  std::vector<u64> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    u64 va = i < a.c.size() ? a.c[i] : 0;
    u64 vb = i < b.c.size() ? b.c[i] : 0;
    c[i] = va >= vb ? va - vb : va + a.p - vb;
  }
  return PolyFp(a.p, std::move(c));
}

PolyFp mul(const PolyFp& a, const PolyFp& b) {
  require_same_modulus(a, b);
  if (a.is_zero() || b.is_zero()) return PolyFp::zero(a.p);
  std::vector<u64> c(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      c[i + j] = (u64)(((u128)a.c[i] * b.c[j] + c[i + j]) % a.p);
    }
  }
  return PolyFp(a.p, std::move(c));
}

PolyFp scale(const PolyFp& a, u64 k) {
  PolyFp r = a;
  k %= a.p;
  for (auto& v : r.c) v = mulmod(v, k, a.p);
  r.normalize();
  return r;
}

void divmod(const PolyFp& a, const PolyFp& b, PolyFp& q, PolyFp& r) {
  require_same_modulus(a, b);
  if (b.is_zero()) throw MathError("polynomial division by zero");
  const u64 p = a.p;
  q = PolyFp::zero(p);
  r = a;
  if (a.degree() < b.degree()) return;
  const u64 lead_inv = arith::invmod(b.lead(), p);
  std::vector<u64> qc(a.degree() - b.degree() + 1, 0);
  std::vector<u64> rc = r.c;
  for (int k = (int)qc.size() - 1; k >= 0; --k) {
    std::size_t top = k + b.c.size() - 1;
    if (top >= rc.size() || rc[top] == 0) continue;
    u64 f = mulmod(rc[top], lead_inv, p);
    qc[k] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i) {
      u64 t = mulmod(f, b.c[i], p);
      u64& dst = rc[k + i];
      dst = dst >= t ? dst - t : dst + p - t;
    }
  }
  q = PolyFp(p, std::move(qc));
  r = PolyFp(p, std::move(rc));
}

PolyFp rem(const PolyFp& a, const PolyFp& b) {
  PolyFp q, r;
  divmod(a, b, q, r);
  return r;
}

PolyFp make_monic(const PolyFp& a) {
  if (a.is_zero() || a.lead() == 1) return a;
  return scale(a, arith::invmod(a.lead(), a.p));
}

PolyFp gcd(const PolyFp& a, const PolyFp& b) {
  require_same_modulus(a, b);
  PolyFp x = a, y = b;
  while (!y.is_zero()) {
    PolyFp r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

PolyFp derivative(const PolyFp& a) {
  if (a.degree() < 1) return PolyFp::zero(a.p);
  std::vector<u64> c(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i)
    c[i - 1] = mulmod(a.c[i], i % a.p, a.p);
  return PolyFp(a.p, std::move(c));
}

PolyFp powmod(const PolyFp& base, u64 e, const PolyFp& modulus) {
  if (modulus.degree() < 1)
    throw MathError("powmod: modulus must have degree >= 1");
  PolyFp r = PolyFp::one(base.p);
  PolyFp b = rem(base, modulus);
  while (e) {
    if (e & 1) r = rem(mul(r, b), modulus);
    e >>= 1;
    if (e) b = rem(mul(b, b), modulus);
  }
  return r;
}

PolyFp powmod(const PolyFp& base, const Int& e, const PolyFp& modulus) {
  if (e < 0) throw MathError("powmod: negative exponent");
  if (modulus.degree() < 1)
    throw MathError("powmod: modulus must have degree >= 1");
  PolyFp r = PolyFp::one(base.p);
  PolyFp b = rem(base, modulus);
  Int k = e;
  while (k > 0) {
    if (boost::multiprecision::bit_test(k, 0)) r = rem(mul(r, b), modulus);
    k >>= 1;
    if (k > 0) b = rem(mul(b, b), modulus);
  }
  return r;
}

u64 eval(const PolyFp& a, u64 x) {
  u64 r = 0;
  x %= a.p;
  for (std::size_t i = a.c.size(); i-- > 0;)
    r = (u64)(((u128)r * x + a.c[i]) % a.p);
  return r;
}

namespace {

// f(x) = g(x^p) -> g; valid when f' = 0 in characteristic p
PolyFp pth_root(const PolyFp& f) {
  const u64 p = f.p;
  std::vector<u64> c((f.c.size() + p - 1) / p, 0);
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    if (i % p != 0) throw InternalError("pth_root: polynomial is not a p-th power");
    c[i / p] = f.c[i];  // a^p = a in F_p
  }
  return PolyFp(p, std::move(c));
}

// monic f -> list of (monic squarefree part, multiplicity)
void squarefree_decompose(const PolyFp& f,
                          std::vector<std::pair<PolyFp, int>>& out,
                          int outer_mult) {
  const u64 p = f.p;
  if (f.degree() < 1) return;
  PolyFp fd = derivative(f);
  if (fd.is_zero()) {
    squarefree_decompose(make_monic(pth_root(f)), out, outer_mult * (int)p);
    return;
  }
  PolyFp c = gcd(f, fd);
  PolyFp q, w;
  divmod(f, c, w, q);  // w = f / c
  int i = 1;
  while (w.degree() > 0) {
    PolyFp y = gcd(w, c);
    PolyFp z, dummy;
    divmod(w, y, z, dummy);  // z = w / y
    if (z.degree() > 0) out.emplace_back(make_monic(z), i * outer_mult);
    PolyFp cnew;
    divmod(c, y, cnew, dummy);
    c = std::move(cnew);
    w = std::move(y);
    ++i;
  }
  if (c.degree() > 0)
    squarefree_decompose(make_monic(pth_root(c)), out, outer_mult * (int)p);
}

// distinct-degree split of a monic squarefree f: list of (product, degree)
std::vector<std::pair<PolyFp, int>> distinct_degree(const PolyFp& f) {
  const u64 p = f.p;
  std::vector<std::pair<PolyFp, int>> out;
  PolyFp fstar = f;
  PolyFp h = rem(PolyFp::x(p), fstar);
  for (int d = 1; fstar.degree() >= 2 * d; ++d) {
    h = powmod(h, p, fstar);
    PolyFp g = gcd(sub(h, PolyFp::x(p)), fstar);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      PolyFp q, r;
      divmod(fstar, g, q, r);
      fstar = std::move(q);
      h = rem(h, fstar);
    }
  }
  if (fstar.degree() > 0) out.emplace_back(fstar, fstar.degree());
  return out;
}

PolyFp random_poly_below(int max_deg, u64 p, SplitMix64& rng) {
  std::vector<u64> c(max_deg, 0);
  for (auto& v : c) v = rng.below(p);
  return PolyFp(p, std::move(c));
}

// Cantor-Zassenhaus equal-degree splitting of a monic product of distinct
// irreducibles of common degree d.
void equal_degree(const PolyFp& f, int d, SplitMix64& rng,
                  std::vector<PolyFp>& out) {
  if (f.degree() == d) {
    out.push_back(make_monic(f));
    return;
  }
  const u64 p = f.p;
  while (true) {
    PolyFp r = random_poly_below(f.degree(), p, rng);
    if (r.degree() < 1) continue;
    PolyFp g;
    if (p == 2) {
      // trace map over F_{2^d}
      PolyFp t = rem(r, f);
      PolyFp acc = t;
      for (int i = 1; i < d; ++i) {
        t = powmod(t, (u64)2, f);
        acc = add(acc, t);
      }
      g = gcd(acc, f);
    } else {
      Int exp = (int_pow(Int(p), (unsigned)d) - 1) / 2;
      PolyFp s = powmod(r, exp, f);
      g = gcd(sub(s, PolyFp::one(p)), f);
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      PolyFp q, rr;
      divmod(f, g, q, rr);
      equal_degree(g, d, rng, out);
      equal_degree(make_monic(q), d, rng, out);
      return;
    }
  }
}

}  // namespace

DegreePattern factor_degree_pattern(const PolyFp& f) {
  if (f.degree() < 1) throw MathError("factor_degree_pattern: constant input");
  std::vector<std::pair<PolyFp, int>> sqf;
  squarefree_decompose(make_monic(f), sqf, 1);
  std::map<int, int> counts;
  bool squarefree = true;
  for (const auto& [part, mult] : sqf) {
    if (mult > 1) squarefree = false;
    for (const auto& [prod, d] : distinct_degree(part))
      counts[d] += (prod.degree() / d) * mult;
  }
  DegreePattern pat;
  pat.squarefree = squarefree;
  for (const auto& [d, c] : counts) pat.entries.emplace_back(d, c);
  return pat;
}

std::vector<std::pair<PolyFp, int>> factor_full(const PolyFp& f, u64 rng_seed) {
  if (f.degree() < 1) throw MathError("factor_full: constant input");
  SplitMix64 rng(rng_seed ^ 0xa02bdbf7bb3c0a7ULL);
  std::vector<std::pair<PolyFp, int>> sqf;
  squarefree_decompose(make_monic(f), sqf, 1);
  std::vector<std::pair<PolyFp, int>> out;
  for (const auto& [part, mult] : sqf) {
    for (const auto& [prod, d] : distinct_degree(part)) {
      std::vector<PolyFp> irred;
      equal_degree(prod, d, rng, irred);
      for (auto& g : irred) out.emplace_back(std::move(g), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  return out;
}

bool is_irreducible(const PolyFp& g) {
  if (g.degree() < 1) return false;
  if (g.degree() == 1) return true;
  const u64 p = g.p;
  const int d = g.degree();
  // x^{p^d} must fix x
  PolyFp h = rem(PolyFp::x(p), g);
  for (int i = 0; i < d; ++i) h = powmod(h, p, g);
  if (h != rem(PolyFp::x(p), g)) return false;
  // and no proper subfield may absorb a factor
  auto fact = arith::factorize((u64)d);
  for (const auto& [l, e] : fact.parts) {
    int steps = d / (int)l;
    PolyFp t = rem(PolyFp::x(p), g);
    for (int i = 0; i < steps; ++i) t = powmod(t, p, g);
    if (gcd(sub(t, PolyFp::x(p)), g).degree() != 0) return false;
  }
  return true;
}

}  // namespace artin::polyfp
