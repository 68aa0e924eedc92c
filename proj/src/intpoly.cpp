#include "artin/intpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>

namespace artin::intpoly {

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const ZPoly& f) { return (int)f.size() - 1; }

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

ZPoly derivative(const ZPoly& f) {
  if (f.size() <= 1) return {};
  ZPoly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * (int)i;
  trim(d);
  return d;
}

Int eval(const ZPoly& f, const Int& x) {
  Int r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

Int content(const ZPoly& f) {
  Int g = 0;
  for (const Int& c : f) g = int_gcd(g, c < 0 ? Int(-c) : c);
  return g;
}

bool is_monic(const ZPoly& f) { return !f.empty() && f.back() == 1; }

ZPoly rem_by_monic(const ZPoly& a, const ZPoly& b) {
  if (!is_monic(b)) throw InternalError("rem_by_monic: divisor not monic");
  ZPoly r = a;
  trim(r);
  while (r.size() >= b.size()) {
    Int f = r.back();
    std::size_t off = r.size() - b.size();
    for (std::size_t i = 0; i + 1 < b.size(); ++i) r[off + i] -= f * b[i];
    r.pop_back();  // leading term cancels exactly against monic b
    trim(r);
  }
  return r;
}

ZPoly div_exact(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) throw InternalError("div_exact: division by zero");
  ZPoly r = a, q;
  trim(r);
  if (r.empty()) return {};
  if (r.size() < b.size()) throw InternalError("div_exact: not divisible");
  q.assign(r.size() - b.size() + 1, Int(0));
  for (int k = (int)q.size() - 1; k >= 0; --k) {
    std::size_t top = k + b.size() - 1;
    Int cur = top < r.size() ? r[top] : Int(0);
    if (cur == 0) continue;
    if (cur % b.back() != 0) throw InternalError("div_exact: not divisible");
    Int f = cur / b.back();
    q[k] = f;
    for (std::size_t i = 0; i < b.size(); ++i) r[k + i] -= f * b[i];
  }
  trim(r);
  if (!r.empty()) throw InternalError("div_exact: nonzero remainder");
  trim(q);
  return q;
}

polyfp::PolyFp reduce_mod_p(const ZPoly& f, u64 p) {
  std::vector<u64> c(f.size());
  Int m = p;
  for (std::size_t i = 0; i < f.size(); ++i) {
    Int v = f[i] % m;
    if (v < 0) v += m;
    c[i] = v.convert_to<u64>();
  }
  return polyfp::PolyFp(p, std::move(c));
}

namespace {

// Bareiss fraction-free determinant; exact over Z.
Int bareiss_det(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

Int resultant(const ZPoly& f_in, const ZPoly& g_in) {
  ZPoly f = f_in, g = g_in;
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return 0;
  const int m = degree(f), n = degree(g);
  if (m == 0 && n == 0) return 1;
  if (n == 0) return int_pow(g[0], (unsigned)m);
  if (m == 0) return int_pow(f[0], (unsigned)n);
  // Sylvester matrix: n rows of f followed by m rows of g, highest degree first.
  const std::size_t dim = (std::size_t)(m + n);
  std::vector<std::vector<Int>> s(dim, std::vector<Int>(dim, Int(0)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
  return bareiss_det(std::move(s));
}

Int poly_disc(const ZPoly& f_in) {
  ZPoly f = f_in;
  trim(f);
  const int n = degree(f);
  if (n < 1) throw MathError("poly_disc: constant polynomial");
  if (!is_monic(f)) throw MathError("poly_disc: polynomial must be monic");
  if (n == 1) return 1;
  Int r = resultant(f, derivative(f));
  return (n % 4 == 2 || n % 4 == 3) ? -r : r;  // (-1)^{n(n-1)/2}
}

// --- Q[x] ---

void trim(QPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

int degree(const QPoly& f) { return (int)f.size() - 1; }

QPoly q_add(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] += b[i];
  }
  trim(c);
  return c;
}

QPoly q_sub(const QPoly& a, const QPoly& b) {
  QPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] -= b[i];
  }
  trim(c);
  return c;
}

QPoly q_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

QPoly q_scale(const QPoly& a, const Rat& k) {
  QPoly c = a;
  for (auto& v : c) v *= k;
  trim(c);
  return c;
}

void q_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.empty()) throw MathError("polynomial division by zero");
  r = a;
  trim(r);
  q.clear();
  if ((int)r.size() < (int)b.size()) return;
  q.assign(r.size() - b.size() + 1, Rat(0));
  const Rat lead = b.back();
  for (int k = (int)q.size() - 1; k >= 0; --k) {
    std::size_t top = k + b.size() - 1;
    if (top >= r.size() || r[top].is_zero()) continue;
    Rat f = r[top] / lead;
    q[k] = f;
    for (std::size_t i = 0; i < b.size(); ++i) r[k + i] -= f * b[i];
  }
  trim(q);
  trim(r);
}

QPoly q_make_monic(const QPoly& f) {
  if (f.empty()) return f;
  return q_scale(f, Rat(1) / f.back());
}

QPoly q_gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    QPoly q, r;
    q_divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return q_make_monic(x);
}

QPoly q_derivative(const QPoly& f) {
  if (f.size() <= 1) return {};
  QPoly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * Rat((long long)i);
  trim(d);
  return d;
}

QPoly q_from_z(const ZPoly& f) {
  QPoly q(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) q[i] = Rat(f[i]);
  return q;
}

bool q_is_integral(const QPoly& f) {
  for (const Rat& c : f)
    if (!c.is_integer()) return false;
  return true;
}

ZPoly z_from_q(const QPoly& f) {
  ZPoly z(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].is_integer()) throw InternalError("z_from_q: non-integer coefficient");
    z[i] = f[i].num;
  }
  return z;
}

QPoly q_squarefree_part(const QPoly& f) {
  QPoly g = q_gcd(f, q_derivative(f));
  if (degree(g) <= 0) return q_make_monic(f);
  QPoly q, r;
  q_divmod(f, g, q, r);
  if (!r.empty()) throw InternalError("q_squarefree_part: gcd does not divide");
  return q_make_monic(q);
}

int q_max_multiplicity(const QPoly& f) {
  QPoly cur = q_make_monic(f);
  int mult = 0;
  while (degree(cur) > 0) {
    cur = q_gcd(cur, q_derivative(cur));
    ++mult;
  }
  return mult;
}

Int q_den_lcm(const QPoly& f) {
  Int d = 1;
  for (const Rat& c : f) d = int_lcm(d, c.den);
  return d;
}

std::pair<ZPoly, Int> monic_integer_rescale(const QPoly& m_in) {
  QPoly m = q_make_monic(m_in);
  const int n = degree(m);
  if (n < 1) throw MathError("monic_integer_rescale: constant polynomial");
  Int d = q_den_lcm(m);
  ZPoly g(m.size());
  // G_i = m_i * d^{n-i}
  for (int i = 0; i <= n; ++i) {
    Rat scaled = m[i] * Rat(int_pow(d, (unsigned)(n - i)));
    if (!scaled.is_integer())
      throw InternalError("monic_integer_rescale: scaling failed");
    g[i] = scaled.num;
  }
  return {g, d};
}

Rat q_resultant(const QPoly& f, const QPoly& g) {
  QPoly a = f, b = g;
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return Rat(0);
  Int da = q_den_lcm(a), db = q_den_lcm(b);
  ZPoly za(a.size()), zb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) za[i] = (a[i] * Rat(da)).num;
  for (std::size_t i = 0; i < b.size(); ++i) zb[i] = (b[i] * Rat(db)).num;
  // Res(da*f, db*g) = da^{deg g} db^{deg f} Res(f, g)
  Int r = resultant(za, zb);
  Int scale = int_pow(da, (unsigned)degree(b)) * int_pow(db, (unsigned)degree(a));
  return Rat(r, scale);
}

Rat q_poly_disc(const QPoly& f) {
  QPoly m = q_make_monic(f);
  const int n = degree(m);
  if (n < 1) throw MathError("q_poly_disc: constant polynomial");
  if (n == 1) return Rat(1);
  Rat r = q_resultant(m, q_derivative(m));
  return (n % 4 == 2 || n % 4 == 3) ? -r : r;
}

std::optional<std::vector<Rat>> DependenceFinder::feed(std::vector<Rat> v) {
  if (v.size() != dim_) throw InternalError("DependenceFinder: dimension mismatch");
  std::vector<Rat> expr(fed_ + 1, Rat(0));
  expr[fed_] = Rat(1);
  ++fed_;
  // reduce v against the basis, tracking the expression
  for (const Row& row : rows_) {
    if (v[row.pivot].is_zero()) continue;
    Rat f = v[row.pivot];
    for (std::size_t i = 0; i < dim_; ++i) v[i] -= f * row.vec[i];
    for (std::size_t i = 0; i < row.expr.size(); ++i) expr[i] -= f * row.expr[i];
  }
  std::size_t pivot = dim_;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!v[i].is_zero()) {
      pivot = i;
      break;
    }
  }
  if (pivot == dim_) {
    // dependent: expr gives sum expr_i * (fed vector i) = 0 with expr_last = 1
    return expr;
  }
  Rat inv = Rat(1) / v[pivot];
  for (auto& x : v) x *= inv;
  for (auto& x : expr) x *= inv;
  rows_.push_back(Row{std::move(v), std::move(expr), pivot});
  return std::nullopt;
}

namespace {

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

ZPoly cyclotomic(unsigned n) {
  if (n == 0) throw MathError("cyclotomic: index must be positive");
  static std::map<unsigned, ZPoly> memo;
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  // x^n - 1
  ZPoly xn(n + 1, Int(0));
  xn[0] = -1;
  xn[n] = 1;
  ZPoly result = xn;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) result = div_exact(result, cyclotomic(d));
  }
  memo.emplace(n, result);
  return result;
}

std::optional<unsigned> cyclotomic_index(const ZPoly& f) {
  const int d = degree(f);
  if (d < 1 || !is_monic(f)) return std::nullopt;
  // phi(m) >= sqrt(m/2), so phi(m) = d forces m <= 2d^2 (+ slack for tiny m)
  const unsigned bound = 2u * (unsigned)d * (unsigned)d + 6u;
  for (unsigned m = 1; m <= bound; ++m) {
    if ((int)euler_phi(m) != d) continue;
    if (cyclotomic(m) == f) return m;
  }
  return std::nullopt;
}

namespace {

// All divisors of |n| (both signs), via 63-bit factorization. Empty when the
// value does not fit the supported factorization range.
std::vector<Int> signed_divisors(const Int& n) {
  Int a = n < 0 ? Int(-n) : n;
  if (a == 0 || a >= Int(std::numeric_limits<std::int64_t>::max())) return {};
  auto fact = arith::factorize(a.convert_to<u64>());
  std::vector<u64> divs{1};
  for (const auto& [p, e] : fact.parts) {
    std::size_t m = divs.size();
    u64 pk = 1;
    for (int i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < m; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  std::vector<Int> out;
  out.reserve(divs.size() * 2);
  for (u64 d : divs) {
    out.emplace_back(d);
    out.emplace_back(-Int(d));
  }
  return out;
}

// subset-sum reachability for one degree pattern
std::vector<bool> reachable_sums(const polyfp::DegreePattern& pat, int n) {
  std::vector<bool> reach(n + 1, false);
  reach[0] = true;
  for (const auto& [d, c] : pat.entries) {
    for (int rep = 0; rep < c; ++rep) {
      for (int s = n - d; s >= 0; --s)
        if (reach[s]) reach[s + d] = true;
    }
  }
  return reach;
}

// Landau-Mignotte style coefficient bound for a monic factor of degree a.
Int factor_coeff_bound(const ZPoly& f, int a, int i) {
  // |h_i| <= C(a-1, i) ||f||_2 + C(a-1, i-1) |lc(f)|
  auto binom = [](int n, int k) -> Int {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (int j = 0; j < k; ++j) {
      r *= (n - j);
      r /= (j + 1);
    }
    return r;
  };
  Int norm2 = 0;
  for (const Int& c : f) norm2 += c * c;
  Int norm = boost::multiprecision::sqrt(norm2) + 1;
  return binom(a - 1, i) * norm + binom(a - 1, i - 1);
}

struct FactorSearch {
  std::optional<ZPoly> witness;
  bool exhausted = false;  // the whole Mignotte box was searched factor-free
};

// Exhaustive monic-factor search within Landau-Mignotte coefficient bounds.
// Complete for the listed degrees: a monic degree-a factor must have constant
// term dividing f(0) and middle coefficients inside the bounds, so an
// exhausted search certifies that no factor of those degrees exists.
FactorSearch bounded_factor_search(const ZPoly& f,
                                   const std::vector<int>& degrees) {
  FactorSearch out;
  const Int f0 = f[0];
  std::vector<Int> const_candidates = signed_divisors(f0);
  if (const_candidates.empty()) return out;  // f(0) outside 63-bit range
  const long long kVolumeCap = 2'000'000;
  bool truncated = false;
  for (int a : degrees) {
    if (a < 2) continue;  // degree 1 already handled by the root search
    // candidate monic factor x^a + b_{a-1} x^{a-1} + ... + b_1 x + b_0,
    // b_0 | f(0), each middle coefficient within the Mignotte bound
    std::vector<Int> bounds(a);
    long long volume = (long long)const_candidates.size();
    bool too_big = false;
    for (int i = 1; i < a; ++i) {
      bounds[i] = factor_coeff_bound(f, a, i);
      Int width = 2 * bounds[i] + 1;
      if (width > kVolumeCap || (volume *= width.convert_to<long long>()) > kVolumeCap) {
        too_big = true;
        break;
      }
    }
    if (too_big) {
      truncated = true;
      continue;
    }
    std::vector<Int> b(a, Int(0));
    // odometer over middle coefficients for every constant candidate
    for (const Int& c0 : const_candidates) {
      for (int i = 1; i < a; ++i) b[i] = -bounds[i];
      while (true) {
        ZPoly h(a + 1);
        h[0] = c0;
        for (int i = 1; i < a; ++i) h[i] = b[i];
        h[a] = 1;
        if (rem_by_monic(f, h).empty()) {
          out.witness = h;
          return out;
        }
        int pos = 1;
        while (pos < a) {
          if (b[pos] < bounds[pos]) {
            b[pos] += 1;
            break;
          }
          b[pos] = -bounds[pos];
          ++pos;
        }
        if (pos == a) break;
      }
    }
  }
  out.exhausted = !truncated;
  return out;
}

}  // namespace

IrredResult certify_irreducible(const ZPoly& f_in) {
  ZPoly f = f_in;
  trim(f);
  const int n = degree(f);
  if (n < 1) throw MathError("certify_irreducible: degree must be >= 1");
  if (!is_monic(f))
    throw MathError("certify_irreducible: input must be monic (clear denominators first)");
  IrredResult res;
  if (n == 1) {
    res.status = Irred::Irreducible;
    res.detail = "degree 1";
    return res;
  }
  // rational (= integer, monic case) roots
  if (f[0] == 0) {
    res.status = Irred::Reducible;
    res.witness = {Int(0), Int(1)};  // x
    res.detail = "root 0";
    return res;
  }
  for (const Int& r : signed_divisors(f[0])) {
    if (eval(f, r) == 0) {
      res.status = Irred::Reducible;
      res.witness = {-r, Int(1)};
      res.detail = "rational root " + r.str();
      return res;
    }
  }
  if (n <= 3) {
    res.status = Irred::Irreducible;
    res.detail = "degree <= 3 with no rational root";
    return res;
  }
  // repeated factor over Q; a monic divisor of monic integer f is integer
  {
    QPoly g = q_gcd(q_from_z(f), q_from_z(derivative(f)));
    if (degree(g) > 0) {
      res.status = Irred::Reducible;
      res.witness = z_from_q(g);
      res.detail = "repeated factor";
      return res;
    }
  }
  const Int disc = poly_disc(f);
  std::vector<bool> alive(n, true);  // alive[a]: a proper factor of degree a not yet excluded
  alive[0] = false;
  int good_primes = 0;
  for (u64 p : arith::sieve_primes(10000)) {
    if (disc % Int(p) == 0) continue;
    auto pat = polyfp::factor_degree_pattern(reduce_mod_p(f, p));
    if (pat.entries.size() == 1 && pat.entries[0] == std::make_pair(n, 1)) {
      res.status = Irred::Irreducible;
      res.detail = "irreducible mod " + std::to_string(p);
      return res;
    }
    auto reach = reachable_sums(pat, n);
    for (int a = 1; a < n; ++a)
      if (!reach[a]) alive[a] = false;
    bool any_alive = false;
    for (int a = 1; a < n; ++a) any_alive |= alive[a];
    if (!any_alive) {
      res.status = Irred::Irreducible;
      res.detail = "degree patterns exclude every proper split";
      return res;
    }
    if (++good_primes >= 20) break;
  }
  // some split pattern stayed alive: exhaustive bounded factor search. Any
  // factorization has a part of degree <= n/2, so searching those degrees
  // is complete; an exhausted search therefore certifies irreducibility.
  std::vector<int> candidate_degrees;
  for (int a = 1; a <= n / 2; ++a)
    if (alive[a] || alive[n - a]) candidate_degrees.push_back(a);
  FactorSearch search = bounded_factor_search(f, candidate_degrees);
  if (search.witness) {
    res.status = Irred::Reducible;
    res.witness = *search.witness;
    res.detail = "reconstructed factor";
    return res;
  }
  if (search.exhausted) {
    res.status = Irred::Irreducible;
    res.detail = "patterns plus exhaustive bounded factor search";
    return res;
  }
  res.status = Irred::Undetermined;
  res.detail = "patterns admit a split; factor search exceeded its budget";
  return res;
}

bool conjugate_ratio_root_of_unity(const ZPoly& g_in) {
  ZPoly g = g_in;
  trim(g);
  const int d = degree(g);
  if (d < 2) return false;
  if (!is_monic(g)) throw MathError("conjugate_ratio screen: input must be monic");
  if (g[0] == 0) throw MathError("conjugate_ratio screen: zero root");
  // R(z) = Res_y(g(y), g(z*y)) has roots exactly the ratios of roots of g;
  // computed by interpolation from integer resultants.
  const int deg_r = d * d;
  std::vector<Rat> xs, ys;
  for (int k = 0; (int)xs.size() < deg_r + 1; ++k) {
    long long z0 = (k % 2 == 0) ? (k / 2 + 1) : -(k / 2 + 1);
    ZPoly gz(g.size());
    Int zp = 1;
    for (int i = 0; i <= d; ++i) {
      gz[i] = g[i] * zp;
      zp *= z0;
    }
    xs.emplace_back((long long)z0);
    ys.emplace_back(Rat(resultant(g, gz)));
  }
  // Lagrange interpolation (exact, rational)
  QPoly r_poly;
  for (int i = 0; i <= deg_r; ++i) {
    QPoly term{Rat(1)};
    Rat denom(1);
    for (int j = 0; j <= deg_r; ++j) {
      if (i == j) continue;
      term = q_mul(term, QPoly{-xs[j], Rat(1)});
      denom *= (xs[i] - xs[j]);
    }
    r_poly = q_add(r_poly, q_scale(term, ys[i] / denom));
  }
  // strip the diagonal (z - 1)^d factor; the rest has the cross ratios
  QPoly s = r_poly;
  for (int i = 0; i < d; ++i) {
    QPoly q, rr;
    q_divmod(s, QPoly{Rat(-1), Rat(1)}, q, rr);
    if (!rr.empty()) throw InternalError("ratio screen: (z-1)^d does not divide");
    s = std::move(q);
  }
  const int ds = degree(s);
  if (ds <= 0) return false;
  const unsigned bound = 2u * (unsigned)ds * (unsigned)ds + 6u;
  for (unsigned m = 1; m <= bound; ++m) {
    if ((int)euler_phi(m) > ds) continue;
    if (degree(q_gcd(s, q_from_z(cyclotomic(m)))) > 0) return true;
  }
  return false;
}

}  // namespace artin::intpoly
