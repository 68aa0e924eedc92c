#include "artin/matrixord.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace artin::matrixord {

using arith::u128;
using polyfp::PolyFp;

RationalMatrix RationalMatrix::create(int n, std::vector<Rat> entries) {
  if (n < 1 || entries.size() != (std::size_t)n * (std::size_t)n)
    throw MathError("matrix: need n*n entries with n >= 1");
  RationalMatrix A;
  A.n = n;
  A.entries = std::move(entries);
  for (const Rat& e : A.entries) A.den_entries = int_lcm(A.den_entries, e.den);
  // exact determinant via fraction-free elimination on the scaled integer matrix
  {
    std::vector<std::vector<Int>> m((std::size_t)n, std::vector<Int>((std::size_t)n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat scaled = A.at(i, j) * Rat(A.den_entries);
        m[(std::size_t)i][(std::size_t)j] = scaled.num;
      }
    // Bareiss
    Int sign = 1, prev = 1, det = 0;
    bool singular = false;
    for (int k = 0; k + 1 < n && !singular; ++k) {
      if (m[k][k] == 0) {
        int s = k + 1;
        while (s < n && m[s][k] == 0) ++s;
        if (s == n) {
          singular = true;
          break;
        }
        std::swap(m[k], m[s]);
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i) {
        for (int j = k + 1; j < n; ++j)
          m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
        m[i][k] = 0;
      }
      prev = m[k][k];
    }
    det = singular ? Int(0) : sign * m[(std::size_t)n - 1][(std::size_t)n - 1];
    A.det = Rat(det, int_pow(A.den_entries, (unsigned)n));
  }
  if (A.det.is_zero()) throw MathError("matrix is singular (det = 0)");
  return A;
}

RationalMatrix RationalMatrix::from_integers(int n, const std::vector<long long>& v) {
  std::vector<Rat> e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e[i] = Rat(v[i]);
  return create(n, std::move(e));
}

namespace {

std::vector<Rat> mat_mul(int n, const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> c((std::size_t)n * (std::size_t)n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Rat& aik = a[(std::size_t)(i * n + k)];
      if (aik.is_zero()) continue;
      for (int j = 0; j < n; ++j)
        c[(std::size_t)(i * n + j)] += aik * b[(std::size_t)(k * n + j)];
    }
  return c;
}

Rat mat_trace(int n, const std::vector<Rat>& a) {
  Rat t(0);
  for (int i = 0; i < n; ++i) t += a[(std::size_t)(i * n + i)];
  return t;
}

}  // namespace

QPoly char_poly(const RationalMatrix& A) {
  // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr M_1,
  // M_{k+1} = A (M_k + c_{n-k} I), c_{n-k-1} = -tr(M_{k+1}) / (k+1)
  const int n = A.n;
  QPoly coeffs((std::size_t)n + 1, Rat(0));
  coeffs[(std::size_t)n] = Rat(1);
  std::vector<Rat> M = A.entries;
  Rat c = -mat_trace(n, M);
  coeffs[(std::size_t)n - 1] = c;
  for (int k = 2; k <= n; ++k) {
    for (int i = 0; i < n; ++i) M[(std::size_t)(i * n + i)] += c;
    M = mat_mul(n, A.entries, M);
    c = -mat_trace(n, M) / Rat((long long)k);
    coeffs[(std::size_t)(n - k)] = c;
  }
  return coeffs;
}

QPoly min_poly(const RationalMatrix& A) {
  const int n = A.n;
  const std::size_t dim = (std::size_t)n * (std::size_t)n;
  intpoly::DependenceFinder dep(dim);
  std::vector<Rat> power(dim, Rat(0));
  for (int i = 0; i < n; ++i) power[(std::size_t)(i * n + i)] = Rat(1);
  for (int k = 0; k <= n; ++k) {
    if (auto rel = dep.feed(power)) {
      QPoly m(rel->begin(), rel->end());
      intpoly::trim(m);
      return m;
    }
    power = mat_mul(n, power, A.entries);
  }
  throw InternalError("min_poly: no dependence within the degree bound");
}

intpoly::IrredResult irreducibility_check(const ZPoly& f) {
  return intpoly::certify_irreducible(f);
}

const char* order_method_name(OrderMethod m) {
  switch (m) {
    case OrderMethod::Direct: return "direct";
    case OrderMethod::EigenPath: return "eigen";
    case OrderMethod::Both: return "both";
  }
  return "?";
}

namespace {

using MatModP = std::vector<u64>;  // row-major n*n

MatModP reduce_matrix(const RationalMatrix& A, u64 p) {
  MatModP m((std::size_t)A.n * (std::size_t)A.n);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Rat& e = A.entries[i];
    Int den_mod = e.den % Int(p);
    if (den_mod == 0) throw BadPrimeError("p divides an entry denominator");
    Int num_mod = e.num % Int(p);
    if (num_mod < 0) num_mod += Int(p);
    m[i] = arith::mulmod(num_mod.convert_to<u64>(),
                         arith::invmod(den_mod.convert_to<u64>(), p), p);
  }
  return m;
}

MatModP mat_mul_p(int n, const MatModP& a, const MatModP& b, u64 p) {
  MatModP c((std::size_t)n * (std::size_t)n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      u64 aik = a[(std::size_t)(i * n + k)];
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j) {
        u128 cur = c[(std::size_t)(i * n + j)];
        cur += (u128)aik * b[(std::size_t)(k * n + j)];
        c[(std::size_t)(i * n + j)] = (u64)(cur % p);
      }
    }
  return c;
}

MatModP mat_identity(int n) {
  MatModP m((std::size_t)n * (std::size_t)n, 0);
  for (int i = 0; i < n; ++i) m[(std::size_t)(i * n + i)] = 1;
  return m;
}

bool is_identity(int n, const MatModP& m) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[(std::size_t)(i * n + j)] != (i == j ? 1u : 0u)) return false;
  return true;
}

MatModP mat_pow_p(int n, const MatModP& a, const Int& e, u64 p) {
  MatModP r = mat_identity(n);
  MatModP b = a;
  Int k = e;
  while (k > 0) {
    if (boost::multiprecision::bit_test(k, 0)) r = mat_mul_p(n, r, b, p);
    k >>= 1;
    if (k > 0) b = mat_mul_p(n, b, b, p);
  }
  return r;
}

arith::Factorization factorize_via(u64 n, const arith::FactorCache* shared,
                                   arith::FactorCache* scratch) {
  if (shared) {
    if (const arith::Factorization* hit = shared->find(n)) return *hit;
  }
  return arith::factorize(n, scratch);
}

struct EigenProfile {
  QPoly minpoly;
  QPoly sf;            // squarefree part, monic
  int max_mult = 1;
  Int sf_den;          // lcm of sf coefficient denominators
  Rat sf_disc;         // discriminant of sf (1 when deg(sf) = 1)
  Int det_num;         // numerator of det(A)
};

EigenProfile eigen_profile(const RationalMatrix& A) {
  EigenProfile pr;
  pr.minpoly = min_poly(A);
  pr.sf = intpoly::q_squarefree_part(pr.minpoly);
  pr.max_mult = intpoly::q_max_multiplicity(pr.minpoly);
  pr.sf_den = intpoly::q_den_lcm(pr.sf);
  pr.sf_disc = intpoly::degree(pr.sf) >= 2 ? intpoly::q_poly_disc(pr.sf) : Rat(1);
  pr.det_num = A.det.num;
  return pr;
}

// exclusion screen for the eigenvalue path; empty when the prime is usable
std::string eigen_exclusion(const RationalMatrix& A, const EigenProfile& pr, u64 p) {
  if (p <= (u64)A.n) return "p <= n";
  if (A.den_entries % Int(p) == 0) return "divides entry denominators";
  if (pr.det_num % Int(p) == 0) return "divides det numerator";
  if (pr.sf_den % Int(p) == 0) return "divides min-poly denominators";
  Int disc_num = pr.sf_disc.num < 0 ? Int(-pr.sf_disc.num) : pr.sf_disc.num;
  if (disc_num % Int(p) == 0) return "divides min-poly discriminant";
  if (pr.sf_disc.den % Int(p) == 0) return "divides min-poly discriminant denominator";
  return "";
}

}  // namespace

Int matrix_order_direct(const RationalMatrix& A, u64 p,
                        const arith::FactorCache* shared,
                        arith::FactorCache* scratch) {
  if (!arith::is_prime(p)) throw MathError("matrix_order_direct: p must be prime");
  if (A.den_entries % Int(p) == 0)
    throw BadPrimeError("p divides the entry denominators");
  Int det_num = A.det.num < 0 ? Int(-A.det.num) : A.det.num;
  if (det_num % Int(p) == 0)
    throw BadPrimeError("p divides the determinant numerator");
  const int n = A.n;
  MatModP Abar = reduce_matrix(A, p);

  // factored exponent bound E = p^n * lcm(p^d - 1 : d <= n)
  std::map<u64, int> exp_parts;
  exp_parts[p] = n;
  for (int d = 1; d <= n; ++d) {
    u64 pd = 1;
    for (int j = 0; j < d; ++j) {
      if (pd > (UINT64_MAX >> 1) / p)
        throw ResourceError("p^d - 1 exceeds the 63-bit factorization range");
      pd *= p;
    }
    for (const auto& [q, e] : factorize_via(pd - 1, shared, scratch).parts)
      exp_parts[q] = std::max(exp_parts[q], e);
  }
  Int E = 1;
  for (const auto& [q, e] : exp_parts)
    for (int i = 0; i < e; ++i) E *= q;

  // per prime power: strip q out of E, then walk B = A^(E/q^e) back up
  Int order = 1;
  for (const auto& [q, e] : exp_parts) {
    Int reduced = E;
    for (int i = 0; i < e; ++i) reduced /= q;
    MatModP B = mat_pow_p(n, Abar, reduced, p);
    int t = 0;
    while (!is_identity(n, B)) {
      B = mat_pow_p(n, B, Int(q), p);
      ++t;
      if (t > e)
        throw InternalError("matrix_order_direct: exponent bound violated");
    }
    for (int i = 0; i < t; ++i) order *= q;
  }
  return order;
}

MatrixOrderResult matrix_order_eigenpath(const RationalMatrix& A, u64 p,
                                         const arith::FactorCache* shared,
                                         arith::FactorCache* scratch) {
  if (!arith::is_prime(p))
    throw MathError("matrix_order_eigenpath: p must be prime");
  EigenProfile pr = eigen_profile(A);
  MatrixOrderResult out;
  out.prime_p = p;
  out.method = OrderMethod::EigenPath;
  out.diagonalizable = pr.max_mult == 1;
  std::string reason = eigen_exclusion(A, pr, p);
  if (!reason.empty()) {
    out.excluded_prime = true;
    out.exclude_reason = reason;
    return out;
  }
  // reduce the squarefree part mod p (coefficients are p-integral here)
  std::vector<u64> c(pr.sf.size());
  for (std::size_t i = 0; i < pr.sf.size(); ++i) {
    Int num_mod = pr.sf[i].num % Int(p);
    if (num_mod < 0) num_mod += Int(p);
    Int den_mod = pr.sf[i].den % Int(p);
    c[i] = arith::mulmod(num_mod.convert_to<u64>(),
                         arith::invmod(den_mod.convert_to<u64>(), p), p);
  }
  PolyFp sfbar(p, std::move(c));
  if (pr.max_mult > 1) {
    // The p-power factor presumes the Jordan structure survives reduction:
    // the nilpotency index of sf(A) mod p must equal the largest rational
    // multiplicity. It can drop for finitely many p (primes meeting the
    // Jordan transform); those are excluded, never silently miscomputed.
    const int n = A.n;
    MatModP Abar = reduce_matrix(A, p);
    MatModP nil((std::size_t)n * (std::size_t)n, 0);
    {
      // evaluate sfbar at Abar by Horner
      for (std::size_t i = 0; i < sfbar.c.size(); ++i) {
        std::size_t k = sfbar.c.size() - 1 - i;
        nil = mat_mul_p(n, nil, Abar, p);
        for (int di = 0; di < n; ++di) {
          u64& v = nil[(std::size_t)(di * n + di)];
          v = arith::addmod(v, sfbar.c[k], p);
        }
      }
    }
    int index = 0;
    MatModP power = mat_identity(n);
    auto is_zero_mat = [&](const MatModP& m) {
      for (u64 v : m)
        if (v != 0) return false;
      return true;
    };
    while (index < pr.max_mult && !is_zero_mat(power)) {
      power = mat_mul_p(n, power, nil, p);
      ++index;
    }
    if (!is_zero_mat(power))
      throw InternalError("eigenpath: sf(A)^max_mult nonzero mod p");
    if (index < pr.max_mult) {
      out.excluded_prime = true;
      out.exclude_reason = "jordan structure degenerates mod p";
      return out;
    }
  }
  auto factors = polyfp::factor_full(sfbar, 0x5eedULL ^ p);
  Int lcm_orders = 1;
  for (const auto& [g, mult] : factors) {
    (void)mult;
    const int d = g.degree();
    if (g.c[0] == 0)
      throw InternalError("eigenpath: eigenvalue divisible by p past the screen");
    u64 pd = 1;
    for (int j = 0; j < d; ++j) {
      if (pd > (UINT64_MAX >> 1) / p)
        throw ResourceError("p^d - 1 exceeds the 63-bit factorization range");
      pd *= p;
    }
    const u64 group = pd - 1;
    auto fact = factorize_via(group, shared, scratch);
    u64 ord = group;
    PolyFp x = polyfp::rem(PolyFp::x(p), g);
    for (const auto& [q, e] : fact.parts) {
      for (int j = 0; j < e; ++j) {
        if (polyfp::powmod(x, ord / q, g).is_one())
          ord /= q;
        else
          break;
      }
    }
    lcm_orders = int_lcm(lcm_orders, Int(ord));
  }
  // p-power factor for the non-diagonalizable part: least e with p^e >= the
  // largest multiplicity (0 when squarefree; the p <= n screen keeps e <= 1)
  Int ppow = 1;
  {
    Int pe = 1;
    while (pe < pr.max_mult) {
      pe *= p;
      ppow *= p;
    }
  }
  out.order = lcm_orders * ppow;
  return out;
}

MatrixOrderResult matrix_order(const RationalMatrix& A, u64 p, OrderMethod mode,
                               const arith::FactorCache* shared,
                               arith::FactorCache* scratch) {
  switch (mode) {
    case OrderMethod::Direct: {
      MatrixOrderResult out;
      out.prime_p = p;
      out.method = OrderMethod::Direct;
      out.diagonalizable = intpoly::q_max_multiplicity(min_poly(A)) == 1;
      try {
        out.order = matrix_order_direct(A, p, shared, scratch);
      } catch (const BadPrimeError& e) {
        out.excluded_prime = true;
        out.exclude_reason = e.what();
      }
      return out;
    }
    case OrderMethod::EigenPath:
      return matrix_order_eigenpath(A, p, shared, scratch);
    case OrderMethod::Both: {
      MatrixOrderResult eig = matrix_order_eigenpath(A, p, shared, scratch);
      if (eig.excluded_prime) return eig;  // outside the asserted set
      Int direct = matrix_order_direct(A, p, shared, scratch);
      if (direct != eig.order)
        throw InternalError(
            "order paths disagree at p = " + std::to_string(p) +
            ": direct = " + direct.str() + ", eigen = " + eig.order.str());
      eig.method = OrderMethod::Both;
      return eig;
    }
  }
  throw InternalError("matrix_order: unreachable mode");
}

obstruct::CensusReport matrix_census(const RationalMatrix& A,
                                     const frobclass::ClassSelector& sel,
                                     const obstruct::CensusConfig& cfg,
                                     arith::FactorCache* cache) {
  QPoly fa = char_poly(A);
  auto [g, scale] = intpoly::monic_integer_rescale(fa);
  auto irr = irreducibility_check(g);
  if (irr.status == intpoly::Irred::Reducible)
    throw MathError("matrix census requires an irreducible characteristic "
                    "polynomial (" + irr.detail + ")");
  if (irr.status == intpoly::Irred::Undetermined)
    throw UndeterminedError(
        "characteristic polynomial irreducibility undetermined: " + irr.detail);
  if (intpoly::conjugate_ratio_root_of_unity(g))
    throw MathError(
        "matrix census: a ratio of eigenvalues is a root of unity, the "
        "almost-maximal-order statements do not apply");
  auto field = numfield::FieldSpec::create(g);
  // alpha = theta / scale is an actual eigenvalue; N(alpha) = +-det(A)
  numfield::AlgebraicElement alpha =
      field->degree == 1
          ? numfield::AlgebraicElement::create(field, ZPoly{-g[0]}, scale)
          : numfield::AlgebraicElement::create(field, ZPoly{Int(0), Int(1)},
                                               scale);
  // N(alpha) = N(theta)/scale^n = (-1)^n f_A(0) = det(A) exactly
  if (numfield::element_norm(alpha) != A.det)
    throw InternalError("matrix census: N(alpha) != det(A)");
  return obstruct::run_census(*field, alpha, sel, cfg, cache);
}

}  // namespace artin::matrixord
