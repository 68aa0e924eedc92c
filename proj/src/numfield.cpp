#include "artin/numfield.hpp"

#include <algorithm>

namespace artin::numfield {

using intpoly::QPoly;
using polyfp::PolyFp;

std::shared_ptr<const FieldSpec> FieldSpec::create(ZPoly f) {
  intpoly::trim(f);
  const int n = intpoly::degree(f);
  if (n < 1) throw MathError("field polynomial must have degree >= 1");
  if (!intpoly::is_monic(f)) throw MathError("field polynomial must be monic");
  auto irr = intpoly::certify_irreducible(f);
  if (irr.status == intpoly::Irred::Reducible)
    throw MathError("field polynomial is reducible (" + irr.detail + ")");
  if (irr.status == intpoly::Irred::Undetermined)
    throw UndeterminedError("field polynomial irreducibility undetermined: " +
                            irr.detail);
  auto spec = std::make_shared<FieldSpec>();
  spec->min_poly = std::move(f);
  spec->degree = n;
  spec->poly_disc = intpoly::poly_disc(spec->min_poly);
  if (spec->poly_disc == 0)
    throw InternalError("irreducible polynomial with zero discriminant");
  return spec;
}

AlgebraicElement AlgebraicElement::create(FieldPtr field, ZPoly num, Int den) {
  if (!field) throw MathError("element without a field");
  intpoly::trim(num);
  if (intpoly::degree(num) >= field->degree)
    throw MathError("element numerator degree must be below the field degree");
  if (den == 0) throw MathError("element denominator must be nonzero");
  AlgebraicElement e;
  e.field = std::move(field);
  if (den < 0) {
    den = -den;
    for (Int& c : num) c = -c;
  }
  Int g = int_gcd(intpoly::content(num), den);
  if (g > 1) {
    for (Int& c : num) c /= g;
    den /= g;
  }
  e.num = std::move(num);
  e.den = std::move(den);
  return e;
}

AlgebraicElement AlgebraicElement::generator(FieldPtr field) {
  if (field->degree == 1) {
    // theta is the rational root -f[0]
    ZPoly root{-field->min_poly[0]};
    return create(std::move(field), std::move(root), 1);
  }
  return create(std::move(field), ZPoly{Int(0), Int(1)}, 1);
}

AlgebraicElement AlgebraicElement::rational(FieldPtr field, const Rat& value) {
  return create(std::move(field), ZPoly{value.num}, value.den);
}

AlgebraicElement element_mul(const AlgebraicElement& a, const AlgebraicElement& b) {
  if (a.field->min_poly != b.field->min_poly)
    throw MathError("element_mul: mixed fields");
  ZPoly prod = intpoly::mul(a.num, b.num);
  prod = intpoly::rem_by_monic(prod, a.field->min_poly);
  return AlgebraicElement::create(a.field, std::move(prod), a.den * b.den);
}

AlgebraicElement element_pow(const AlgebraicElement& a, unsigned e) {
  AlgebraicElement r = AlgebraicElement::rational(a.field, Rat(1));
  AlgebraicElement base = a;
  while (e) {
    if (e & 1) r = element_mul(r, base);
    e >>= 1;
    if (e) base = element_mul(base, base);
  }
  return r;
}

Rat element_norm(const AlgebraicElement& alpha) {
  if (alpha.is_zero()) throw MathError("element_norm: zero element");
  const int n = alpha.field->degree;
  Int res = intpoly::resultant(alpha.field->min_poly, alpha.num);
  return Rat(res, int_pow(alpha.den, (unsigned)n));
}

QPoly element_min_poly(const AlgebraicElement& alpha) {
  const int n = alpha.field->degree;
  // feed powers of alpha (as coordinate vectors over the theta basis) until
  // the first linear dependence; its coefficients are the minimal polynomial
  intpoly::DependenceFinder dep((std::size_t)n);
  AlgebraicElement cur = AlgebraicElement::rational(alpha.field, Rat(1));
  for (int k = 0; k <= n; ++k) {
    std::vector<Rat> v((std::size_t)n, Rat(0));
    for (std::size_t i = 0; i < cur.num.size(); ++i)
      v[i] = Rat(cur.num[i], cur.den);
    if (auto rel = dep.feed(std::move(v))) {
      QPoly m(rel->begin(), rel->end());
      intpoly::trim(m);
      return m;
    }
    cur = element_mul(cur, alpha);
  }
  throw InternalError("element_min_poly: no dependence within degree bound");
}

SplittingType splitting_type(const FieldSpec& field, u64 p) {
  if (p < 2) throw MathError("splitting_type: p must be a prime");
  SplittingType st;
  st.prime_p = p;
  st.pattern = polyfp::factor_degree_pattern(
      intpoly::reduce_mod_p(field.min_poly, p));
  st.ramified = (field.poly_disc % Int(p) == 0) || !st.pattern.squarefree;
  return st;
}

std::vector<PolyFp> reduce_mod_prime(
    const AlgebraicElement& alpha, u64 p,
    const std::vector<std::pair<PolyFp, int>>& factors) {
  if (alpha.den % Int(p) == 0)
    throw BadPrimeError("p = " + std::to_string(p) +
                        " divides the element denominator");
  const u64 den_mod = [&] {
    Int v = alpha.den % Int(p);
    return v.convert_to<u64>();
  }();
  const u64 den_inv = arith::invmod(den_mod, p);
  PolyFp num_mod = intpoly::reduce_mod_p(alpha.num, p);
  std::vector<PolyFp> out;
  out.reserve(factors.size());
  for (const auto& [g, mult] : factors) {
    (void)mult;
    PolyFp r = polyfp::scale(polyfp::rem(num_mod, g), den_inv);
    if (r.is_zero())
      throw NotCoprimeError("element is divisible by a prime above " +
                            std::to_string(p));
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

arith::Factorization factorize_via(u64 n, const arith::FactorCache* shared,
                                   arith::FactorCache* scratch) {
  if (shared) {
    if (const arith::Factorization* hit = shared->find(n)) return *hit;
  }
  return arith::factorize(n, scratch);
}

// fixed seed for internal full factorizations: results are canonically
// sorted, so any seed gives the same output; keyed on p for variety
u64 internal_seed(u64 p) { return 0x9e3779b97f4a7c15ULL ^ (p * 0xff51afd7ed558ccdULL); }

}  // namespace

OrderResult residue_order(const AlgebraicElement& alpha, u64 p,
                          const arith::FactorCache* shared,
                          arith::FactorCache* scratch) {
  SplittingType st = splitting_type(*alpha.field, p);
  if (st.ramified)
    throw BadPrimeError("p = " + std::to_string(p) + " is ramified");
  PolyFp fbar = intpoly::reduce_mod_p(alpha.field->min_poly, p);
  auto factors = polyfp::factor_full(fbar, internal_seed(p));
  auto residues = reduce_mod_prime(alpha, p, factors);

  OrderResult out;
  out.prime_p = p;
  out.order = 1;
  out.group_exponent = 1;
  std::vector<int> seen_degrees;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const PolyFp& g = factors[i].first;
    const int d = g.degree();
    // p^d - 1 must stay within the 63-bit factorization range
    u64 pd = 1;
    for (int j = 0; j < d; ++j) {
      if (pd > (UINT64_MAX >> 1) / p)
        throw ResourceError("p^d - 1 exceeds the 63-bit factorization range");
      pd *= p;
    }
    const u64 group = pd - 1;
    auto fact = factorize_via(group, shared, scratch);
    // divide prime factors out of p^d - 1
    u64 ord = group;
    for (const auto& [q, e] : fact.parts) {
      for (int j = 0; j < e; ++j) {
        if (polyfp::powmod(residues[i], ord / q, g).is_one())
          ord /= q;
        else
          break;
      }
    }
    out.per_factor_orders.emplace_back(d, ord);
    out.order = int_lcm(out.order, Int(ord));
    if (std::find(seen_degrees.begin(), seen_degrees.end(), d) ==
        seen_degrees.end()) {
      seen_degrees.push_back(d);
      out.group_exponent = int_lcm(out.group_exponent, Int(group));
    }
  }
  return out;
}

const char* obs_kind_name(ObsKind k) {
  switch (k) {
    case ObsKind::TypeI: return "TypeI";
    case ObsKind::TypeII: return "TypeII";
    case ObsKind::Both: return "Both";
  }
  return "?";
}

std::vector<ObstructionRecord> detect_obstructions(
    const AlgebraicElement& alpha, u64 p, const arith::FactorCache* shared,
    arith::FactorCache* scratch) {
  SplittingType st = splitting_type(*alpha.field, p);
  if (st.ramified)
    throw BadPrimeError("p = " + std::to_string(p) + " is ramified");
  if (st.pattern.entries.size() != 1 || st.pattern.entries[0].first != 2)
    throw MathError(
        "detect_obstructions: splitting pattern is not all inertia degree 2 "
        "(degree-1 primes belong to the classical census)");
  OrderResult ord = residue_order(alpha, p, shared, scratch);
  // index of <alpha> in the exponent-(p^2-1) group
  Int index_int = ord.group_exponent / ord.order;
  u64 index = index_int.convert_to<u64>();
  std::vector<ObstructionRecord> records;
  for (const auto& [q, e] : factorize_via(index, shared, scratch).parts) {
    ObstructionRecord rec;
    rec.prime_p = p;
    rec.q = q;
    rec.degree_l = e;
    if (q == 2)
      rec.kind = ObsKind::Both;
    else
      rec.kind = ((p - 1) % q == 0) ? ObsKind::TypeI : ObsKind::TypeII;
    records.push_back(rec);
  }
  return records;
}

}  // namespace artin::numfield
