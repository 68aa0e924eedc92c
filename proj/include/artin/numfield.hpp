// Number fields presented as Q[x]/(f) for monic irreducible integer f,
// element arithmetic, norms, reduction modulo rational primes, orders in
// (O_K/pO_K)^x, and obstruction detection at inertia-degree-2 primes.
//
// The ring worked with is Z[theta] for theta a root of f; primes dividing
// the polynomial discriminant are treated as ramified and excluded from all
// order semantics. The finitely many primes this loses relative to the
// maximal order are reported explicitly by the census layer.
#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "artin/intpoly.hpp"
#include "artin/polyfp.hpp"
#include "artin/rational.hpp"

namespace artin::numfield {

using arith::u64;
using intpoly::ZPoly;

struct FieldSpec {
  ZPoly min_poly;  // monic, integer, irreducible; constant term first
  int degree = 0;
  Int poly_disc;   // resultant-based discriminant of min_poly (1 for degree 1)

  // Validates shape and certifies irreducibility (MathError on reducible
  // input, UndeterminedError when certification cannot decide).
  static std::shared_ptr<const FieldSpec> create(ZPoly f);
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

// num(theta)/den with deg(num) < field degree, den > 0, and den coprime to
// the content of num.
struct AlgebraicElement {
  FieldPtr field;
  ZPoly num;
  Int den = 1;

  bool is_zero() const { return num.empty(); }

  static AlgebraicElement create(FieldPtr field, ZPoly num, Int den = 1);
  // the field generator theta (for degree 1 fields, the rational root)
  static AlgebraicElement generator(FieldPtr field);
  static AlgebraicElement rational(FieldPtr field, const Rat& value);
};

// exact multiplication in Q[theta] (used by screens and property tests)
AlgebraicElement element_mul(const AlgebraicElement& a, const AlgebraicElement& b);
AlgebraicElement element_pow(const AlgebraicElement& a, unsigned e);

// N_{K/Q}(alpha) = Res(f, num) / den^degree, exact. MathError on zero.
Rat element_norm(const AlgebraicElement& alpha);

// minimal polynomial of alpha over Q, monic (used by the root-of-unity screen)
intpoly::QPoly element_min_poly(const AlgebraicElement& alpha);

struct SplittingType {
  u64 prime_p = 0;
  polyfp::DegreePattern pattern;
  bool ramified = false;
};

SplittingType splitting_type(const FieldSpec& field, u64 p);

// Residues of alpha in F_p[x]/(g_i) for the given irreducible factors of
// f mod p (one entry per factor). BadPrimeError when p divides den(alpha);
// NotCoprimeError when alpha vanishes modulo some factor.
std::vector<polyfp::PolyFp> reduce_mod_prime(
    const AlgebraicElement& alpha, u64 p,
    const std::vector<std::pair<polyfp::PolyFp, int>>& factors);

struct OrderResult {
  u64 prime_p = 0;
  Int order;           // LCM of the per-factor orders
  Int group_exponent;  // LCM of p^d - 1 over distinct inertia degrees d
  std::vector<std::pair<int, u64>> per_factor_orders;  // (degree, order)
};

// Order of alpha in (Z[theta]/p)^x, computed per residue field by dividing
// prime factors out of p^d - 1. BadPrimeError on ramified p or p | den;
// ResourceError when p^d - 1 exceeds the 63-bit factorization range.
OrderResult residue_order(const AlgebraicElement& alpha, u64 p,
                          const arith::FactorCache* shared = nullptr,
                          arith::FactorCache* scratch = nullptr);

enum class ObsKind { TypeI, TypeII, Both };

struct ObstructionRecord {
  u64 prime_p = 0;
  u64 q = 0;
  int degree_l = 0;  // alpha is a q^degree_l-th power mod p, maximal
  ObsKind kind = ObsKind::TypeI;

  friend bool operator==(const ObstructionRecord& a, const ObstructionRecord& b) {
    return a.prime_p == b.prime_p && a.q == b.q && a.degree_l == b.degree_l &&
           a.kind == b.kind;
  }
};

const char* obs_kind_name(ObsKind k);

// Obstructions of alpha at an all-inertia-degree-2 prime p: one record per
// prime q with ord_p(alpha) dividing (p^2-1)/q, degree_l the q-adic valuation
// of (p^2-1)/ord_p(alpha). Odd q is TypeI iff q | p-1, TypeII iff q | p+1;
// q = 2 is reported as Both. MathError when the splitting pattern is not
// all-degree-2 (degree-1 primes belong to the classical census).
std::vector<ObstructionRecord> detect_obstructions(
    const AlgebraicElement& alpha, u64 p,
    const arith::FactorCache* shared = nullptr,
    arith::FactorCache* scratch = nullptr);

}  // namespace artin::numfield
