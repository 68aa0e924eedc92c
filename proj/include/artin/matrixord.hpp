// Orders of rational matrices modulo primes: the direct computation in
// GL_n(F_p) (dividing prime factors out of the factored exponent bound) and
// the eigenvalue path through the factorization of the minimal polynomial mod
// p, with a Both mode asserting their equality outside the exclusion set.
// Also exact characteristic/minimal polynomials, irreducibility certification
// and the matrix census that delegates to the number-field engine.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "artin/intpoly.hpp"
#include "artin/obstruct.hpp"

namespace artin::matrixord {

using arith::u64;
using intpoly::QPoly;
using intpoly::ZPoly;

struct RationalMatrix {
  int n = 0;
  std::vector<Rat> entries;  // row-major, n*n
  Int den_entries = 1;       // least d with d*A integral
  Rat det;

  const Rat& at(int i, int j) const { return entries[(std::size_t)(i * n + j)]; }
  Rat& at(int i, int j) { return entries[(std::size_t)(i * n + j)]; }

  // MathError when not square or det = 0 (only GL_n(Q) is supported)
  static RationalMatrix create(int n, std::vector<Rat> entries);
  static RationalMatrix from_integers(int n, const std::vector<long long>& v);
};

// exact characteristic polynomial, monic of degree n, constant term first
QPoly char_poly(const RationalMatrix& A);

// least-degree monic annihilating polynomial (first linear dependence among
// I, A, A^2, ...)
QPoly min_poly(const RationalMatrix& A);

// Irreducibility certification of a monic integer polynomial (thin wrapper
// over the shared certification engine; see Corollary-style census gates).
intpoly::IrredResult irreducibility_check(const ZPoly& f);

enum class OrderMethod { Direct, EigenPath, Both };
const char* order_method_name(OrderMethod m);

struct MatrixOrderResult {
  u64 prime_p = 0;
  Int order;
  OrderMethod method = OrderMethod::Direct;
  bool diagonalizable = false;  // min_poly squarefree over Q
  bool excluded_prime = false;
  std::string exclude_reason;
};

// Least k with A^k = I mod p, by reducing A mod p and dividing prime factors
// out of the exponent bound p^n * lcm(p^d - 1 : d <= n). Valid whenever
// p does not divide den_entries or the numerator of det(A); BadPrimeError
// otherwise.
Int matrix_order_direct(const RationalMatrix& A, u64 p,
                        const arith::FactorCache* shared = nullptr,
                        arith::FactorCache* scratch = nullptr);

// Eigenvalue path: factor the squarefree part of min_poly mod p, take the
// LCM of the orders of x in each F_p[x]/(g_i), and multiply by p^e with e
// minimal such that p^e covers the largest min_poly multiplicity. Primes in
// the exclusion set (p <= n, p | den, p | num(det), p | disc of the
// squarefree part) come back flagged excluded, never silently wrong.
MatrixOrderResult matrix_order_eigenpath(const RationalMatrix& A, u64 p,
                                         const arith::FactorCache* shared = nullptr,
                                         arith::FactorCache* scratch = nullptr);

// mode Both runs both paths and requires equality outside the exclusion set;
// disagreement there is an InternalError carrying the witness.
MatrixOrderResult matrix_order(const RationalMatrix& A, u64 p, OrderMethod mode,
                               const arith::FactorCache* shared = nullptr,
                               arith::FactorCache* scratch = nullptr);

// Census over a prime class for the matrix: requires char_poly irreducible
// (MathError on reducible, UndeterminedError when certification cannot
// decide) and no conjugate-ratio/root-of-unity degeneracy among eigenvalues.
// Builds the companion field from the monic-normalized char poly, sets alpha
// to the eigenvalue (generator / denominator scale) and delegates to
// obstruct::run_census.
obstruct::CensusReport matrix_census(const RationalMatrix& A,
                                     const frobclass::ClassSelector& sel,
                                     const obstruct::CensusConfig& cfg,
                                     arith::FactorCache* cache = nullptr);

}  // namespace artin::matrixord
