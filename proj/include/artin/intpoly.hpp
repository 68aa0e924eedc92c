// Exact polynomial machinery over Z and Q: resultants (Sylvester + Bareiss),
// discriminants, rational-polynomial gcd/squarefree structure, cyclotomic
// detection, irreducibility certification, and the conjugate-ratio screen.
// Shared internal support for numfield and matrixord.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "artin/polyfp.hpp"
#include "artin/rational.hpp"

namespace artin::intpoly {

using arith::u64;
using ZPoly = std::vector<Int>;  // constant term first, no trailing zeros
using QPoly = std::vector<Rat>;

// --- Z[x] ---
void trim(ZPoly& f);
int degree(const ZPoly& f);  // zero poly: -1
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly derivative(const ZPoly& f);
Int eval(const ZPoly& f, const Int& x);
Int content(const ZPoly& f);
bool is_monic(const ZPoly& f);

// remainder of a by monic b (stays integral)
ZPoly rem_by_monic(const ZPoly& a, const ZPoly& b);
// exact division; throws InternalError if not divisible
ZPoly div_exact(const ZPoly& a, const ZPoly& b);

polyfp::PolyFp reduce_mod_p(const ZPoly& f, u64 p);

// Res(f, g) with the convention Res(f, g) = lc(f)^{deg g} * prod g(roots of f).
Int resultant(const ZPoly& f, const ZPoly& g);
// (-1)^{n(n-1)/2} Res(f, f') for monic f; degree-1 polynomials get disc 1.
Int poly_disc(const ZPoly& f);

// --- Q[x] ---
void trim(QPoly& f);
int degree(const QPoly& f);
QPoly q_add(const QPoly& a, const QPoly& b);
QPoly q_sub(const QPoly& a, const QPoly& b);
QPoly q_mul(const QPoly& a, const QPoly& b);
QPoly q_scale(const QPoly& a, const Rat& k);
void q_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly q_gcd(const QPoly& a, const QPoly& b);  // monic (or zero)
QPoly q_derivative(const QPoly& f);
QPoly q_make_monic(const QPoly& f);
QPoly q_from_z(const ZPoly& f);
bool q_is_integral(const QPoly& f);
ZPoly z_from_q(const QPoly& f);  // requires integral coefficients

// f / gcd(f, f'), monic
QPoly q_squarefree_part(const QPoly& f);
// largest multiplicity of an irreducible factor (1 = squarefree)
int q_max_multiplicity(const QPoly& f);
// lcm of coefficient denominators
Int q_den_lcm(const QPoly& f);
// monic rational m(t) -> monic integer G(s) = d^deg * m(s/d), d = den lcm.
// Roots of G are d * (roots of m). Returns (G, d).
std::pair<ZPoly, Int> monic_integer_rescale(const QPoly& m);

// Rational resultant/discriminant, via denominator clearing.
Rat q_resultant(const QPoly& f, const QPoly& g);
Rat q_poly_disc(const QPoly& f);

// Incremental search for the first linear dependence in a stream of rational
// vectors: feed v_0, v_1, ...; returns, at the first dependent vector v_k,
// the coefficients c_0..c_k (c_k = 1) with sum c_i v_i = 0.
class DependenceFinder {
 public:
  explicit DependenceFinder(std::size_t dim) : dim_(dim) {}
  // nullopt while independent
  std::optional<std::vector<Rat>> feed(std::vector<Rat> v);

 private:
  std::size_t dim_;
  // reduced basis rows together with their expression in the fed vectors
  struct Row {
    std::vector<Rat> vec;
    std::vector<Rat> expr;
    std::size_t pivot;
  };
  std::vector<Row> rows_;
  std::size_t fed_ = 0;
};

// n-th cyclotomic polynomial (exact recursive construction).
ZPoly cyclotomic(unsigned n);
// Is the monic integer polynomial f equal to some cyclotomic polynomial?
// Returns its index when so.
std::optional<unsigned> cyclotomic_index(const ZPoly& f);

enum class Irred { Irreducible, Reducible, Undetermined };
struct IrredResult {
  Irred status = Irred::Undetermined;
  ZPoly witness;          // a proper factor when Reducible
  std::string detail;     // how the verdict was reached
};

// Certification for monic integer polynomials:
//   - degree <= 3: rational-root search decides;
//   - a repeated factor (gcd with derivative) yields a Reducible witness;
//   - a prime p with f irreducible mod p certifies Irreducible;
//   - degree patterns mod >= 20 good primes that rule out every proper
//     factor-degree split certify Irreducible;
//   - otherwise a bounded integer-factor search may produce a witness;
//   - Undetermined is an honest terminal state.
// Non-monic input -> MathError (clear denominators first).
IrredResult certify_irreducible(const ZPoly& f);

// True iff some ratio of two distinct roots of the monic integer polynomial g
// is a root of unity (degree >= 2; degree <= 1 is vacuously false).
bool conjugate_ratio_root_of_unity(const ZPoly& g);

}  // namespace artin::intpoly
