// Classification of rational primes by Frobenius data: inertia-degree
// patterns, Legendre-sign vectors for multiquadratic fields, and class
// enumerations up to a bound. General Artin-symbol computation is out of
// scope; classes are selected through inertia-degree data, which covers the
// abelian, dihedral and order-2 symmetric-group cases.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "artin/numfield.hpp"

namespace artin::frobclass {

using arith::u64;
using arith::i64;
using numfield::FieldSpec;

enum class SelMode { AllDegreeTwo, QuadraticSigns, PatternMatch };

struct ClassSelector {
  SelMode mode = SelMode::AllDegreeTwo;
  // QuadraticSigns: (squarefree base n_i, required Legendre sign +-1)
  std::vector<std::pair<i64, int>> signs;
  // PatternMatch: exact degree pattern (squarefree primes only)
  polyfp::DegreePattern pattern;

  // ConfigError when inconsistent with the field (odd degree for
  // AllDegreeTwo, 2^m != degree for QuadraticSigns, degree-sum mismatch
  // for PatternMatch, non-squarefree or non-coprime sign bases).
  void validate(const FieldSpec& field) const;
};

// Euler-criterion Legendre symbol; p must be an odd prime.
int legendre_symbol(i64 a, u64 p);

enum class Membership { Member, NonMember, Excluded };

struct ClassifyResult {
  Membership membership = Membership::Excluded;
  std::string reason;  // set for Excluded
};

ClassifyResult classify_prime(const FieldSpec& field, const ClassSelector& sel,
                              u64 p);

struct ClassEnumeration {
  std::vector<u64> members;                          // ascending
  std::vector<std::pair<u64, std::string>> excluded; // ascending, with reasons
  u64 total_primes = 0;                              // pi(X)
};

ClassEnumeration enumerate_class(const FieldSpec& field, const ClassSelector& sel,
                                 u64 limit);

// Empirical Chebotarev data: counts of splitting patterns over unramified
// odd primes up to the limit.
struct PatternCount {
  polyfp::DegreePattern pattern;
  u64 count = 0;
};

struct PatternFrequencies {
  std::vector<PatternCount> patterns;  // sorted by pattern
  u64 considered = 0;                  // unramified primes counted
  u64 excluded = 0;                    // ramified primes and p = 2
  u64 total_primes = 0;                // pi(X)
};

PatternFrequencies pattern_frequencies(const FieldSpec& field, u64 limit);

}  // namespace artin::frobclass
