// Census engine: sweep the primes of a Frobenius class, compute orders and
// obstructions, aggregate per-q counts and almost-maximal-order statistics,
// persist factorization caches, emit CSV/JSON reports.
//
// The sweep is data-parallel over blocks of member primes (OpenMP); a serial
// reference implementation is kept for testing and benchmarking. Reports are
// deterministic for fixed inputs and seed, independent of the shard count and
// of which implementation ran.
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "artin/frobclass.hpp"
#include "artin/numfield.hpp"

namespace artin::obstruct {

using arith::u64;
using arith::FactorCache;
using numfield::AlgebraicElement;
using numfield::FieldSpec;
using numfield::ObstructionRecord;

enum class Threshold { Log, LogSquared, Constant };

struct CensusConfig {
  u64 X = 0;
  Threshold family = Threshold::Log;
  double constant_c = 0.0;   // for Threshold::Constant
  u64 q_report_max = 50;     // largest q in per-q tables
  int shards = 1;
  u64 seed = 0;

  double threshold_value() const;  // f(X); ConfigError unless >= 2 and X >= 100
  std::string family_name() const; // "log" | "log2" | "const:c"
};

enum class NormRegime { NormNotUnit, NormOne, NormMinusOne };
const char* norm_regime_name(NormRegime r);

struct PerQCounts {
  u64 b_total = 0;   // primes with an obstruction at q
  u64 b_type1 = 0;   // ... of type I (or Both)
  u64 b_type2 = 0;   // ... of type II (or Both)
};

// per-prime detail kept for invariant checks and report assembly
struct PrimeDetail {
  u64 p = 0;
  Int order;
  Int exponent;
  std::vector<ObstructionRecord> records;
  bool failing_p2 = false;  // order <= (p^2-1)/f(X)
  bool failing_p1 = false;  // order <= (p+1)/f(X)
};

struct CensusReport {
  u64 total_primes_in_class = 0;
  u64 nonmembers = 0;
  u64 pi_x = 0;  // primes <= X
  std::vector<std::pair<u64, std::string>> excluded;  // ascending p
  std::map<u64, PerQCounts> per_q;
  u64 failing_p2 = 0;
  u64 failing_p1 = 0;
  NormRegime norm_regime = NormRegime::NormNotUnit;
  std::map<Int, u64> order_histogram;  // exponent/order -> count
  std::vector<PrimeDetail> details;    // ascending p
  CensusConfig config;
  // screening data echoed for the per-q table
  Int disc_screen;
  Int norm_num;
  Int norm_den;
};

// True iff alpha is a root of unity, decided exactly through its minimal
// polynomial being cyclotomic.
bool root_of_unity_screen(const AlgebraicElement& alpha);

// Full census over the member primes of the class selector up to cfg.X.
// Preconditions: alpha nonzero and not a root of unity (RootOfUnityError).
// The supplied cache is read concurrently during the sweep; factorization
// misses are merged into it serially at the end.
CensusReport run_census(const FieldSpec& field, const AlgebraicElement& alpha,
                        const frobclass::ClassSelector& sel,
                        const CensusConfig& cfg, FactorCache* cache = nullptr);

// Serial reference implementation (identical output; no OpenMP).
CensusReport run_census_serial(const FieldSpec& field,
                               const AlgebraicElement& alpha,
                               const frobclass::ClassSelector& sel,
                               const CensusConfig& cfg,
                               FactorCache* cache = nullptr);

struct PerQRow {
  u64 q = 0;
  PerQCounts counts;
  double observed_density = 0.0;      // B_typeI / pi(X)
  bool predicted_valid = false;       // q odd, outside disc/norm exclusions
  double predicted_type1 = 0.0;       // 1/(q(q-1))
};

// Rows for all primes q <= q_report_max, ascending.
std::vector<PerQRow> per_q_obstruction_table(const CensusReport& report);

// CSV with header q,B_total,B_typeI,B_typeII,observed_density,predicted_typeI
// (densities with 6 decimal digits; predicted column prints n/a when the
// prediction does not apply).
std::string census_csv(const CensusReport& report);

// Summary JSON text with exactly the keys total_primes_in_class, excluded,
// failing_p2, failing_p1, norm_regime, config.
std::string census_summary_json(const CensusReport& report);

// Cache file format: one line per entry, `n<TAB>p1^e1 p2^e2 ...`, n ascending,
// factors ascending, LF line endings, no trailing whitespace. Entries with
// n < 2 are not stored.
void cache_store(const FactorCache& cache, const std::string& path);
FactorCache cache_load(const std::string& path);

}  // namespace artin::obstruct
