#include "artin/obstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace artin::obstruct {

using frobclass::ClassSelector;
using frobclass::Membership;
using numfield::ObsKind;

double CensusConfig::threshold_value() const {
  if (X < 100) throw ConfigError("census X must be >= 100");
  double f = 0;
  switch (family) {
    case Threshold::Log: f = std::log((double)X); break;
    case Threshold::LogSquared: {
      double l = std::log((double)X);
      f = l * l;
      break;
    }
    case Threshold::Constant: f = constant_c; break;
  }
  if (!(f >= 2.0))
    throw ConfigError("census threshold f(X) must be >= 2 at the configured X");
  return f;
}

std::string CensusConfig::family_name() const {
  switch (family) {
    case Threshold::Log: return "log";
    case Threshold::LogSquared: return "log2";
    case Threshold::Constant: {
      std::ostringstream os;
      os << "const:" << constant_c;
      return os.str();
    }
  }
  return "?";
}

const char* norm_regime_name(NormRegime r) {
  switch (r) {
    case NormRegime::NormNotUnit: return "NormNotUnit";
    case NormRegime::NormOne: return "NormOne";
    case NormRegime::NormMinusOne: return "NormMinusOne";
  }
  return "?";
}

bool root_of_unity_screen(const AlgebraicElement& alpha) {
  if (alpha.is_zero()) throw MathError("root_of_unity_screen: zero element");
  auto m = numfield::element_min_poly(alpha);
  if (!intpoly::q_is_integral(m)) return false;  // not an algebraic integer
  return intpoly::cyclotomic_index(intpoly::z_from_q(m)).has_value();
}

namespace {

// Per-member computation. The exponent structure decides the obstruction
// route: exponent p^2-1 (inertia degrees <= 2 with a degree-2 part) gets the
// type-I/II records, exponent p-1 (linear class) gets all-TypeI records,
// anything else gets order statistics only.
PrimeDetail process_member(const AlgebraicElement& alpha, u64 p, double fx,
                           const FactorCache* shared, FactorCache* scratch) {
  PrimeDetail d;
  d.p = p;
  auto res = numfield::residue_order(alpha, p, shared, scratch);
  d.order = res.order;
  d.exponent = res.group_exponent;

  const Int p2m1 = Int(p) * p - 1;
  const Int pm1 = Int(p) - 1;
  if (res.group_exponent == p2m1 || res.group_exponent == pm1) {
    Int index_int = res.group_exponent / res.order;
    u64 index = index_int.convert_to<u64>();
    arith::Factorization fact;
    if (shared && shared->find(index)) {
      fact = *shared->find(index);
    } else {
      fact = arith::factorize(index, scratch);
    }
    const bool deg2 = res.group_exponent == p2m1;
    for (const auto& [q, e] : fact.parts) {
      ObstructionRecord rec;
      rec.prime_p = p;
      rec.q = q;
      rec.degree_l = e;
      if (!deg2) {
        rec.kind = ObsKind::TypeI;  // the whole group has exponent p-1
      } else if (q == 2) {
        rec.kind = ObsKind::Both;
      } else {
        rec.kind = ((p - 1) % q == 0) ? ObsKind::TypeI : ObsKind::TypeII;
      }
      d.records.push_back(rec);
    }
  }

  const long double ord_ld = d.order.convert_to<long double>();
  d.failing_p2 = ord_ld <= (long double)(p2m1.convert_to<long double>()) / fx;
  d.failing_p1 = ord_ld <= (long double)(p + 1) / fx;
  return d;
}

struct MemberScan {
  std::vector<u64> members;
  std::vector<std::pair<u64, std::string>> excluded;
  u64 nonmembers = 0;
  u64 pi_x = 0;
};

MemberScan scan_classes(const FieldSpec& field, const AlgebraicElement& alpha,
                        const ClassSelector& sel, u64 X) {
  MemberScan scan;
  auto primes = arith::sieve_primes(X);
  scan.pi_x = primes.size();
  const Int norm_num_abs = [&] {
    Rat n = numfield::element_norm(alpha);
    return n.num < 0 ? Int(-n.num) : n.num;
  }();
  for (u64 p : primes) {
    auto r = frobclass::classify_prime(field, sel, p);
    if (r.membership == Membership::Excluded) {
      scan.excluded.emplace_back(p, r.reason);
      continue;
    }
    if (r.membership == Membership::NonMember) {
      ++scan.nonmembers;
      continue;
    }
    // element-level exclusions, reported rather than silently skipped
    if (alpha.den % Int(p) == 0) {
      scan.excluded.emplace_back(p, "divides denominator");
      continue;
    }
    if (norm_num_abs % Int(p) == 0) {
      scan.excluded.emplace_back(p, "divides norm numerator");
      continue;
    }
    scan.members.push_back(p);
  }
  return scan;
}

CensusReport assemble(const FieldSpec& field, const AlgebraicElement& alpha,
                      const CensusConfig& cfg, MemberScan&& scan,
                      std::vector<PrimeDetail>&& details) {
  CensusReport rep;
  rep.config = cfg;
  rep.pi_x = scan.pi_x;
  rep.total_primes_in_class = scan.members.size();
  rep.nonmembers = scan.nonmembers;
  rep.excluded = std::move(scan.excluded);
  rep.disc_screen = field.poly_disc;
  Rat norm = numfield::element_norm(alpha);
  rep.norm_num = norm.num;
  rep.norm_den = norm.den;
  if (norm == Rat(1))
    rep.norm_regime = NormRegime::NormOne;
  else if (norm == Rat(-1))
    rep.norm_regime = NormRegime::NormMinusOne;
  else
    rep.norm_regime = NormRegime::NormNotUnit;

  rep.details = std::move(details);
  for (const PrimeDetail& d : rep.details) {
    if (d.failing_p2) ++rep.failing_p2;
    if (d.failing_p1) ++rep.failing_p1;
    rep.order_histogram[d.exponent / d.order] += 1;
    for (const auto& rec : d.records) {
      PerQCounts& c = rep.per_q[rec.q];
      c.b_total += 1;
      if (rec.kind == ObsKind::TypeI || rec.kind == ObsKind::Both) c.b_type1 += 1;
      if (rec.kind == ObsKind::TypeII || rec.kind == ObsKind::Both) c.b_type2 += 1;
    }
  }
  return rep;
}

void validate_census_inputs(const AlgebraicElement& alpha,
                            const CensusConfig& cfg) {
  if (alpha.is_zero()) throw MathError("census: alpha must be nonzero");
  if (root_of_unity_screen(alpha))
    throw RootOfUnityError("census: alpha is a root of unity");
  if (cfg.shards < 1) throw ConfigError("census: shards must be >= 1");
  if (cfg.X > arith::kSieveLimitMax)
    throw ResourceError(
        "census: X exceeds the sieve budget; no prime range was covered");
  (void)cfg.threshold_value();
}

}  // namespace

CensusReport run_census_serial(const FieldSpec& field,
                               const AlgebraicElement& alpha,
                               const ClassSelector& sel, const CensusConfig& cfg,
                               FactorCache* cache) {
  validate_census_inputs(alpha, cfg);
  const double fx = cfg.threshold_value();
  MemberScan scan = scan_classes(field, alpha, sel, cfg.X);
  FactorCache scratch(cache);
  std::vector<PrimeDetail> details(scan.members.size());
  for (std::size_t i = 0; i < scan.members.size(); ++i)
    details[i] = process_member(alpha, scan.members[i], fx, cache, &scratch);
  if (cache) cache->merge(scratch);
  return assemble(field, alpha, cfg, std::move(scan), std::move(details));
}

CensusReport run_census(const FieldSpec& field, const AlgebraicElement& alpha,
                        const ClassSelector& sel, const CensusConfig& cfg,
                        FactorCache* cache) {
  validate_census_inputs(alpha, cfg);
  const double fx = cfg.threshold_value();
  MemberScan scan = scan_classes(field, alpha, sel, cfg.X);
  const std::size_t n = scan.members.size();
  std::vector<PrimeDetail> details(n);
  // contiguous shard blocks; results land in per-prime slots, so the
  // aggregation below is identical for any shard count and thread count
  const std::size_t blocks = (std::size_t)cfg.shards;
  const std::size_t block_len = n == 0 ? 1 : (n + blocks - 1) / blocks;
  std::vector<FactorCache> local;
#ifdef _OPENMP
  int max_threads = omp_get_max_threads();
#else
  int max_threads = 1;
#endif
  local.reserve((std::size_t)max_threads);
  for (int t = 0; t < max_threads; ++t) local.emplace_back(cache);
  std::exception_ptr worker_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (std::size_t b = 0; b < blocks; ++b) {
#ifdef _OPENMP
    FactorCache& scratch = local[(std::size_t)omp_get_thread_num()];
#else
    FactorCache& scratch = local[0];
#endif
    try {
      const std::size_t lo = b * block_len;
      const std::size_t hi = std::min(n, lo + block_len);
      for (std::size_t i = lo; i < hi; ++i)
        details[i] = process_member(alpha, scan.members[i], fx, cache, &scratch);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(census_error)
#endif
      if (!worker_error) worker_error = std::current_exception();
    }
  }
  if (worker_error) std::rethrow_exception(worker_error);
  if (cache)
    for (const FactorCache& l : local) cache->merge(l);
  return assemble(field, alpha, cfg, std::move(scan), std::move(details));
}

std::vector<PerQRow> per_q_obstruction_table(const CensusReport& report) {
  std::vector<PerQRow> rows;
  for (u64 q : arith::sieve_primes(report.config.q_report_max)) {
    PerQRow row;
    row.q = q;
    auto it = report.per_q.find(q);
    if (it != report.per_q.end()) row.counts = it->second;
    row.observed_density =
        report.pi_x ? (double)row.counts.b_type1 / (double)report.pi_x : 0.0;
    row.predicted_valid = q != 2 && report.disc_screen % Int(q) != 0 &&
                          report.norm_num % Int(q) != 0 &&
                          report.norm_den % Int(q) != 0;
    row.predicted_type1 = 1.0 / ((double)q * (double)(q - 1));
    rows.push_back(row);
  }
  return rows;
}

std::string census_csv(const CensusReport& report) {
  std::string out = "q,B_total,B_typeI,B_typeII,observed_density,predicted_typeI\n";
  char buf[64];
  for (const PerQRow& row : per_q_obstruction_table(report)) {
    out += std::to_string(row.q);
    out += ",";
    out += std::to_string(row.counts.b_total);
    out += ",";
    out += std::to_string(row.counts.b_type1);
    out += ",";
    out += std::to_string(row.counts.b_type2);
    out += ",";
    std::snprintf(buf, sizeof buf, "%.6f", row.observed_density);
    out += buf;
    out += ",";
    if (row.predicted_valid) {
      std::snprintf(buf, sizeof buf, "%.6f", row.predicted_type1);
      out += buf;
    } else {
      out += "n/a";
    }
    out += "\n";
  }
  return out;
}

std::string census_summary_json(const CensusReport& report) {
  // hand-assembled to pin key order and stay float-free
  std::ostringstream os;
  os << "{\n";
  os << "  \"total_primes_in_class\": " << report.total_primes_in_class << ",\n";
  os << "  \"excluded\": [";
  for (std::size_t i = 0; i < report.excluded.size(); ++i) {
    if (i) os << ", ";
    os << "[" << report.excluded[i].first << ", \"" << report.excluded[i].second
       << "\"]";
  }
  os << "],\n";
  os << "  \"failing_p2\": " << report.failing_p2 << ",\n";
  os << "  \"failing_p1\": " << report.failing_p1 << ",\n";
  os << "  \"norm_regime\": \"" << norm_regime_name(report.norm_regime) << "\",\n";
  os << "  \"config\": {\"X\": " << report.config.X << ", \"threshold_family\": \""
     << report.config.family_name() << "\", \"q_report_max\": "
     << report.config.q_report_max << ", \"seed\": " << report.config.seed
     << "}\n";
  os << "}\n";
  return os.str();
}

void cache_store(const FactorCache& cache, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cache_store: cannot open " + path);
  for (const auto& [n, f] : cache.entries()) {
    if (n < 2) continue;
    out << n << '\t';
    bool first = true;
    for (const auto& [p, e] : f.parts) {
      if (!first) out << ' ';
      first = false;
      out << p << '^' << e;
    }
    out << '\n';
  }
  if (!out) throw IoError("cache_store: write failed for " + path);
}

FactorCache cache_load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cache_load: cannot open " + path);
  FactorCache cache;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      throw IoError("cache_load: empty line " + std::to_string(lineno));
    std::istringstream ls(line);
    u64 n = 0;
    if (!(ls >> n) || n < 2)
      throw IoError("cache_load: malformed line " + std::to_string(lineno));
    arith::Factorization f;
    f.value = n;
    std::string part;
    while (ls >> part) {
      auto caret = part.find('^');
      if (caret == std::string::npos)
        throw IoError("cache_load: malformed factor on line " +
                      std::to_string(lineno));
      try {
        u64 p = std::stoull(part.substr(0, caret));
        int e = std::stoi(part.substr(caret + 1));
        f.parts.emplace_back(p, e);
      } catch (const std::exception&) {
        throw IoError("cache_load: malformed factor on line " +
                      std::to_string(lineno));
      }
    }
    if (!f.check_invariants())
      throw IoError("cache_load: inconsistent entry on line " +
                    std::to_string(lineno));
    if (const arith::Factorization* prev = cache.find(n)) {
      if (prev->parts != f.parts)
        throw CacheIntegrityError("cache_load: conflicting duplicate on line " +
                                  std::to_string(lineno));
      continue;
    }
    cache.put(f);
  }
  return cache;
}

}  // namespace artin::obstruct
