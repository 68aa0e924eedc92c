#include "artin/obstruct.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

using namespace artin;
using namespace artin::obstruct;
using frobclass::ClassSelector;
using frobclass::SelMode;
using numfield::AlgebraicElement;
using numfield::FieldPtr;
using numfield::FieldSpec;
using intpoly::ZPoly;

namespace {

ZPoly zp(std::vector<long long> v) {
  ZPoly f(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) f[i] = v[i];
  intpoly::trim(f);
  return f;
}

FieldPtr quartic_field() { return FieldSpec::create(zp({-11, 28, -10, -4, 1})); }

ClassSelector minus_minus() {
  ClassSelector sel;
  sel.mode = SelMode::QuadraticSigns;
  sel.signs = {{3, -1}, {5, -1}};
  return sel;
}

ClassSelector all_degree_two() {
  ClassSelector sel;
  sel.mode = SelMode::AllDegreeTwo;
  return sel;
}

CensusConfig config(arith::u64 X, int shards = 1) {
  CensusConfig cfg;
  cfg.X = X;
  cfg.family = Threshold::Log;
  cfg.q_report_max = 30;
  cfg.shards = shards;
  cfg.seed = 7;
  return cfg;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("root_of_unity_screen examples") {
  auto K2 = FieldSpec::create(zp({-3, 0, 1}));
  auto minus_one = AlgebraicElement::rational(K2, Rat(-1));
  CHECK(root_of_unity_screen(minus_one));
  auto alpha = AlgebraicElement::create(K2, zp({2, 1}), 1);  // 2 + sqrt3
  CHECK_FALSE(root_of_unity_screen(alpha));
  // (1 + sqrt(-3))/2 is a 6th root of unity in Q(sqrt(-3))
  auto Km3 = FieldSpec::create(zp({3, 0, 1}));
  auto zeta6 = AlgebraicElement::create(Km3, zp({1, 1}), 2);
  CHECK(root_of_unity_screen(zeta6));
  auto two = AlgebraicElement::rational(Km3, Rat(2));
  CHECK_FALSE(root_of_unity_screen(two));
}

TEST_CASE("census norm regimes and basic counts") {
  auto K = quartic_field();
  auto theta = AlgebraicElement::generator(K);
  auto rep = run_census(*K, theta, minus_minus(), config(2000));
  CHECK(rep.norm_regime == NormRegime::NormNotUnit);
  CHECK(rep.norm_num == -11);
  // conservation: members + nonmembers + excluded = pi(X)
  CHECK(rep.total_primes_in_class + rep.nonmembers + rep.excluded.size() ==
        rep.pi_x);
  CHECK(rep.details.size() == rep.total_primes_in_class);

  // 11 splits completely (both signs +1), so the norm exclusion surfaces in
  // the split class rather than in the (-1,-1) class
  ClassSelector split;
  split.mode = SelMode::PatternMatch;
  split.pattern.entries = {{1, 4}};
  auto rep_split = run_census(*K, theta, split, config(2000));
  bool has11 = false;
  for (auto& [p, why] : rep_split.excluded)
    if (p == 11 && why == "divides norm numerator") has11 = true;
  CHECK(has11);
  CHECK(rep_split.total_primes_in_class + rep_split.nonmembers +
            rep_split.excluded.size() ==
        rep_split.pi_x);

  // norm-one element: every order divides p+1
  auto K2 = FieldSpec::create(zp({-3, 0, 1}));
  auto alpha = AlgebraicElement::create(K2, zp({2, 1}), 1);
  auto rep2 = run_census(*K2, alpha, all_degree_two(), config(2000));
  CHECK(rep2.norm_regime == NormRegime::NormOne);
  for (const auto& d : rep2.details) CHECK(Int(d.p + 1) % d.order == 0);

  // root of unity is rejected up front
  auto one = AlgebraicElement::rational(K2, Rat(1));
  CHECK_THROWS_AS(run_census(*K2, one, all_degree_two(), config(2000)),
                  RootOfUnityError);
}

TEST_CASE("census reconstruction identity and per-q bookkeeping") {
  auto K = quartic_field();
  auto theta = AlgebraicElement::generator(K);
  auto rep = run_census(*K, theta, all_degree_two(), config(3000));
  for (const auto& d : rep.details) {
    Int prod = 1;
    for (const auto& rec : d.records)
      for (int i = 0; i < rec.degree_l; ++i) prod *= rec.q;
    CHECK(d.exponent == Int(d.p) * d.p - 1);
    CHECK(d.exponent / d.order == prod);
  }
  for (const auto& [q, counts] : rep.per_q) {
    CHECK(counts.b_type1 + counts.b_type2 >= counts.b_total);
    CHECK(counts.b_total <= rep.total_primes_in_class);
  }
}

TEST_CASE("per-q counts against a scan-order oracle at small X") {
  // independent route: order by linear scan per residue field, obstruction at
  // q read off as q | (p^2-1)/ord
  auto K = FieldSpec::create(zp({-3, 0, 1}));
  auto alpha = AlgebraicElement::create(K, zp({2, 1}), 1);
  const arith::u64 X = 300;
  auto rep = run_census(*K, alpha, all_degree_two(), config(X));
  std::map<arith::u64, arith::u64> oracle_total, oracle_t1, oracle_t2;
  for (arith::u64 p : arith::sieve_primes(X)) {
    auto st = numfield::splitting_type(*K, p);
    if (p == 2 || st.ramified) continue;
    if (st.pattern.entries != std::vector<std::pair<int, int>>{{2, 1}}) continue;
    auto factors = polyfp::factor_full(intpoly::reduce_mod_p(K->min_poly, p), 1);
    auto residues = numfield::reduce_mod_prime(alpha, p, factors);
    polyfp::PolyFp cur = residues[0];
    arith::u64 ord = 1;
    while (!cur.is_one()) {
      cur = polyfp::rem(polyfp::mul(cur, residues[0]), factors[0].first);
      ++ord;
    }
    arith::u64 index = (p * p - 1) / ord;
    for (const auto& [q, e] : arith::factorize(index).parts) {
      (void)e;
      oracle_total[q] += 1;
      if (q == 2) {
        oracle_t1[q] += 1;
        oracle_t2[q] += 1;
      } else if ((p - 1) % q == 0) {
        oracle_t1[q] += 1;
      } else {
        oracle_t2[q] += 1;
      }
    }
  }
  for (const auto& [q, counts] : rep.per_q) {
    CHECK(counts.b_total == oracle_total[q]);
    CHECK(counts.b_type1 == oracle_t1[q]);
    CHECK(counts.b_type2 == oracle_t2[q]);
  }
  for (const auto& [q, c] : oracle_total) {
    REQUIRE(rep.per_q.count(q) == 1);
    CHECK(rep.per_q.at(q).b_total == c);
  }
}

TEST_CASE("shard independence and serial reference equality") {
  auto K = quartic_field();
  auto theta = AlgebraicElement::generator(K);
  auto base = run_census_serial(*K, theta, minus_minus(), config(2000, 1));
  for (int shards : {1, 4, 8}) {
    auto rep = run_census(*K, theta, minus_minus(), config(2000, shards));
    CHECK(census_csv(rep) == census_csv(base));
    CHECK(census_summary_json(rep) == census_summary_json(base));
    CHECK(rep.order_histogram == base.order_histogram);
  }
}

TEST_CASE("summary json carries the exact keys") {
  auto K = FieldSpec::create(zp({-3, 0, 1}));
  auto alpha = AlgebraicElement::create(K, zp({2, 1}), 1);
  auto rep = run_census(*K, alpha, all_degree_two(), config(500));
  std::string js = census_summary_json(rep);
  for (const char* key :
       {"\"total_primes_in_class\"", "\"excluded\"", "\"failing_p2\"",
        "\"failing_p1\"", "\"norm_regime\"", "\"config\""})
    CHECK(js.find(key) != std::string::npos);
  CHECK(js.find("shards") == std::string::npos);
  CHECK(js.find("NormOne") != std::string::npos);
}

TEST_CASE("csv shape") {
  auto K = quartic_field();
  auto theta = AlgebraicElement::generator(K);
  auto rep = run_census(*K, theta, all_degree_two(), config(1000));
  std::string csv = census_csv(rep);
  CHECK(csv.rfind("q,B_total,B_typeI,B_typeII,observed_density,predicted_typeI\n",
                  0) == 0);
  // q = 2 and the ramified q = 3, 5 and the norm prime 11 print n/a
  CHECK(csv.find("\n2,") != std::string::npos);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    auto comma = line.find(',');
    arith::u64 q = std::stoull(line.substr(0, comma));
    bool na = line.substr(line.rfind(',') + 1) == "n/a";
    if (q == 2 || q == 3 || q == 5 || q == 11)
      CHECK(na);
    else
      CHECK_FALSE(na);
  }
}

TEST_CASE("mixed-pattern class census (order-2 class of x^3-2)") {
  // members factor as (deg 1)(deg 2); the residue exponent is still p^2-1,
  // so the full type-I/II machinery applies
  auto K = FieldSpec::create(zp({-2, 0, 0, 1}));
  auto theta = AlgebraicElement::generator(K);
  ClassSelector sel;
  sel.mode = SelMode::PatternMatch;
  sel.pattern.entries = {{1, 1}, {2, 1}};
  auto rep = run_census(*K, theta, sel, config(2000));
  CHECK(rep.norm_regime == NormRegime::NormNotUnit);
  CHECK(rep.total_primes_in_class > 0);
  for (const auto& d : rep.details) {
    CHECK(d.exponent == Int(d.p) * d.p - 1);
    Int prod = 1;
    for (const auto& rec : d.records) {
      for (int i = 0; i < rec.degree_l; ++i) prod *= rec.q;
      if (rec.q != 2) {
        bool t1 = (d.p - 1) % rec.q == 0;
        CHECK(rec.kind == (t1 ? numfield::ObsKind::TypeI : numfield::ObsKind::TypeII));
      } else {
        CHECK(rec.kind == numfield::ObsKind::Both);
      }
    }
    CHECK(d.exponent / d.order == prod);
  }
  // the class has density 1/2 among unramified primes; sanity-check coarsely
  double frac = (double)rep.total_primes_in_class / (double)rep.pi_x;
  CHECK(frac > 0.35);
  CHECK(frac < 0.65);
}

TEST_CASE("degree-1 class census: rational specialization") {
  // K = Q as Q[x]/(x-2), alpha = 2: type-I records against p-1
  auto K1 = FieldSpec::create(zp({-2, 1}));
  auto alpha = AlgebraicElement::generator(K1);
  CHECK(numfield::element_norm(alpha) == Rat(2));
  ClassSelector sel;
  sel.mode = SelMode::PatternMatch;
  sel.pattern.entries = {{1, 1}};
  auto rep = run_census(*K1, alpha, sel, config(2000));
  CHECK(rep.norm_regime == NormRegime::NormNotUnit);
  // p = 2 is excluded (divides the norm numerator and is p=2)
  CHECK(rep.total_primes_in_class + rep.nonmembers + rep.excluded.size() ==
        rep.pi_x);
  CHECK(rep.nonmembers == 0);
  for (const auto& d : rep.details) {
    CHECK(d.exponent == Int(d.p) - 1);
    for (const auto& rec : d.records) CHECK(rec.kind == numfield::ObsKind::TypeI);
  }
  // spot-check against the Euler criterion at q = 3
  auto it = rep.per_q.find(3);
  REQUIRE(it != rep.per_q.end());
  arith::u64 expect = 0;
  for (arith::u64 p : arith::sieve_primes(2000)) {
    if (p == 2 || p % 3 != 1) continue;
    if (arith::powmod(2, (p - 1) / 3, p) == 1) ++expect;
  }
  CHECK(it->second.b_total == expect);
  CHECK(it->second.b_type1 == expect);
  CHECK(it->second.b_type2 == 0);
}

TEST_CASE("cache store/load round trip and merge") {
  arith::FactorCache cache;
  arith::factorize(48, &cache);
  arith::factorize(9998200080ULL, &cache);
  std::string path = temp_path("artin_cache_test.txt");
  cache_store(cache, path);
  auto loaded = cache_load(path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded.find(48)->parts == cache.find(48)->parts);
  CHECK(loaded.find(9998200080ULL)->parts == cache.find(9998200080ULL)->parts);

  // byte-exact file expectations: ascending n, LF endings, no trailing blanks
  std::ifstream in(path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text == "48\t2^4 3^1\n9998200080\t2^4 3^2 5^1 11^1 29^1 101^1 431^1\n");

  // merge of disjoint caches is their union
  arith::FactorCache other;
  arith::factorize(100, &other);
  cache.merge(other);
  CHECK(cache.size() == 3);

  std::remove(path.c_str());
}

TEST_CASE("cache load rejects malformed and conflicting input") {
  std::string path = temp_path("artin_cache_bad.txt");
  {
    std::ofstream out(path, std::ios::binary);
    out << "48\t2^4 3^1\n49\tnot-a-factor\n";
  }
  CHECK_THROWS_WITH_AS(cache_load(path), doctest::Contains("line 2"), IoError);
  {
    std::ofstream out(path, std::ios::binary);
    out << "48\t2^4 3^1\n48\t2^3 6^1\n";
  }
  CHECK_THROWS_AS(cache_load(path), IoError);
  {
    std::ofstream out(path, std::ios::binary);
    out << "48\t2^2 3^1\n";  // parts do not multiply back
  }
  CHECK_THROWS_AS(cache_load(path), IoError);
  std::remove(path.c_str());
}

TEST_CASE("census fills the shared cache deterministically") {
  auto K = FieldSpec::create(zp({-3, 0, 1}));
  auto alpha = AlgebraicElement::create(K, zp({2, 1}), 1);
  arith::FactorCache c1, c2;
  auto r1 = run_census(*K, alpha, all_degree_two(), config(1000, 4), &c1);
  auto r2 = run_census_serial(*K, alpha, all_degree_two(), config(1000), &c2);
  CHECK(census_csv(r1) == census_csv(r2));
  CHECK(c1.size() == c2.size());
  // reloaded cache reproduces the run byte for byte
  auto r3 = run_census(*K, alpha, all_degree_two(), config(1000, 2), &c1);
  CHECK(census_csv(r3) == census_csv(r1));
}

TEST_CASE("config validation") {
  auto K = FieldSpec::create(zp({-3, 0, 1}));
  auto alpha = AlgebraicElement::create(K, zp({2, 1}), 1);
  CensusConfig bad = config(50);
  CHECK_THROWS_AS(run_census(*K, alpha, all_degree_two(), bad), ConfigError);
  CensusConfig small_const = config(1000);
  small_const.family = Threshold::Constant;
  small_const.constant_c = 1.0;
  CHECK_THROWS_AS(run_census(*K, alpha, all_degree_two(), small_const),
                  ConfigError);
  CensusConfig huge = config(arith::kSieveLimitMax + 1);
  CHECK_THROWS_AS(run_census(*K, alpha, all_degree_two(), huge), ResourceError);
}
