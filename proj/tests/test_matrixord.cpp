#include "artin/matrixord.hpp"

#include <random>

#include "doctest.h"

using namespace artin;
using namespace artin::matrixord;
using arith::u64;
using intpoly::QPoly;
using intpoly::ZPoly;

namespace {

ZPoly zp(std::vector<long long> v) {
  ZPoly f(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) f[i] = v[i];
  intpoly::trim(f);
  return f;
}

QPoly qp(std::vector<long long> v) { return intpoly::q_from_z(zp(std::move(v))); }

RationalMatrix fib() { return RationalMatrix::from_integers(2, {0, 1, 1, 1}); }
RationalMatrix unipotent() { return RationalMatrix::from_integers(2, {1, 1, 0, 1}); }
RationalMatrix jordan2() { return RationalMatrix::from_integers(2, {2, 1, 0, 2}); }

// oracle: order by repeated multiplication mod p
u64 scan_matrix_order(const RationalMatrix& A, u64 p) {
  const int n = A.n;
  std::vector<u64> m((std::size_t)n * n), acc;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int v = A.at(i, j).num % Int(p);
      if (v < 0) v += Int(p);
      u64 num = v.convert_to<u64>();
      Int d = A.at(i, j).den % Int(p);
      m[(std::size_t)(i * n + j)] =
          arith::mulmod(num, arith::invmod(d.convert_to<u64>(), p), p);
    }
  acc = m;
  auto is_id = [&](const std::vector<u64>& x) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (x[(std::size_t)(i * n + j)] != (i == j ? 1u : 0u)) return false;
    return true;
  };
  u64 k = 1;
  while (!is_id(acc)) {
    std::vector<u64> next((std::size_t)n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < n; ++t)
        for (int j = 0; j < n; ++j)
          next[(std::size_t)(i * n + j)] =
              (u64)(((unsigned __int128)acc[(std::size_t)(i * n + t)] *
                         m[(std::size_t)(t * n + j)] +
                     next[(std::size_t)(i * n + j)]) %
                    p);
    acc = std::move(next);
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("char_poly examples") {
  CHECK(char_poly(fib()) == qp({-1, -1, 1}));
  CHECK(char_poly(RationalMatrix::from_integers(3, {1, 0, 0, 0, 1, 0, 0, 0, 1})) ==
        qp({-1, 3, -3, 1}));  // (t-1)^3
  CHECK(char_poly(unipotent()) == qp({1, -2, 1}));  // (t-1)^2
}

TEST_CASE("min_poly examples") {
  CHECK(min_poly(RationalMatrix::from_integers(2, {1, 0, 0, 1})) == qp({-1, 1}));
  CHECK(min_poly(unipotent()) == qp({1, -2, 1}));
  CHECK(min_poly(fib()) == qp({-1, -1, 1}));
  CHECK(intpoly::q_max_multiplicity(min_poly(unipotent())) == 2);
  CHECK(intpoly::q_max_multiplicity(min_poly(fib())) == 1);
}

TEST_CASE("Cayley-Hamilton and min | char on random matrices") {
  std::mt19937_64 rng(4711);
  for (int iter = 0; iter < 25; ++iter) {
    int n = 2 + (int)(rng() % 3);
    std::vector<long long> v((std::size_t)n * n);
    for (auto& x : v) x = (long long)(rng() % 11) - 5;
    RationalMatrix A = [&]() -> RationalMatrix {
      try {
        return RationalMatrix::from_integers(n, v);
      } catch (const MathError&) {
        return fib();  // singular draw; substitute something harmless
      }
    }();
    QPoly cp = char_poly(A);
    // evaluate cp at A exactly
    std::vector<Rat> acc((std::size_t)A.n * A.n, Rat(0));
    std::vector<Rat> power((std::size_t)A.n * A.n, Rat(0));
    for (int i = 0; i < A.n; ++i) power[(std::size_t)(i * A.n + i)] = Rat(1);
    for (std::size_t k = 0; k < cp.size(); ++k) {
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += cp[k] * power[i];
      // power *= A
      std::vector<Rat> next((std::size_t)A.n * A.n, Rat(0));
      for (int i = 0; i < A.n; ++i)
        for (int t = 0; t < A.n; ++t)
          for (int j = 0; j < A.n; ++j)
            next[(std::size_t)(i * A.n + j)] +=
                power[(std::size_t)(i * A.n + t)] * A.at(t, j);
      power = std::move(next);
    }
    for (const Rat& x : acc) CHECK(x.is_zero());

    QPoly mp = min_poly(A);
    QPoly q, r;
    intpoly::q_divmod(cp, mp, q, r);
    CHECK(r.empty());
  }
}

TEST_CASE("matrix_order_direct examples") {
  CHECK(matrix_order_direct(fib(), 7) == 16);      // Pisano period of 7
  CHECK(matrix_order_direct(unipotent(), 13) == 13);
  CHECK(matrix_order_direct(RationalMatrix::from_integers(2, {1, 0, 0, 1}), 101) == 1);
  CHECK_THROWS_AS(
      matrix_order_direct(RationalMatrix::create(
                              2, {Rat(Int(1), Int(3)), Rat(0), Rat(0), Rat(1)}),
                          3),
      BadPrimeError);
}

TEST_CASE("matrix_order_eigenpath examples") {
  auto r1 = matrix_order_eigenpath(fib(), 7);
  CHECK_FALSE(r1.excluded_prime);
  CHECK(r1.order == 16);
  CHECK(r1.diagonalizable);

  auto r2 = matrix_order_eigenpath(unipotent(), 13);
  CHECK_FALSE(r2.excluded_prime);
  CHECK(r2.order == 13);
  CHECK_FALSE(r2.diagonalizable);

  // min poly (t-2)^2: order p * ord_p(2); at p = 7 that is 7 * 3 = 21
  auto r3 = matrix_order_eigenpath(jordan2(), 7);
  CHECK_FALSE(r3.excluded_prime);
  CHECK(r3.order == 21);
  CHECK_FALSE(r3.diagonalizable);
  CHECK(scan_matrix_order(jordan2(), 7) == 21);

  // p = 2 is excluded (p <= n and p | det = 4)
  auto r4 = matrix_order_eigenpath(jordan2(), 2);
  CHECK(r4.excluded_prime);
}

TEST_CASE("matrix_order Both mode") {
  auto r = matrix_order(fib(), 7, OrderMethod::Both);
  CHECK(r.order == 16);
  CHECK(r.method == OrderMethod::Both);

  auto r2 = matrix_order(unipotent(), 13, OrderMethod::Both);
  CHECK(r2.order == 13);

  // excluded primes are reported, not computed
  auto half = RationalMatrix::create(2, {Rat(Int(1), Int(2)), Rat(0), Rat(0), Rat(1)});
  auto r3 = matrix_order(half, 2, OrderMethod::Both);
  CHECK(r3.excluded_prime);
}

TEST_CASE("direct equals eigenpath and the scan oracle on small sweeps") {
  std::mt19937_64 rng(1234);
  std::vector<RationalMatrix> mats{fib(), unipotent(), jordan2()};
  for (int iter = 0; iter < 12; ++iter) {
    int n = 2 + (int)(rng() % 3);
    std::vector<long long> v((std::size_t)n * n);
    for (auto& x : v) x = (long long)(rng() % 11) - 5;
    try {
      mats.push_back(RationalMatrix::from_integers(n, v));
    } catch (const MathError&) {
    }
  }
  for (const auto& A : mats) {
    for (u64 p : arith::sieve_primes(60)) {
      auto eig = matrix_order_eigenpath(A, p);
      if (eig.excluded_prime) continue;
      Int direct = matrix_order_direct(A, p);
      CHECK(direct == eig.order);
      if (p <= 31 && A.n == 2) CHECK(direct == scan_matrix_order(A, p));
    }
  }
}

TEST_CASE("order annihilates and is minimal per prime divisor") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 8; ++iter) {
    int n = 2 + (int)(rng() % 2);
    std::vector<long long> v((std::size_t)n * n);
    for (auto& x : v) x = (long long)(rng() % 7) - 3;
    RationalMatrix A = [&]() -> RationalMatrix {
      try {
        return RationalMatrix::from_integers(n, v);
      } catch (const MathError&) {
        return fib();
      }
    }();
    for (u64 p : {11ULL, 31ULL, 101ULL}) {
      Int ord;
      try {
        ord = matrix_order_direct(A, p);
      } catch (const BadPrimeError&) {
        continue;
      }
      // A^ord = I and A^(ord/q) != I for every prime q | ord, checked with
      // an independent little powmod over F_p
      auto reduce = [&](void) {
        std::vector<u64> m((std::size_t)A.n * A.n);
        for (int i = 0; i < A.n; ++i)
          for (int j = 0; j < A.n; ++j) {
            Int x = A.at(i, j).num % Int(p);
            if (x < 0) x += Int(p);
            m[(std::size_t)(i * A.n + j)] = x.convert_to<u64>();
          }
        return m;
      };
      auto mul = [&](const std::vector<u64>& a, const std::vector<u64>& b) {
        std::vector<u64> c((std::size_t)A.n * A.n, 0);
        for (int i = 0; i < A.n; ++i)
          for (int t = 0; t < A.n; ++t)
            for (int j = 0; j < A.n; ++j)
              c[(std::size_t)(i * A.n + j)] =
                  (u64)(((unsigned __int128)a[(std::size_t)(i * A.n + t)] *
                             b[(std::size_t)(t * A.n + j)] +
                         c[(std::size_t)(i * A.n + j)]) %
                        p);
        return c;
      };
      auto powm = [&](Int e) {
        std::vector<u64> r((std::size_t)A.n * A.n, 0);
        for (int i = 0; i < A.n; ++i) r[(std::size_t)(i * A.n + i)] = 1;
        auto b = reduce();
        while (e > 0) {
          if (boost::multiprecision::bit_test(e, 0)) r = mul(r, b);
          e >>= 1;
          if (e > 0) b = mul(b, b);
        }
        return r;
      };
      auto is_id = [&](const std::vector<u64>& m) {
        for (int i = 0; i < A.n; ++i)
          for (int j = 0; j < A.n; ++j)
            if (m[(std::size_t)(i * A.n + j)] != (i == j ? 1u : 0u)) return false;
        return true;
      };
      CHECK(is_id(powm(ord)));
      Int rest = ord;
      u64 q = 2;
      while (rest > 1) {
        if (rest % q == 0) {
          CHECK_FALSE(is_id(powm(ord / q)));
          while (rest % q == 0) rest /= q;
        }
        ++q;
        if (Int(q) * q > rest && rest > 1) {
          CHECK_FALSE(is_id(powm(ord / rest)));
          break;
        }
      }
    }
  }
}

TEST_CASE("similar matrices have equal orders at good primes") {
  std::mt19937_64 rng(99);
  RationalMatrix A = fib();
  // U = [[1,1],[0,1]] * [[1,0],[1,1]] style integer unimodular conjugators
  std::vector<RationalMatrix> conjugators;
  conjugators.push_back(RationalMatrix::from_integers(2, {1, 3, 0, 1}));
  conjugators.push_back(RationalMatrix::from_integers(2, {1, 0, -2, 1}));
  conjugators.push_back(RationalMatrix::from_integers(2, {2, 1, 1, 1}));  // det 1
  for (const auto& U : conjugators) {
    // compute U A U^{-1} exactly: U^{-1} = adj(U)/det(U), det = +-1
    Rat det = U.det;
    std::vector<Rat> inv(4);
    inv[0] = U.at(1, 1) / det;
    inv[1] = -U.at(0, 1) / det;
    inv[2] = -U.at(1, 0) / det;
    inv[3] = U.at(0, 0) / det;
    std::vector<Rat> tmp(4, Rat(0)), res(4, Rat(0));
    // tmp = U*A
    for (int i = 0; i < 2; ++i)
      for (int t = 0; t < 2; ++t)
        for (int j = 0; j < 2; ++j)
          tmp[(std::size_t)(i * 2 + j)] += U.at(i, t) * A.at(t, j);
    for (int i = 0; i < 2; ++i)
      for (int t = 0; t < 2; ++t)
        for (int j = 0; j < 2; ++j)
          res[(std::size_t)(i * 2 + j)] +=
              tmp[(std::size_t)(i * 2 + t)] * inv[(std::size_t)(t * 2 + j)];
    RationalMatrix B = RationalMatrix::create(2, res);
    for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 23ULL}) {
      auto ea = matrix_order_eigenpath(A, p);
      auto eb = matrix_order_eigenpath(B, p);
      if (ea.excluded_prime || eb.excluded_prime) continue;
      CHECK(ea.order == eb.order);
    }
  }
}

TEST_CASE("direct equals eigenpath for rational (non-integer) matrices") {
  std::mt19937_64 rng(2718);
  for (int iter = 0; iter < 10; ++iter) {
    int n = 2 + (int)(rng() % 2);
    std::vector<Rat> entries((std::size_t)n * n);
    for (auto& e : entries)
      e = Rat(Int((long long)(rng() % 9) - 4), Int(1 + rng() % 3));
    RationalMatrix A = [&]() -> RationalMatrix {
      try {
        return RationalMatrix::create(n, entries);
      } catch (const MathError&) {
        return fib();
      }
    }();
    for (u64 p : arith::sieve_primes(200)) {
      auto eig = matrix_order_eigenpath(A, p);
      if (eig.excluded_prime) continue;
      CHECK(matrix_order_direct(A, p) == eig.order);
    }
  }
}

TEST_CASE("irreducibility_check mirrors the shared certification") {
  CHECK(irreducibility_check(zp({-1, -1, 1})).status == intpoly::Irred::Irreducible);
  auto red = irreducibility_check(zp({-4, 0, 0, 0, 1}));
  CHECK(red.status == intpoly::Irred::Reducible);
}

TEST_CASE("matrix_census regimes and refusals") {
  frobclass::ClassSelector all2;
  all2.mode = frobclass::SelMode::AllDegreeTwo;
  obstruct::CensusConfig cfg;
  cfg.X = 2000;
  cfg.family = obstruct::Threshold::Log;
  cfg.shards = 2;
  cfg.seed = 3;

  // Fibonacci matrix: det -1, NormMinusOne; orders divide 2(p+1) at inert p
  auto rep = matrix_census(fib(), all2, cfg);
  CHECK(rep.norm_regime == obstruct::NormRegime::NormMinusOne);
  for (const auto& d : rep.details) CHECK(Int(2) * (d.p + 1) % d.order == 0);

  // |det| != 1 with irreducible quadratic char poly: NormNotUnit
  auto A = RationalMatrix::from_integers(2, {0, 4, 1, 1});  // t^2 - t - 4, det -4
  auto rep2 = matrix_census(A, all2, cfg);
  CHECK(rep2.norm_regime == obstruct::NormRegime::NormNotUnit);

  // trace-zero companions have eigenvalue ratio -1 and are refused
  auto T = RationalMatrix::from_integers(2, {0, 2, 1, 0});  // t^2 - 2
  CHECK_THROWS_AS(matrix_census(T, all2, cfg), MathError);

  // reducible char poly refuses
  auto D = RationalMatrix::from_integers(2, {2, 0, 0, 3});
  CHECK_THROWS_AS(matrix_census(D, all2, cfg), MathError);

  // unipotent (char poly (t-1)^2) also refuses: reducible
  CHECK_THROWS_AS(matrix_census(unipotent(), all2, cfg), MathError);

  // eigenvalue ratio a root of unity refuses: companion of x^2+4
  auto R = RationalMatrix::from_integers(2, {0, -4, 1, 0});
  CHECK_THROWS_AS(matrix_census(R, all2, cfg), MathError);
}

TEST_CASE("matrix_census equals the field census on the companion field") {
  frobclass::ClassSelector all2;
  all2.mode = frobclass::SelMode::AllDegreeTwo;
  obstruct::CensusConfig cfg;
  cfg.X = 1500;
  cfg.family = obstruct::Threshold::Log;
  cfg.shards = 1;
  auto rep = matrix_census(fib(), all2, cfg);
  auto K = numfield::FieldSpec::create(zp({-1, -1, 1}));
  auto theta = numfield::AlgebraicElement::generator(K);
  auto rep2 = obstruct::run_census(*K, theta, all2, cfg);
  CHECK(obstruct::census_csv(rep) == obstruct::census_csv(rep2));
  CHECK(obstruct::census_summary_json(rep) == obstruct::census_summary_json(rep2));

  // the matrix order at inert primes equals the census order there
  for (const auto& d : rep.details) {
    auto mo = matrix_order(fib(), d.p, OrderMethod::Both);
    REQUIRE_FALSE(mo.excluded_prime);
    CHECK(mo.order == d.order);
  }
}
