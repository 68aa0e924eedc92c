// Benchmark: serial reference census vs the OpenMP sweep, plus the two
// matrix-order paths, on built-in inputs. Verifies that the parallel run
// reproduces the serial report byte for byte before reporting speedups.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "artin/matrixord.hpp"
#include "artin/obstruct.hpp"

using namespace artin;
using arith::u64;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

intpoly::ZPoly zp(std::vector<long long> v) {
  intpoly::ZPoly f(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) f[i] = v[i];
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  u64 X = argc > 1 ? std::stoull(argv[1]) : 200000;
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both runs are serial\n");
#endif
  auto field = numfield::FieldSpec::create(zp({-11, 28, -10, -4, 1}));
  auto theta = numfield::AlgebraicElement::generator(field);
  frobclass::ClassSelector sel;
  sel.mode = frobclass::SelMode::AllDegreeTwo;
  obstruct::CensusConfig cfg;
  cfg.X = X;
  cfg.family = obstruct::Threshold::Log;
  cfg.shards = 64;
  cfg.seed = 1;

  std::printf("census over the all-degree-2 class of the quartic field, X = %llu\n",
              (unsigned long long)X);
  auto t0 = Clock::now();
  auto serial = obstruct::run_census_serial(*field, theta, sel, cfg);
  double ts = seconds_since(t0);
  std::printf("  serial reference: %.3f s (%llu member primes)\n", ts,
              (unsigned long long)serial.total_primes_in_class);

  t0 = Clock::now();
  auto parallel = obstruct::run_census(*field, theta, sel, cfg);
  double tp = seconds_since(t0);
  std::printf("  parallel sweep:   %.3f s\n", tp);

  bool identical = obstruct::census_csv(serial) == obstruct::census_csv(parallel) &&
                   obstruct::census_summary_json(serial) ==
                       obstruct::census_summary_json(parallel);
  std::printf("  outputs identical: %s\n", identical ? "yes" : "NO (bug)");
  std::printf("  speedup: %.2fx\n", tp > 0 ? ts / tp : 0.0);

  // matrix order paths on the Fibonacci matrix
  auto fib = matrixord::RationalMatrix::from_integers(2, {0, 1, 1, 1});
  auto primes = arith::sieve_primes(20000);
  arith::FactorCache cache;
  t0 = Clock::now();
  for (u64 p : primes) {
    if (p <= 5) continue;
    (void)matrixord::matrix_order_direct(fib, p, nullptr, &cache);
  }
  double td = seconds_since(t0);
  t0 = Clock::now();
  for (u64 p : primes) {
    if (p <= 5) continue;
    (void)matrixord::matrix_order_eigenpath(fib, p, nullptr, &cache);
  }
  double te = seconds_since(t0);
  std::printf("matrix orders over %zu primes: direct %.3f s, eigen path %.3f s\n",
              primes.size(), td, te);
  return identical ? 0 : 1;
}
