// Exact big integers and rationals used off the hot path (norms, resultants,
// characteristic polynomials, order values that can exceed 64 bits).
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "artin/errors.hpp"

namespace artin {

using Int = boost::multiprecision::cpp_int;

inline Int int_gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Int int_lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

inline Int int_pow(Int base, unsigned e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Reduced rational with positive denominator.
struct Rat {
  Int num = 0;
  Int den = 1;

  Rat() = default;
  Rat(Int n) : num(std::move(n)), den(1) {}  // NOLINT: implicit by design
  Rat(long long n) : num(n), den(1) {}       // NOLINT
  Rat(Int n, Int d) : num(std::move(n)), den(std::move(d)) { normalize(); }

  void normalize() {
    if (den == 0) throw MathError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      den = 1;
      return;
    }
    Int g = int_gcd(num < 0 ? Int(-num) : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num * b.num, a.den * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw MathError("rational division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }
  Rat operator-() const {
    Rat r = *this;
    r.num = -r.num;
    return r;
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

  std::string str() const {
    std::string s = num.str();
    if (den != 1) s += "/" + den.str();
    return s;
  }
};

}  // namespace artin
