#include "artin/frobclass.hpp"

#include <algorithm>

namespace artin::frobclass {

using polyfp::DegreePattern;

int legendre_symbol(i64 a, u64 p) {
  if (p == 2 || !arith::is_prime(p))
    throw MathError("legendre_symbol: p must be an odd prime");
  u64 r = (u64)(((a % (i64)p) + (i64)p) % (i64)p);
  if (r == 0) return 0;
  u64 t = arith::powmod(r, (p - 1) / 2, p);
  if (t == 1) return 1;
  if (t == p - 1) return -1;
  throw InternalError("legendre_symbol: Euler criterion out of range");
}

void ClassSelector::validate(const FieldSpec& field) const {
  switch (mode) {
    case SelMode::AllDegreeTwo:
      if (field.degree % 2 != 0)
        throw ConfigError("AllDegreeTwo selector on an odd-degree field");
      break;
    case SelMode::QuadraticSigns: {
      if (signs.empty())
        throw ConfigError("QuadraticSigns selector without sign data");
      u64 two_m = 1;
      for (const auto& [n, s] : signs) {
        if (s != 1 && s != -1)
          throw ConfigError("QuadraticSigns: signs must be +1 or -1");
        i64 a = n < 0 ? -n : n;
        if (a < 2) throw ConfigError("QuadraticSigns: bases must satisfy |n| >= 2");
        auto fact = arith::factorize((u64)a);
        for (const auto& [q, e] : fact.parts)
          if (e > 1) throw ConfigError("QuadraticSigns: base not squarefree");
        two_m *= 2;
      }
      for (std::size_t i = 0; i < signs.size(); ++i)
        for (std::size_t j = i + 1; j < signs.size(); ++j) {
          u64 a = (u64)(signs[i].first < 0 ? -signs[i].first : signs[i].first);
          u64 b = (u64)(signs[j].first < 0 ? -signs[j].first : signs[j].first);
          if (arith::gcd_u64(a, b) != 1)
            throw ConfigError("QuadraticSigns: bases must be pairwise coprime");
        }
      if (two_m != (u64)field.degree)
        throw ConfigError(
            "QuadraticSigns: 2^m must equal the field degree (multiquadratic)");
      break;
    }
    case SelMode::PatternMatch: {
      if (pattern.entries.empty())
        throw ConfigError("PatternMatch selector without a pattern");
      if (pattern.total_degree() != field.degree)
        throw ConfigError("PatternMatch: pattern degree sum != field degree");
      break;
    }
  }
}

ClassifyResult classify_prime(const FieldSpec& field, const ClassSelector& sel,
                              u64 p) {
  sel.validate(field);
  if (p == 2) return {Membership::Excluded, "p=2"};
  if (field.poly_disc % Int(p) == 0) return {Membership::Excluded, "ramified"};
  switch (sel.mode) {
    case SelMode::QuadraticSigns: {
      // pure Legendre evaluation; no polynomial factorization needed
      for (const auto& [n, s] : sel.signs) {
        int ls = legendre_symbol(n, p);
        if (ls == 0) return {Membership::Excluded, "divides sign base"};
        if (ls != s) return {Membership::NonMember, ""};
      }
      return {Membership::Member, ""};
    }
    case SelMode::AllDegreeTwo: {
      auto st = numfield::splitting_type(field, p);
      if (st.ramified) return {Membership::Excluded, "ramified"};
      DegreePattern want;
      want.entries = {{2, field.degree / 2}};
      if (st.pattern.entries == want.entries) return {Membership::Member, ""};
      return {Membership::NonMember, ""};
    }
    case SelMode::PatternMatch: {
      auto st = numfield::splitting_type(field, p);
      if (st.ramified) return {Membership::Excluded, "ramified"};
      if (st.pattern.entries == sel.pattern.entries)
        return {Membership::Member, ""};
      return {Membership::NonMember, ""};
    }
  }
  throw InternalError("classify_prime: unreachable");
}

ClassEnumeration enumerate_class(const FieldSpec& field, const ClassSelector& sel,
                                 u64 limit) {
  sel.validate(field);
  ClassEnumeration out;
  auto primes = arith::sieve_primes(limit);
  out.total_primes = primes.size();
  for (u64 p : primes) {
    auto r = classify_prime(field, sel, p);
    if (r.membership == Membership::Member) out.members.push_back(p);
    if (r.membership == Membership::Excluded)
      out.excluded.emplace_back(p, r.reason);
  }
  return out;
}

PatternFrequencies pattern_frequencies(const FieldSpec& field, u64 limit) {
  PatternFrequencies out;
  auto primes = arith::sieve_primes(limit);
  out.total_primes = primes.size();
  std::map<std::vector<std::pair<int, int>>, u64> counts;
  for (u64 p : primes) {
    if (p == 2 || field.poly_disc % Int(p) == 0) {
      ++out.excluded;
      continue;
    }
    auto st = numfield::splitting_type(field, p);
    if (st.ramified) {
      ++out.excluded;
      continue;
    }
    ++out.considered;
    counts[st.pattern.entries] += 1;
  }
  for (const auto& [entries, count] : counts) {
    PatternCount pc;
    pc.pattern.entries = entries;
    pc.pattern.squarefree = true;
    pc.count = count;
    out.patterns.push_back(std::move(pc));
  }
  return out;
}

}  // namespace artin::frobclass
