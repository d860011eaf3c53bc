#pragma once

#include <gmpxx.h>

#include <string>

#include "heckeforge/errors.hpp"

namespace heckeforge {

// Exact rationals, arbitrary precision.
struct RationalField {
  using Elem = mpq_class;

  long characteristic() const { return 0; }
  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_long(long x) const { return Elem(x); }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    require(a != 0, Errc::Internal, "division by zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  std::string to_string(const Elem& a) const { return a.get_str(); }
  std::string name() const { return "Q"; }
};

// The prime field F_p for a machine-word prime.
struct PrimeField {
  long p = 2;

  using Elem = long;

  explicit PrimeField(long prime) : p(prime) {
    require(prime >= 2, Errc::ConfigError, "field characteristic must be >= 2");
  }
  long characteristic() const { return p; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_long(long x) const {
    long r = x % p;
    return r < 0 ? r + p : r;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem add(const Elem& a, const Elem& b) const { return (a + b) % p; }
  Elem sub(const Elem& a, const Elem& b) const { return from_long(a - b); }
  Elem mul(const Elem& a, const Elem& b) const { return (a * b) % p; }
  Elem neg(const Elem& a) const { return a == 0 ? 0 : p - a; }
  Elem inv(const Elem& a) const {
    require(a != 0, Errc::Internal, "division by zero");
    // extended Euclid
    long t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      long q = r / nr;
      long tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return from_long(t);
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  std::string to_string(const Elem& a) const { return std::to_string(a); }
  std::string name() const { return "F" + std::to_string(p); }
};

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// q must be a prime power; returns the prime.
inline long prime_power_base(long q) {
  require(q >= 2, Errc::ConfigError, "q must be >= 2");
  long p = q;
  for (long d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  long m = q;
  while (m % p == 0) m /= p;
  require(m == 1, Errc::ConfigError, "q = " + std::to_string(q) + " is not a prime power");
  return p;
}

}  // namespace heckeforge
