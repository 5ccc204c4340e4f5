#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace tgc {

using Int = boost::multiprecision::cpp_int;

/// Exact rational with canonical form: gcd(|num|, den) = 1, den >= 1, zero is 0/1.
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Serialized as "num/den", always with an explicit denominator.
inline std::string rat_to_string(const Rational& q) {
  return rat_num(q).str() + "/" + rat_den(q).str();
}

inline Rational rat_parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rat_parse: zero denominator in '" + s + "'");
  return Rational(num, den);
}

inline int int_mod_p(const Int& v, int p) {
  Int m = v % p;
  if (m < 0) m += p;
  return static_cast<int>(m);
}

inline int pow_mod(long long base, long long e, int p) {
  long long acc = 1 % p;
  base %= p;
  if (base < 0) base += p;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<int>(acc);
}

inline int inv_mod_p(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw std::domain_error("inv_mod_p: zero is not invertible");
  return pow_mod(a, p - 2, p);  // p prime
}

/// Reduction of a rational mod p; requires p not dividing the denominator.
inline int rat_mod_p(const Rational& q, int p) {
  int den = int_mod_p(rat_den(q), p);
  if (den == 0)
    throw std::domain_error("rat_mod_p: denominator divisible by " + std::to_string(p));
  return static_cast<int>(static_cast<long long>(int_mod_p(rat_num(q), p)) * inv_mod_p(den, p) % p);
}

}  // namespace tgc
