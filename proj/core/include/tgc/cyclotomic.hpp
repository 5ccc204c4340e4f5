#pragma once

#include "tgc/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tgc {

/// Dense integer polynomial, little-endian coefficients, no trailing zeros.
using IntPoly = std::vector<Int>;

int euler_phi(int m);
std::vector<int> divisors(int m);

/// The m-th cyclotomic polynomial Phi_m, computed by dividing x^m - 1 by the
/// Phi_d of the proper divisors d of m. Monic of degree phi(m). Results are cached.
IntPoly cyclotomic_polynomial(int m);

/// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1},
/// canonically reduced mod Phi_m. Equal field elements have identical
/// coefficient vectors, so equality is plain coefficient comparison.
/// Values are immutable after construction; all operations are pure.
class Cyclotomic {
 public:
  Cyclotomic() : m_(1), c_(1, Rational(0)) {}

  static Cyclotomic zero(int m);
  static Cyclotomic one(int m);
  static Cyclotomic from_rational(int m, const Rational& q);
  /// Canonical representation of zeta_m^{k mod m}.
  static Cyclotomic root_of_unity(int m, long long k);
  /// From an arbitrary polynomial in zeta_m (little-endian), reduced.
  static Cyclotomic from_poly(int m, std::vector<Rational> poly);

  int order() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const;

  /// Re-expresses the element in Q(zeta_m2); requires order() | m2.
  Cyclotomic promoted(int m2) const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Rational& s);
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  bool operator==(const Cyclotomic& b) const { return m_ == b.m_ && c_ == b.c_; }
  bool operator!=(const Cyclotomic& b) const { return !(*this == b); }

  /// Numeric embedding zeta_m -> exp(2*pi*i/m), for diagnostics only.
  std::pair<double, double> approx() const;

  /// Report serialization: { "m": m, "coeffs": ["num/den", ...] }.
  std::string to_json() const;
  std::string to_string() const;

 private:
  Cyclotomic(int m, std::vector<Rational> c) : m_(m), c_(std::move(c)) {}

  int m_;
  std::vector<Rational> c_;  // size phi(m_)
};

enum class CycloOp { add, sub, mul };

/// Dispatching entry point; both operands must share the order.
Cyclotomic cyclo_arith(const Cyclotomic& a, const Cyclotomic& b, CycloOp op);

}  // namespace tgc
