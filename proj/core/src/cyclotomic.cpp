#include "tgc/cyclotomic.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace tgc {

int euler_phi(int m) {
  if (m < 1) throw std::invalid_argument("euler_phi: m must be positive");
  int result = m;
  int v = m;
  for (int d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      result -= result / d;
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) result -= result / v;
  return result;
}

std::vector<int> divisors(int m) {
  std::vector<int> small, large;
  for (int d = 1; d * d <= m; ++d) {
    if (m % d == 0) {
      small.push_back(d);
      if (d != m / d) large.push_back(m / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

namespace {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials; throws if not exact.
IntPoly exact_div(IntPoly num, const IntPoly& den) {
  if (den.empty()) throw std::invalid_argument("exact_div: division by zero polynomial");
  IntPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
  while (num.size() >= den.size()) {
    if (num.back() % den.back() != 0) throw std::logic_error("exact_div: non-exact division");
    Int c = num.back() / den.back();
    std::size_t shift = num.size() - den.size();
    q[shift] = c;
    for (std::size_t k = 0; k < den.size(); ++k) num[shift + k] -= c * den[k];
    trim(num);
    if (num.empty()) break;
    if (num.size() > shift + den.size() - 1)
      throw std::logic_error("exact_div: cancellation failed");
  }
  if (!num.empty()) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

}  // namespace

IntPoly cyclotomic_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m >= 1 required");
  static std::map<int, IntPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(m); it != cache.end()) return it->second;

  // x^m - 1 divided by the cyclotomic polynomials of all proper divisors.
  std::function<IntPoly(int)> compute = [&](int k) -> IntPoly {
    if (auto it = cache.find(k); it != cache.end()) return it->second;
    IntPoly num(k + 1, Int(0));
    num[0] = -1;
    num[k] = 1;
    for (int d : divisors(k)) {
      if (d == k) continue;
      num = exact_div(std::move(num), compute(d));
    }
    cache[k] = num;
    return num;
  };
  return compute(m);
}

Cyclotomic Cyclotomic::zero(int m) {
  return Cyclotomic(m, std::vector<Rational>(euler_phi(m), Rational(0)));
}

Cyclotomic Cyclotomic::one(int m) { return from_rational(m, Rational(1)); }

Cyclotomic Cyclotomic::from_rational(int m, const Rational& q) {
  std::vector<Rational> c(euler_phi(m), Rational(0));
  c[0] = q;
  return Cyclotomic(m, std::move(c));
}

Cyclotomic Cyclotomic::from_poly(int m, std::vector<Rational> poly) {
  const IntPoly phi = cyclotomic_polynomial(m);
  const std::size_t deg = phi.size() - 1;  // phi(m), phi is monic
  // Remainder mod the monic Phi_m.
  for (std::size_t i = poly.size(); i-- > deg;) {
    Rational c = poly[i];
    if (c == 0) continue;
    poly[i] = 0;
    for (std::size_t k = 0; k < deg; ++k) poly[i - deg + k] -= c * Rational(phi[k]);
  }
  poly.resize(deg, Rational(0));
  return Cyclotomic(m, std::move(poly));
}

Cyclotomic Cyclotomic::root_of_unity(int m, long long k) {
  long long e = k % m;
  if (e < 0) e += m;
  std::vector<Rational> poly(static_cast<std::size_t>(e) + 1, Rational(0));
  poly[static_cast<std::size_t>(e)] = 1;
  return from_poly(m, std::move(poly));
}

bool Cyclotomic::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

Cyclotomic Cyclotomic::promoted(int m2) const {
  if (m2 == m_) return *this;
  if (m2 < m_ || m2 % m_ != 0)
    throw std::invalid_argument("Cyclotomic::promoted: order " + std::to_string(m_) +
                                " does not divide " + std::to_string(m2));
  const int step = m2 / m_;
  std::vector<Rational> poly(static_cast<std::size_t>(m2), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) poly[i * step] = c_[i];
  return from_poly(m2, std::move(poly));
}

namespace {
void require_same_order(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("cyclotomic order mismatch: " + std::to_string(a.order()) +
                                " vs " + std::to_string(b.order()));
}
}  // namespace

Cyclotomic Cyclotomic::operator-() const {
  std::vector<Rational> c(c_);
  for (auto& q : c) q = -q;
  return Cyclotomic(m_, std::move(c));
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  require_same_order(a, b);
  std::vector<Rational> c(a.c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return Cyclotomic(a.m_, std::move(c));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  require_same_order(a, b);
  std::vector<Rational> c(a.c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
  return Cyclotomic(a.m_, std::move(c));
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  require_same_order(a, b);
  std::vector<Rational> conv(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      conv[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Cyclotomic::from_poly(a.m_, std::move(conv));
}

Cyclotomic operator*(const Cyclotomic& a, const Rational& s) {
  std::vector<Rational> c(a.c_);
  for (auto& q : c) q *= s;
  return Cyclotomic(a.m_, std::move(c));
}

Cyclotomic cyclo_arith(const Cyclotomic& a, const Cyclotomic& b, CycloOp op) {
  switch (op) {
    case CycloOp::add: return a + b;
    case CycloOp::sub: return a - b;
    case CycloOp::mul: return a * b;
  }
  throw std::logic_error("cyclo_arith: bad op");
}

std::pair<double, double> Cyclotomic::approx() const {
  double re = 0, im = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const double w = c_[i].convert_to<double>();
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(i) / m_;
    re += w * std::cos(ang);
    im += w * std::sin(ang);
  }
  return {re, im};
}

std::string Cyclotomic::to_json() const {
  std::ostringstream os;
  os << "{\"m\": " << m_ << ", \"coeffs\": [";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << '"' << rat_to_string(c_[i]) << '"';
  }
  os << "]}";
  return os.str();
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    os << rat_to_string(c_[i]);
    if (i > 0) os << "*z^" << i;
    first = false;
  }
  if (first) os << "0";
  os << " (z = zeta_" << m_ << ")";
  return os.str();
}

}  // namespace tgc
