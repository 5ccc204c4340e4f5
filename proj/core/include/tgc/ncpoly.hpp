#pragma once

#include "tgc/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace tgc {

/// A generator of the graded free algebra. The grade is the power of the
/// formal parameter it carries; truncation is a filter on total monomial grade.
struct Generator {
  int id = 0;  // 1..255, unique within a symbol table
  int grade = 0;
  std::string label;
};

class SymbolTable {
 public:
  Generator add(int id, const std::string& label, int grade);
  const Generator* find(int id) const;
  const Generator& at(int id) const;
  const Generator* find_label(const std::string& label) const;
  const std::vector<Generator>& all() const { return gens_; }

 private:
  std::vector<Generator> gens_;
  std::map<int, std::size_t> by_id_;
  std::map<std::string, std::size_t> by_label_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

/// A word in generator ids with its total grade. Words are compared in the
/// canonical monomial order (grade, length, lexicographic ids).
class Monomial {
 public:
  static constexpr int kMaxLen = 14;

  Monomial() = default;  // the unit (empty word)

  static Monomial unit() { return Monomial(); }
  static Monomial single(int id, int grade);
  static Monomial concat(const Monomial& a, const Monomial& b);

  int length() const { return len_; }
  int grade() const { return grade_; }
  std::uint8_t letter(int t) const { return w_[static_cast<std::size_t>(t)]; }

  bool operator==(const Monomial& o) const {
    return len_ == o.len_ && grade_ == o.grade_ && w_ == o.w_;
  }

  /// Canonical order: grade, then length, then lexicographic on ids.
  static bool canonical_less(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

 private:
  std::uint8_t len_ = 0;
  std::uint8_t grade_ = 0;
  std::array<std::uint8_t, kMaxLen> w_{};
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Graded non-commutative polynomial over Q, truncated at total grade < r.
/// No zero coefficients are stored. Values are immutable in use: every
/// operation returns a fresh polynomial.
class NCPoly {
 public:
  using TermMap = std::unordered_map<Monomial, Rational, MonomialHash>;

  NCPoly() = default;

  static NCPoly zero(int r, SymbolTablePtr syms);
  static NCPoly constant(int r, SymbolTablePtr syms, const Rational& c);
  static NCPoly one(int r, SymbolTablePtr syms) { return constant(r, std::move(syms), 1); }
  static NCPoly generator(int r, SymbolTablePtr syms, int id);

  int truncation() const { return r_; }
  const SymbolTablePtr& symbols() const { return syms_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Monomial& m) const;
  Rational constant_term() const { return coeff(Monomial::unit()); }
  /// Smallest grade present; returns truncation() when zero.
  int min_grade() const;

  /// Accumulates a term, dropping grade >= truncation and zero results.
  void add_term(const Monomial& m, const Rational& c);

  NCPoly operator-() const;
  friend NCPoly operator+(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator-(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator*(const Rational& s, const NCPoly& a);
  NCPoly& operator+=(const NCPoly& b) { return *this = *this + b; }
  NCPoly& operator-=(const NCPoly& b) { return *this = *this - b; }
  NCPoly& operator*=(const NCPoly& b) { return *this = *this * b; }

  /// Term-map equality: same canonical expansion, regardless of the
  /// truncation order or symbol table either side was built with.
  bool operator==(const NCPoly& b) const { return terms_ == b.terms_; }
  bool operator!=(const NCPoly& b) const { return !(*this == b); }

  std::vector<std::pair<Monomial, Rational>> sorted_terms() const;

 private:
  int r_ = 2;
  SymbolTablePtr syms_;
  TermMap terms_;
};

NCPoly mul(const NCPoly& a, const NCPoly& b);

/// exp of a polynomial with min grade >= 1; finite by truncation.
NCPoly exp(const NCPoly& x);

/// log of a polynomial with constant term 1; inverse of exp.
NCPoly log(const NCPoly& g);

/// Inverse of a polynomial with constant term 1 (geometric series on the
/// nilpotent part): g * group_inverse(g) = 1 exactly.
NCPoly group_inverse(const NCPoly& g);

NCPoly bracket(const NCPoly& a, const NCPoly& b);

/// Grade-j homogeneous component.
NCPoly slice(const NCPoly& p, int j);

/// Homomorphic extension of a partial assignment id -> polynomial; generators
/// absent from the assignment map to themselves. Each image must have min
/// grade >= the generator's grade so truncation stays meaningful.
NCPoly substitute(const NCPoly& p, const std::map<int, NCPoly>& assignment);

/// Dynkin-Specht-Wever criterion: p lies in the free Lie algebra iff each
/// word-length-n homogeneous component P_n satisfies delta(P_n) = n * P_n,
/// where delta maps a1...an to the left-nested bracket [[..[a1,a2],..],an].
/// Requires zero constant term.
bool dynkin_lie_test(const NCPoly& p);

/// The canonical factored form of a group-like element: the unique sequence
/// V_1..V_{r-1} with V_j purely of grade j and g the ordered product of their
/// exponentials. Computed by grade peeling. Index [j-1] holds V_j.
std::vector<NCPoly> factored_log(const NCPoly& g);

/// Ordered product of exponentials of grade-pure factors; vs[j-1] must be
/// purely of grade j.
NCPoly factored_exp(std::span<const NCPoly> vs, int r, SymbolTablePtr syms);

/// One term per line: "num/den : label label label", empty word printed as 1,
/// in canonical monomial order.
std::string to_canonical_string(const NCPoly& p);

/// Parses the canonical text form; labels are resolved in the given table.
NCPoly parse_ncpoly(const std::string& text, int r, SymbolTablePtr syms);

}  // namespace tgc
