#pragma once

#include "tgc/cyclotomic.hpp"
#include "tgc/subgroups.hpp"
#include "tgc/truncated.hpp"

#include <memory>
#include <string>
#include <vector>

namespace tgc {

/// The generic character datum on T_r(F_q): chi exponents m_1..m_n (mod q-1)
/// through the least primitive root, and diagonal matrices A_1..A_{r-1}
/// pairing the higher coordinates through the trace form. Character values
/// live in Q(zeta_m) with m = p(q-1). Generic means A_{r-1} is regular
/// semisimple (pairwise-distinct diagonal).
struct CharacterSpec {
  GroupContext ctx;
  std::vector<int> chi;    // size n, exponents mod q-1
  std::vector<FpMatrix> A; // A[j-1] diagonal, j = 1..r-1
  int omega = 1;           // least primitive root mod p
  int m = 1;               // cyclotomic order p*(q-1)
  std::vector<int> dlog;   // dlog[omega^e] = e, dlog[0] unused
};

CharacterSpec make_character_spec(const GroupContext& ctx, std::vector<int> chi,
                                  std::vector<std::vector<int>> a_diagonals);

int least_primitive_root(int p);

/// True iff A_{r-1} has pairwise-distinct diagonal entries.
bool is_generic(const CharacterSpec& spec);

/// theta = chi x (psi o f) evaluated at t in T_r(F_q), via the exponential
/// coordinates of t; multiplicative on T_r(F_q).
Cyclotomic theta_eval(const CharacterSpec& spec, const TruncatedMatrix& t);

enum class InductionSubgroup { Gr, Br, Hprime };

/// theta pulled back under sigma (Br) or sigma_prime (Hprime).
Cyclotomic theta_on_subgroup(const CharacterSpec& spec, const TruncatedMatrix& h,
                             InductionSubgroup which);

/// A finite table from group elements to exact cyclotomic values, over the
/// full enumeration of G_r(F_q).
struct ClassFunction {
  GroupContext ctx;
  std::shared_ptr<const std::vector<TruncatedMatrix>> domain;  // sorted
  std::vector<Cyclotomic> values;

  const Cyclotomic& at(const TruncatedMatrix& g) const;
};

/// Ind_H^G theta(g) = sum over coset representatives x with x^{-1} g x in H
/// of theta(x^{-1} g x). Which = Gr is the degenerate case (theta must be
/// trivial; the induced function is constant 1).
ClassFunction induce(const CharacterSpec& spec, InductionSubgroup which);

struct TheoremMismatch {
  std::string element_json;
  Cyclotomic from_borel;
  Cyclotomic from_hprime;
};

struct MainTheoremReport {
  bool generic = false;
  bool pass = false;
  std::uint64_t elements_checked = 0;
  std::vector<TheoremMismatch> mismatches;  // capped
  double seconds = 0;
};

/// Exhaustive comparison of Ind_{B_r} theta and Ind_{Hprime} theta at every
/// element of G_r(F_q), in exact cyclotomic arithmetic. Non-generic specs are
/// refused unless the exploratory override is set.
MainTheoremReport verify_main_theorem(const CharacterSpec& spec, bool allow_nongeneric = false);

}  // namespace tgc
