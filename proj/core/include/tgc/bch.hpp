#pragma once

#include "tgc/ncpoly.hpp"
#include "tgc/partitions.hpp"
#include "tgc/poly_cache.hpp"

#include <memory>
#include <string>
#include <vector>

namespace tgc {

/// Outcome of one lemma verifier run. status == false implies a nonempty
/// witness describing the first offending monomial or slice.
struct LemmaReport {
  std::string lemma;
  int r = 0;
  int i = 0;
  int j = 0;  // 0 when not applicable
  bool pass = true;
  std::string witness;
  std::string detail;  // extra observations (e.g. the mixed part found by 4.3)
};

// Generator ids are a fixed function of (family, index) so that polynomials
// computed at different truncation orders expand over identical monomials.
int id_A(int k);
int id_B(int k);
int id_C(int k);
int id_M(int k);
int id_N(int k);
int id_U(int k);

/// The factored right-hand side of a multi-exponential product: V[j-1] is the
/// grade-j factor, for 1 <= j <= r-1.
struct FactoredSides {
  int r = 0;
  int i = 0;
  SymbolTablePtr syms;
  std::vector<NCPoly> V;
};

/// Factored form of e^{M_i}..e^{M_{r-1}} e^{U_1}..e^{U_{r-1}} e^{-N_{r-1}}..e^{-N_i}.
/// Memoized per (r, i).
std::shared_ptr<const FactoredSides> compute_eq_factored(int r, int i);

/// Factored form of e^{M} e^{U_1}..e^{U_{r-1}} e^{-N} with M, N of grade i.
FactoredSides compute_single_perturbation(int r, int i);

/// The structure polynomial u_j in A_1..A_j, B_1..B_j, C_1..C_j: the j-th
/// factored coordinate of e^{A_1}..e^{A_j} e^{B_1}..e^{B_j} (e^{C_1}..e^{C_j})^{-1}
/// at truncation j+1.
NCPoly compute_u(int j, const PolyCache* cache = nullptr);

/// The correction polynomial psi_j = V_j - U_j - M_j + N_j for j > i.
NCPoly compute_psi(int r, int i, int j, const PolyCache* cache = nullptr);

LemmaReport verify_lemma_4_1(int r, int i);
LemmaReport verify_lemma_4_2(int r, int i);
LemmaReport verify_lemma_4_3(int r, int i, int j);
LemmaReport verify_lemma_4_4_and_4_5(int r, int i);
LemmaReport verify_lemma_4_6(int i, int j);

}  // namespace tgc
