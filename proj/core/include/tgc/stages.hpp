#pragma once

#include "tgc/characters.hpp"
#include "tgc/cyclotomic.hpp"
#include "tgc/poly_cache.hpp"
#include "tgc/truncated.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tgc {

/// One step of the interpolating chain X_r, ..., X_{r''} = Y_0, ..., Y_{r'}.
struct StageId {
  enum class Kind { X, Y } kind = Kind::X;
  int index = 0;

  std::string to_string() const;
  bool operator==(const StageId&) const = default;
};

/// The full chain for a context, widest conditions last on the X side:
/// X_r, X_{r-1}, ..., X_{r''} (= Y_0), Y_1, ..., Y_{r'}.
std::vector<StageId> stage_chain(const GroupContext& ctx);

/// A point of the ambient fiber space: a torus coset representative x, the
/// free coordinates X_1..X_{r-1}, and the part (y, Y_1..Y_{r-1}) determined
/// by the group element under the projection.
struct FiberPoint {
  FpMatrix x;
  FpMatrix y;
  std::vector<FpMatrix> X;
  std::vector<FpMatrix> Y;
};

/// The matrix-level structure coordinates U_1..U_{r-1}: the factored
/// coordinates of e^{eps(y^{-1}X_1 y)} .. e^{eps Y_1} .. (e^{eps X_1} ..)^{-1}.
std::vector<FpMatrix> u_coordinates(const GroupContext& ctx, const FpMatrix& y,
                                    const std::vector<FpMatrix>& xs,
                                    const std::vector<FpMatrix>& ys);

/// h-hat = sum_j tr((x^{-1} A_j x) U_j) in F_p.
int h_hat_eval(const CharacterSpec& spec, const FiberPoint& point);

/// iota-hat = the diagonal part of x y x^{-1}; requires x y x^{-1} upper
/// triangular.
FpMatrix iota_hat_eval(const GroupContext& ctx, const FiberPoint& point);

/// Trace function of the stage: the sum over (T(F_q)x, X_1..X_{r-1})
/// satisfying the stage's membership conditions of chi(iota-hat) *
/// zeta_p^{h-hat}, with (y, Y_*) read off gprime.
Cyclotomic stage_trace(const CharacterSpec& spec, const StageId& stage,
                       const TruncatedMatrix& gprime);

struct StageChainReport {
  bool pass = false;
  std::uint64_t elements_checked = 0;
  /// Chain breaks: (stage pair, element) with the two disagreeing values.
  std::vector<std::string> counterexamples;  // capped, human-readable
  bool anchor_checked = false;  // X_r trace vs q^d * Ind_{B_r} theta
  double seconds = 0;
};

/// Checks that all consecutive stage-trace functions agree at every element
/// of G_r(F_q), and that the X_r trace equals q^d * Ind_{B_r} theta with
/// d = r dim b - dim T.
StageChainReport verify_stage_chain(const CharacterSpec& spec);

/// Sum over x in F_p^N of zeta_p^{a_1 x_1 + ... + a_N x_N + c}: vanishes iff
/// the affine function is non-constant, else p^N zeta_p^c.
Cyclotomic exp_sum_affine(int p, int n_vars, const std::vector<int>& coeffs, int c);

struct CrossValidateReport {
  bool pass = false;
  int trials = 0;
  std::string witness;  // first disagreement, if any
  double seconds = 0;
};

/// Randomized agreement check between the symbolic structure polynomials u_j
/// (coefficients reduced mod p) and the matrix-level factored coordinates,
/// for all j <= r-1.
CrossValidateReport cross_validate_u(const GroupContext& ctx, int trials, std::uint64_t seed,
                                     const PolyCache* cache = nullptr);

/// Evaluates a symbolic polynomial at an F_p matrix assignment (by generator
/// id), reducing each rational coefficient mod p.
FpMatrix eval_ncpoly_mod_p(const NCPoly& poly, const std::map<int, FpMatrix>& assignment,
                           int n, int p);

}  // namespace tgc
