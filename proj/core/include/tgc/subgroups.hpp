#pragma once

#include "tgc/rational.hpp"
#include "tgc/truncated.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tgc {

enum class SubgroupTag { Gr, Br, Tr, Ur, Gri, Bri, Tri, Uri, Hprime, K };

/// A named subgroup of G_r: the full group, the Borel / torus / unipotent
/// subgroups, their congruence versions at level i, and the two groups of the
/// main-theorem setup (Hprime = T_r B_r^{r'} G_r^{r''} and its kernel K).
struct SubgroupSpec {
  SubgroupTag tag = SubgroupTag::Gr;
  int i = 0;  // congruence level where applicable

  static SubgroupSpec parse(const std::string& text);
  std::string to_string() const;
};

struct MembershipError : std::domain_error {
  using std::domain_error::domain_error;
};

bool membership(const GroupContext& ctx, const TruncatedMatrix& g, const SubgroupSpec& spec);

/// Why g fails the Hprime coordinate criteria; nullopt when it is a member.
std::optional<std::string> hprime_violation(const GroupContext& ctx, const TruncatedMatrix& g);

/// Closed-form order of the subgroup; always equals the enumeration count.
Int subgroup_order(const GroupContext& ctx, const SubgroupSpec& spec);

/// Every element exactly once, in lexicographic order of serialized
/// coefficients. Throws BudgetExceeded (with the computed order) when either
/// the subgroup or the ambient coefficient space exceeds the context budget.
std::vector<TruncatedMatrix> enumerate(const GroupContext& ctx, const SubgroupSpec& spec);

/// Exactly one representative per left coset x*H, first-seen in enumeration
/// order of G_r.
std::vector<TruncatedMatrix> coset_representatives(const GroupContext& ctx,
                                                   const SubgroupSpec& spec);

/// Binary search in an enumeration (which is sorted); -1 if absent.
long element_index(const std::vector<TruncatedMatrix>& sorted_elements,
                   const TruncatedMatrix& g);

/// Retraction B_r -> T_r: the diagonal part, multiplicative on B_r.
TruncatedMatrix sigma(const GroupContext& ctx, const TruncatedMatrix& b);

/// Retraction Hprime -> T_r: the unique t in T_r with t^{-1} h in K, found by
/// peeling the diagonal part of each exponential coordinate. Throws
/// MembershipError naming the first violated coordinate when h is not in
/// Hprime; asserts the residual lands in K.
TruncatedMatrix sigma_prime(const GroupContext& ctx, const TruncatedMatrix& h);

}  // namespace tgc
