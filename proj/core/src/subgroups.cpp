#include "tgc/subgroups.hpp"

#include <algorithm>

namespace tgc {

SubgroupSpec SubgroupSpec::parse(const std::string& text) {
  auto with_index = [&](SubgroupTag tag, const std::string& prefix) -> std::optional<SubgroupSpec> {
    if (text.rfind(prefix, 0) != 0) return std::nullopt;
    return SubgroupSpec{tag, std::stoi(text.substr(prefix.size()))};
  };
  if (text == "G_r") return {SubgroupTag::Gr, 0};
  if (text == "B_r") return {SubgroupTag::Br, 0};
  if (text == "T_r") return {SubgroupTag::Tr, 0};
  if (text == "U_r") return {SubgroupTag::Ur, 0};
  if (text == "Hprime") return {SubgroupTag::Hprime, 0};
  if (text == "K") return {SubgroupTag::K, 0};
  if (auto s = with_index(SubgroupTag::Gri, "G_r^")) return *s;
  if (auto s = with_index(SubgroupTag::Bri, "B_r^")) return *s;
  if (auto s = with_index(SubgroupTag::Tri, "T_r^")) return *s;
  if (auto s = with_index(SubgroupTag::Uri, "U_r^")) return *s;
  throw std::invalid_argument("unknown subgroup spec '" + text + "'");
}

std::string SubgroupSpec::to_string() const {
  switch (tag) {
    case SubgroupTag::Gr: return "G_r";
    case SubgroupTag::Br: return "B_r";
    case SubgroupTag::Tr: return "T_r";
    case SubgroupTag::Ur: return "U_r";
    case SubgroupTag::Gri: return "G_r^" + std::to_string(i);
    case SubgroupTag::Bri: return "B_r^" + std::to_string(i);
    case SubgroupTag::Tri: return "T_r^" + std::to_string(i);
    case SubgroupTag::Uri: return "U_r^" + std::to_string(i);
    case SubgroupTag::Hprime: return "Hprime";
    case SubgroupTag::K: return "K";
  }
  throw std::logic_error("bad subgroup tag");
}

namespace {

bool entries_upper_triangular(const TruncatedMatrix& g) {
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < g.r(); ++k)
        if (g.coef(i, j, k) != 0) return false;
  return true;
}

bool entries_diagonal(const TruncatedMatrix& g) {
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      if (i == j) continue;
      for (int k = 0; k < g.r(); ++k)
        if (g.coef(i, j, k) != 0) return false;
    }
  return true;
}

bool diagonal_units(const TruncatedMatrix& g) {
  for (int i = 0; i < g.n(); ++i)
    if (g.coef(i, i, 0) == 0) return false;
  return true;
}

bool diagonal_exactly_one(const TruncatedMatrix& g) {
  for (int i = 0; i < g.n(); ++i) {
    if (g.coef(i, i, 0) != 1) return false;
    for (int k = 1; k < g.r(); ++k)
      if (g.coef(i, i, k) != 0) return false;
  }
  return true;
}

// g congruent to the identity mod eps^level.
bool congruent_to_identity(const TruncatedMatrix& g, int level) {
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      for (int k = 0; k < level && k < g.r(); ++k)
        if (g.coef(i, j, k) != (i == j && k == 0 ? 1 : 0)) return false;
  return true;
}

bool k_membership(const GroupContext& ctx, const TruncatedMatrix& g) {
  if (!congruent_to_identity(g, 1)) return false;
  const Coordinates coords = factor_coordinates(ctx, g);
  for (int j = 1; j <= ctx.r - 1; ++j) {
    const FpMatrix& xj = coords.X[static_cast<std::size_t>(j) - 1];
    if (j < ctx.r_lo) {
      if (xj != FpMatrix::zero(ctx.n)) return false;
    } else if (j == ctx.r_lo && ctx.r % 2 == 1) {
      if (!fp_is_strictly_upper(xj)) return false;
    } else {  // j >= r_hi
      if (!fp_has_zero_diagonal(xj)) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<std::string> hprime_violation(const GroupContext& ctx, const TruncatedMatrix& g) {
  const FpMatrix x0 = g.reduction();
  if (!fp_is_diagonal(x0)) return "x-part is not diagonal";
  for (int i = 0; i < ctx.n; ++i)
    if (x0.at(i, i) == 0) return "x-part is not invertible";
  const Coordinates coords = factor_coordinates(ctx, g);
  for (int j = 1; j <= ctx.r - 1; ++j) {
    const FpMatrix& xj = coords.X[static_cast<std::size_t>(j) - 1];
    if (j < ctx.r_lo && !fp_is_diagonal(xj))
      return "coordinate X_" + std::to_string(j) + " is not diagonal";
    if (j == ctx.r_lo && ctx.r % 2 == 1 && !fp_is_upper(xj))
      return "coordinate X_" + std::to_string(j) + " is not upper triangular";
  }
  return std::nullopt;
}

bool membership(const GroupContext& ctx, const TruncatedMatrix& g, const SubgroupSpec& spec) {
  auto level = [&ctx, &spec] {
    if (spec.i < 1 || spec.i > ctx.r - 1)
      throw std::invalid_argument("congruence level out of range: " + std::to_string(spec.i));
    return spec.i;
  };
  switch (spec.tag) {
    case SubgroupTag::Gr: return fp_invertible(g.reduction(), ctx.p);
    case SubgroupTag::Br: return entries_upper_triangular(g) && diagonal_units(g);
    case SubgroupTag::Tr: return entries_diagonal(g) && diagonal_units(g);
    case SubgroupTag::Ur: return entries_upper_triangular(g) && diagonal_exactly_one(g);
    case SubgroupTag::Gri: return congruent_to_identity(g, level());
    case SubgroupTag::Bri:
      return entries_upper_triangular(g) && congruent_to_identity(g, level());
    case SubgroupTag::Tri: return entries_diagonal(g) && congruent_to_identity(g, level());
    case SubgroupTag::Uri:
      return entries_upper_triangular(g) && diagonal_exactly_one(g) &&
             congruent_to_identity(g, level());
    case SubgroupTag::Hprime: return !hprime_violation(ctx, g).has_value();
    case SubgroupTag::K: return k_membership(ctx, g);
  }
  throw std::logic_error("bad subgroup tag");
}

namespace {

Int int_pow(Int base, int e) {
  Int acc = 1;
  for (int k = 0; k < e; ++k) acc *= base;
  return acc;
}

}  // namespace

Int subgroup_order(const GroupContext& ctx, const SubgroupSpec& spec) {
  const int n = ctx.n, p = ctx.p, r = ctx.r;
  const int dim_b = n * (n + 1) / 2;
  const int dim_n = n * (n - 1) / 2;
  const Int q = p;
  auto validated_level = [&](int i) {
    if (i < 1 || i > r - 1)
      throw std::invalid_argument("congruence level out of range: " + std::to_string(i));
    return i;
  };
  switch (spec.tag) {
    case SubgroupTag::Gr: {
      Int gl = 1;
      for (int k = 0; k < n; ++k) gl *= int_pow(q, n) - int_pow(q, k);
      return gl * int_pow(q, n * n * (r - 1));
    }
    case SubgroupTag::Br:
      return int_pow(q - 1, n) * int_pow(q, dim_n) * int_pow(q, (r - 1) * dim_b);
    case SubgroupTag::Tr: return int_pow(q - 1, n) * int_pow(q, n * (r - 1));
    case SubgroupTag::Ur: return int_pow(q, r * dim_n);
    case SubgroupTag::Gri: return int_pow(q, n * n * (r - validated_level(spec.i)));
    case SubgroupTag::Bri: return int_pow(q, dim_b * (r - validated_level(spec.i)));
    case SubgroupTag::Tri: return int_pow(q, n * (r - validated_level(spec.i)));
    case SubgroupTag::Uri: return int_pow(q, dim_n * (r - validated_level(spec.i)));
    case SubgroupTag::K:
      return int_pow(q, (n * n - n) * ctx.r_lo + (r % 2 == 1 ? dim_n : 0));
    case SubgroupTag::Hprime:
      return subgroup_order(ctx, {SubgroupTag::Tr, 0}) * subgroup_order(ctx, {SubgroupTag::K, 0});
  }
  throw std::logic_error("bad subgroup tag");
}

std::vector<TruncatedMatrix> enumerate(const GroupContext& ctx, const SubgroupSpec& spec) {
  const Int order = subgroup_order(ctx, spec);
  if (order > ctx.budget)
    throw BudgetExceeded("enumeration of " + spec.to_string() + " needs " + order.str() +
                         " elements, budget is " + std::to_string(ctx.budget));
  const Int scan = int_pow(Int(ctx.p), ctx.n * ctx.n * ctx.r);
  if (scan > ctx.budget)
    throw BudgetExceeded("coefficient scan for " + spec.to_string() + " needs " + scan.str() +
                         " candidates, budget is " + std::to_string(ctx.budget) +
                         " (subgroup order " + order.str() + ")");

  std::vector<TruncatedMatrix> out;
  TruncatedMatrix g(ctx.n, ctx.p, ctx.r);
  auto& digits = g.mutable_bytes();
  const std::size_t nd = digits.size();
  while (true) {
    if (membership(ctx, g, spec)) out.push_back(g);
    // Next coefficient vector in lexicographic order.
    std::size_t pos = nd;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < ctx.p) break;
      digits[pos] = 0;
      if (pos == 0) {
        if (Int(out.size()) != order)
          throw std::logic_error("enumeration count " + std::to_string(out.size()) +
                                 " does not match closed-form order " + order.str() + " for " +
                                 spec.to_string());
        return out;
      }
    }
  }
}

long element_index(const std::vector<TruncatedMatrix>& sorted_elements,
                   const TruncatedMatrix& g) {
  auto it = std::lower_bound(sorted_elements.begin(), sorted_elements.end(), g);
  if (it == sorted_elements.end() || !(*it == g)) return -1;
  return static_cast<long>(it - sorted_elements.begin());
}

std::vector<TruncatedMatrix> coset_representatives(const GroupContext& ctx,
                                                   const SubgroupSpec& spec) {
  const std::vector<TruncatedMatrix> group = enumerate(ctx, {SubgroupTag::Gr, 0});
  const std::vector<TruncatedMatrix> subgroup = enumerate(ctx, spec);
  std::vector<bool> visited(group.size(), false);
  std::vector<TruncatedMatrix> reps;
  auto take = [&](const TruncatedMatrix& rep) {
    reps.push_back(rep);
    for (const TruncatedMatrix& h : subgroup) {
      const long pos = element_index(group, mat_mul(rep, h));
      if (pos < 0) throw std::logic_error("coset_representatives: product escaped the group");
      visited[static_cast<std::size_t>(pos)] = true;
    }
  };
  // The coset of the subgroup itself is always represented by the identity;
  // the rest are first-seen in enumeration order.
  take(TruncatedMatrix::identity(ctx));
  for (std::size_t idx = 0; idx < group.size(); ++idx)
    if (!visited[idx]) take(group[idx]);
  return reps;
}

TruncatedMatrix sigma(const GroupContext& ctx, const TruncatedMatrix& b) {
  if (!membership(ctx, b, {SubgroupTag::Br, 0}))
    throw MembershipError("sigma: input is not in B_r");
  TruncatedMatrix t(ctx.n, ctx.p, ctx.r);
  for (int i = 0; i < ctx.n; ++i)
    for (int k = 0; k < ctx.r; ++k) t.set_coef(i, i, k, b.coef(i, i, k));
  return t;
}

TruncatedMatrix sigma_prime(const GroupContext& ctx, const TruncatedMatrix& h) {
  if (auto why = hprime_violation(ctx, h))
    throw MembershipError("sigma_prime: input is not in Hprime: " + *why);
  const FpMatrix x = h.reduction();
  TruncatedMatrix u = mat_mul(TruncatedMatrix::from_fp(fp_inv(x, ctx.p), ctx.p, ctx.r), h);
  TruncatedMatrix t = TruncatedMatrix::from_fp(x, ctx.p, ctx.r);
  for (int j = 1; j <= ctx.r - 1; ++j) {
    const FpMatrix cj = factor_coordinates(ctx, u).X[static_cast<std::size_t>(j) - 1];
    const FpMatrix d = fp_diagonal_part(cj);
    u = mat_mul(exp_matrix(ctx, j, fp_neg(d, ctx.p)), u);
    t = mat_mul(t, exp_matrix(ctx, j, d));
  }
  if (!membership(ctx, u, {SubgroupTag::K, 0}))
    throw std::logic_error("sigma_prime: residual is not in K");
  return t;
}

}  // namespace tgc
