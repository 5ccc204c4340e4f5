#include "tgc/subgroups.hpp"
#include "tgc/truncated.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace tgc;

namespace {

FpMatrix random_fp(int n, int p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, p - 1);
  FpMatrix m = FpMatrix::zero(n);
  for (auto& v : m.a) v = static_cast<std::uint8_t>(dist(rng));
  return m;
}

TruncatedMatrix random_invertible(const GroupContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, ctx.p - 1);
  while (true) {
    TruncatedMatrix g(ctx.n, ctx.p, ctx.r);
    for (auto& v : g.mutable_bytes()) v = static_cast<std::uint8_t>(dist(rng));
    if (fp_invertible(g.reduction(), ctx.p)) return g;
  }
}

}  // namespace

TEST_CASE("context invariants are enforced") {
  CHECK_THROWS_AS(make_group_context(2, 4, 2), std::invalid_argument);  // p not prime
  CHECK_THROWS_AS(make_group_context(2, 3, 4), std::invalid_argument);  // p < r
  CHECK_THROWS_AS(make_group_context(2, 2, 1), std::invalid_argument);  // r < 2
  const GroupContext ctx = make_group_context(2, 5, 4);
  CHECK(ctx.r_lo == 2);
  CHECK(ctx.r_hi == 2);
  const GroupContext odd = make_group_context(2, 5, 5);
  CHECK(odd.r_lo == 2);
  CHECK(odd.r_hi == 3);
  CHECK(odd.r_lo + odd.r_hi == 5);
}

TEST_CASE("truncated scalar arithmetic") {
  const int p = 3, r = 3;
  TruncatedScalar a = ts_zero(r);
  a.c = {1, 2, 0};
  TruncatedScalar b = ts_zero(r);
  b.c = {2, 0, 1};
  const TruncatedScalar prod = ts_mul(a, b, p);
  CHECK(prod.c == std::vector<std::uint8_t>{2, 1, 1});  // (1+2e)(2+e^2) mod 3
  CHECK(ts_is_unit(a));
  const TruncatedScalar inv = ts_inv(a, p);
  CHECK(ts_mul(a, inv, p).c == ts_one(r).c);
  TruncatedScalar nonunit = ts_zero(r);
  nonunit.c = {0, 1, 0};
  CHECK_FALSE(ts_is_unit(nonunit));
  CHECK_THROWS_AS(ts_inv(nonunit, p), std::domain_error);
}

TEST_CASE("mat_mul and mat_inv") {
  const GroupContext ctx = make_group_context(2, 2, 2);
  // (I + eps E12)(I - eps E12) = I; over F_2 the inverse is itself.
  TruncatedMatrix e = TruncatedMatrix::identity(ctx);
  e.set_coef(0, 1, 1, 1);
  CHECK(mat_mul(e, e).is_identity());
  CHECK(mat_mul(TruncatedMatrix::identity(ctx), e) == e);

  std::mt19937_64 rng(5);
  const GroupContext big = make_group_context(2, 5, 4);
  for (int trial = 0; trial < 25; ++trial) {
    const TruncatedMatrix a = random_invertible(big, rng);
    CHECK(mat_mul(a, mat_inv(a)).is_identity());
    CHECK(mat_mul(mat_inv(a), a).is_identity());
  }
  TruncatedMatrix singular(2, 5, 4);  // zero matrix
  CHECK_THROWS_AS(mat_inv(singular), std::domain_error);
}

TEST_CASE("exp_matrix") {
  std::mt19937_64 rng(7);
  {
    const GroupContext ctx = make_group_context(2, 2, 2);
    const FpMatrix x = random_fp(2, 2, rng);
    const TruncatedMatrix e = exp_matrix(ctx, 1, x);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(e.coef(i, j, 0) == (i == j ? 1 : 0));
        CHECK(e.coef(i, j, 1) == x.at(i, j));
      }
  }
  {
    // p=3, r=3: e^{eps X} = I + eps X + 2 eps^2 X^2 (1/2 = 2 mod 3).
    const GroupContext ctx = make_group_context(2, 3, 3);
    const FpMatrix x = random_fp(2, 3, rng);
    const TruncatedMatrix e = exp_matrix(ctx, 1, x);
    const FpMatrix x2 = fp_mul(x, x, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(e.coef(i, j, 2) == 2 * x2.at(i, j) % 3);
  }
  {
    const GroupContext ctx = make_group_context(2, 5, 5);
    for (int i = 1; i <= 4; ++i)
      for (int trial = 0; trial < 10; ++trial) {
        const FpMatrix x = random_fp(2, 5, rng);
        CHECK(mat_mul(exp_matrix(ctx, i, x), exp_matrix(ctx, i, fp_neg(x, 5))).is_identity());
      }
  }
}

TEST_CASE("group axioms on the exhaustive small group") {
  const GroupContext ctx = make_group_context(2, 2, 2);
  const auto group = enumerate(ctx, {SubgroupTag::Gr, 0});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const TruncatedMatrix& a = group[pick(rng)];
    const TruncatedMatrix& b = group[pick(rng)];
    const TruncatedMatrix& c = group[pick(rng)];
    CHECK(element_index(group, mat_mul(a, b)) >= 0);  // closure
    CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
    CHECK(element_index(group, mat_inv(a)) >= 0);
  }
}

TEST_CASE("factor_coordinates and build_coordinates invert each other") {
  const GroupContext small = make_group_context(2, 2, 2);
  const Coordinates id_coords = factor_coordinates(small, TruncatedMatrix::identity(small));
  CHECK(id_coords.x == FpMatrix::identity(2));
  CHECK(id_coords.X[0] == FpMatrix::zero(2));

  std::mt19937_64 rng(11);
  const FpMatrix x = random_fp(2, 2, rng);
  const Coordinates exp_coords = factor_coordinates(small, exp_matrix(small, 1, x));
  CHECK(exp_coords.x == FpMatrix::identity(2));
  CHECK(exp_coords.X[0] == x);

  // Exhaustive round trip over all 96 elements of G_2(F_2).
  const auto group = enumerate(small, {SubgroupTag::Gr, 0});
  CHECK(group.size() == 96);
  for (const TruncatedMatrix& g : group)
    CHECK(build_coordinates(small, factor_coordinates(small, g)) == g);

  // Random round trips at q=5, r=5.
  const GroupContext big = make_group_context(2, 5, 5);
  for (int trial = 0; trial < 25; ++trial) {
    const TruncatedMatrix g = random_invertible(big, rng);
    CHECK(build_coordinates(big, factor_coordinates(big, g)) == g);
  }
}

TEST_CASE("sigma is the multiplicative diagonal retraction") {
  const GroupContext ctx = make_group_context(2, 2, 2);
  const auto borel = enumerate(ctx, {SubgroupTag::Br, 0});
  CHECK(borel.size() == 16);
  for (const TruncatedMatrix& b1 : borel) {
    CHECK(sigma(ctx, sigma(ctx, b1)) == sigma(ctx, b1));  // fixes T_r
    for (const TruncatedMatrix& b2 : borel)
      CHECK(sigma(ctx, mat_mul(b1, b2)) == mat_mul(sigma(ctx, b1), sigma(ctx, b2)));
  }
  TruncatedMatrix lower = TruncatedMatrix::identity(ctx);
  lower.set_coef(1, 0, 0, 1);
  CHECK_THROWS_AS(sigma(ctx, lower), MembershipError);
}

TEST_CASE("subgroup order closed forms match enumeration") {
  for (auto [q, r] : {std::pair<int, int>{2, 2}, {3, 2}}) {
    const GroupContext ctx = make_group_context(2, q, r);
    std::vector<SubgroupSpec> specs = {{SubgroupTag::Gr, 0},     {SubgroupTag::Br, 0},
                                       {SubgroupTag::Tr, 0},     {SubgroupTag::Ur, 0},
                                       {SubgroupTag::Hprime, 0}, {SubgroupTag::K, 0}};
    for (int i = 1; i <= r - 1; ++i) {
      specs.push_back({SubgroupTag::Gri, i});
      specs.push_back({SubgroupTag::Bri, i});
      specs.push_back({SubgroupTag::Tri, i});
      specs.push_back({SubgroupTag::Uri, i});
    }
    for (const SubgroupSpec& spec : specs) {
      const auto elements = enumerate(ctx, spec);
      CHECK(Int(elements.size()) == subgroup_order(ctx, spec));
    }
  }
  // Spot values from the order formulas.
  const GroupContext c22 = make_group_context(2, 2, 2);
  CHECK(subgroup_order(c22, {SubgroupTag::Gr, 0}) == 96);
  CHECK(subgroup_order(c22, {SubgroupTag::Br, 0}) == 16);
  const GroupContext c33 = make_group_context(2, 3, 3);
  CHECK(subgroup_order(c33, {SubgroupTag::Gr, 0}) == 314928);
  CHECK(subgroup_order(c33, {SubgroupTag::Tr, 0}) == 324);
  CHECK(subgroup_order(c33, {SubgroupTag::K, 0}) == 27);
  CHECK(subgroup_order(c33, {SubgroupTag::Hprime, 0}) == 8748);
  // |T_r| = (q-1)^n q^{n(r-1)} and |U_r| = q^r at n = 2.
  for (auto [q, r] : {std::pair<int, int>{2, 2}, {3, 2}, {3, 3}, {5, 4}}) {
    const GroupContext ctx = make_group_context(2, q, r);
    Int t = (q - 1) * (q - 1);
    for (int k = 0; k < 2 * (r - 1); ++k) t *= q;
    CHECK(subgroup_order(ctx, {SubgroupTag::Tr, 0}) == t);
    Int u = 1;
    for (int k = 0; k < r; ++k) u *= q;
    CHECK(subgroup_order(ctx, {SubgroupTag::Ur, 0}) == u);
  }
}

TEST_CASE("enumeration is sorted, deduplicated, and budget-guarded") {
  const GroupContext ctx = make_group_context(2, 3, 2);
  const auto group = enumerate(ctx, {SubgroupTag::Gr, 0});
  CHECK(group.size() == 3888);
  CHECK(std::is_sorted(group.begin(), group.end()));
  CHECK(std::adjacent_find(group.begin(), group.end()) == group.end());
  for (const TruncatedMatrix& g : group) CHECK(membership(ctx, g, {SubgroupTag::Gr, 0}));

  const GroupContext tiny = make_group_context(2, 3, 2, /*budget=*/100);
  CHECK_THROWS_AS(enumerate(tiny, {SubgroupTag::Gr, 0}), BudgetExceeded);
}

TEST_CASE("membership: identity, closure, and the Hprime product structure") {
  for (auto [q, r] : {std::pair<int, int>{2, 2}, {3, 2}, {3, 3}}) {
    const GroupContext ctx = make_group_context(2, q, r);
    const TruncatedMatrix id = TruncatedMatrix::identity(ctx);
    for (const char* name :
         {"G_r", "B_r", "T_r", "U_r", "G_r^1", "B_r^1", "T_r^1", "U_r^1", "Hprime", "K"})
      CHECK(membership(ctx, id, SubgroupSpec::parse(name)));

    // |Hprime| = |T_r| * |K| exhaustively.
    const auto hprime = enumerate(ctx, {SubgroupTag::Hprime, 0});
    CHECK(Int(hprime.size()) ==
          subgroup_order(ctx, {SubgroupTag::Tr, 0}) * subgroup_order(ctx, {SubgroupTag::K, 0}));
  }

  // Closure of Hprime and K under multiplication, exhaustive at (2,2).
  const GroupContext small = make_group_context(2, 2, 2);
  for (const char* name : {"Hprime", "K"}) {
    const SubgroupSpec spec = SubgroupSpec::parse(name);
    const auto elements = enumerate(small, spec);
    for (const TruncatedMatrix& a : elements)
      for (const TruncatedMatrix& b : elements)
        CHECK(membership(small, mat_mul(a, b), spec));
  }
}

TEST_CASE("coset representatives partition the group") {
  const GroupContext trivial_case = make_group_context(2, 2, 2);
  const auto whole = coset_representatives(trivial_case, {SubgroupTag::Gr, 0});
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].is_identity());

  const GroupContext c32 = make_group_context(2, 3, 2);
  const auto reps = coset_representatives(c32, {SubgroupTag::Br, 0});
  CHECK(reps.size() == 12);  // (q+1) q^{r-1}

  // Exhaustive partition check at (2,2): every g lies in exactly one rep*B_r.
  const auto reps22 = coset_representatives(trivial_case, {SubgroupTag::Br, 0});
  const auto group = enumerate(trivial_case, {SubgroupTag::Gr, 0});
  for (const TruncatedMatrix& g : group) {
    int hits = 0;
    for (const TruncatedMatrix& x : reps22)
      if (membership(trivial_case, mat_mul(mat_inv(x), g), {SubgroupTag::Br, 0})) ++hits;
    CHECK(hits == 1);
  }
}

TEST_CASE("lie_decompose") {
  std::mt19937_64 rng(13);
  FpMatrix diag = FpMatrix::zero(2);
  diag.set(0, 0, 2);
  diag.set(1, 1, 4);
  const LieDecomposition d1 = lie_decompose(diag);
  CHECK(d1.diag == diag);
  CHECK(d1.lower == FpMatrix::zero(2));
  CHECK(d1.upper == FpMatrix::zero(2));

  FpMatrix e12 = FpMatrix::zero(2);
  e12.set(0, 1, 1);
  const LieDecomposition d2 = lie_decompose(e12);
  CHECK(d2.upper == e12);
  CHECK(d2.diag == FpMatrix::zero(2));

  for (int trial = 0; trial < 10; ++trial) {
    const FpMatrix x = random_fp(3, 5, rng);
    const LieDecomposition d = lie_decompose(x);
    CHECK(fp_add(fp_add(d.lower, d.diag, 5), d.upper, 5) == x);
  }
}

TEST_CASE("sigma_prime: identity on T_r, trivial on K, multiplicative") {
  const GroupContext ctx = make_group_context(2, 3, 3);
  for (const TruncatedMatrix& t : enumerate(ctx, {SubgroupTag::Tr, 0}))
    CHECK(sigma_prime(ctx, t) == t);
  for (const TruncatedMatrix& k : enumerate(ctx, {SubgroupTag::K, 0}))
    CHECK(sigma_prime(ctx, k).is_identity());

  const auto hprime = enumerate(ctx, {SubgroupTag::Hprime, 0});
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, hprime.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    const TruncatedMatrix& h1 = hprime[pick(rng)];
    const TruncatedMatrix& h2 = hprime[pick(rng)];
    CHECK(sigma_prime(ctx, mat_mul(h1, h2)) ==
          mat_mul(sigma_prime(ctx, h1), sigma_prime(ctx, h2)));
  }

  TruncatedMatrix outside = TruncatedMatrix::identity(ctx);
  outside.set_coef(1, 0, 0, 1);  // lower-triangular x-part
  CHECK_THROWS_AS(sigma_prime(ctx, outside), MembershipError);
}

TEST_CASE("sigma_prime at r = 4 and r = 5 on sampled Hprime elements") {
  // Too large to enumerate; build members directly from coordinates
  // satisfying the Hprime criteria, covering both parities of r.
  std::mt19937_64 rng(23);
  for (int r : {4, 5}) {
    const GroupContext ctx = make_group_context(2, 5, r);
    std::uniform_int_distribution<int> dist(0, 4);
    std::uniform_int_distribution<int> unit(1, 4);
    auto random_hprime = [&]() {
      Coordinates coords;
      coords.x = FpMatrix::zero(2);
      for (int i = 0; i < 2; ++i) coords.x.set(i, i, unit(rng));
      for (int j = 1; j <= r - 1; ++j) {
        FpMatrix xj = FpMatrix::zero(2);
        if (j < ctx.r_lo) {
          for (int i = 0; i < 2; ++i) xj.set(i, i, dist(rng));
        } else if (j == ctx.r_lo && r % 2 == 1) {
          xj.set(0, 0, dist(rng));
          xj.set(1, 1, dist(rng));
          xj.set(0, 1, dist(rng));
        } else {
          for (auto& v : xj.a) v = static_cast<std::uint8_t>(dist(rng));
        }
        coords.X.push_back(xj);
      }
      return build_coordinates(ctx, coords);
    };
    for (int trial = 0; trial < 60; ++trial) {
      const TruncatedMatrix h1 = random_hprime();
      const TruncatedMatrix h2 = random_hprime();
      CHECK(membership(ctx, h1, {SubgroupTag::Hprime, 0}));
      const TruncatedMatrix prod = mat_mul(h1, h2);
      CHECK(membership(ctx, prod, {SubgroupTag::Hprime, 0}));  // closure
      CHECK(sigma_prime(ctx, prod) ==
            mat_mul(sigma_prime(ctx, h1), sigma_prime(ctx, h2)));
      // t^{-1} h lands in K for t = sigma'(h).
      CHECK(membership(ctx, mat_mul(mat_inv(sigma_prime(ctx, h1)), h1),
                       {SubgroupTag::K, 0}));
    }
  }
}

TEST_CASE("K is normal in Hprime with trivial torus intersection (exhaustive small case)") {
  const GroupContext ctx = make_group_context(2, 2, 2);
  const auto hprime = enumerate(ctx, {SubgroupTag::Hprime, 0});
  const auto kappa = enumerate(ctx, {SubgroupTag::K, 0});
  for (const TruncatedMatrix& g : hprime) {
    const TruncatedMatrix ginv = mat_inv(g);
    for (const TruncatedMatrix& k : kappa)
      CHECK(membership(ctx, mat_mul(mat_mul(g, k), ginv), {SubgroupTag::K, 0}));
  }
  int torus_meets_k = 0;
  for (const TruncatedMatrix& t : enumerate(ctx, {SubgroupTag::Tr, 0}))
    if (membership(ctx, t, {SubgroupTag::K, 0})) ++torus_meets_k;
  CHECK(torus_meets_k == 1);  // only the identity
}

TEST_CASE("subgroup spec strings round-trip") {
  for (const char* name : {"G_r", "B_r", "T_r", "U_r", "G_r^2", "B_r^1", "T_r^2", "U_r^1",
                           "Hprime", "K"})
    CHECK(SubgroupSpec::parse(name).to_string() == name);
  CHECK_THROWS_AS(SubgroupSpec::parse("Z_r"), std::invalid_argument);
}

TEST_CASE("element serialization") {
  const GroupContext ctx = make_group_context(2, 3, 2);
  TruncatedMatrix g = TruncatedMatrix::identity(ctx);
  g.set_coef(0, 1, 1, 2);
  CHECK(g.to_json() == "[[1, 0], [0, 2], [0, 0], [1, 0]]");
}
