#include "tgc/characters.hpp"

#include <chrono>

namespace tgc {

int least_primitive_root(int p) {
  if (p == 2) return 1;
  for (int w = 2; w < p; ++w) {
    bool primitive = true;
    // w generates F_p^* iff w^{(p-1)/q} != 1 for every prime q | p-1.
    int m = p - 1;
    std::vector<int> prime_factors;
    for (int d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        prime_factors.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) prime_factors.push_back(m);
    for (int q : prime_factors)
      if (pow_mod(w, (p - 1) / q, p) == 1) {
        primitive = false;
        break;
      }
    if (primitive) return w;
  }
  throw std::logic_error("no primitive root found mod " + std::to_string(p));
}

CharacterSpec make_character_spec(const GroupContext& ctx, std::vector<int> chi,
                                  std::vector<std::vector<int>> a_diagonals) {
  CharacterSpec spec;
  spec.ctx = ctx;
  const int q1 = ctx.p - 1;
  if (static_cast<int>(chi.size()) != ctx.n)
    throw std::invalid_argument("chi must have n exponents");
  for (int& e : chi) {
    e %= std::max(q1, 1);
    if (e < 0) e += std::max(q1, 1);
  }
  spec.chi = std::move(chi);
  if (static_cast<int>(a_diagonals.size()) != ctx.r - 1)
    throw std::invalid_argument("need A_1..A_{r-1}: " + std::to_string(ctx.r - 1) +
                                " diagonals");
  for (const auto& diag : a_diagonals) {
    if (static_cast<int>(diag.size()) != ctx.n)
      throw std::invalid_argument("each A_j needs n diagonal entries");
    FpMatrix a = FpMatrix::zero(ctx.n);
    for (int i = 0; i < ctx.n; ++i) {
      int v = diag[static_cast<std::size_t>(i)] % ctx.p;
      if (v < 0) v += ctx.p;
      a.set(i, i, v);
    }
    spec.A.push_back(a);
  }
  spec.omega = least_primitive_root(ctx.p);
  spec.m = ctx.p * std::max(q1, 1);
  spec.dlog.assign(static_cast<std::size_t>(ctx.p), 0);
  int value = 1;
  for (int e = 0; e < q1; ++e) {
    spec.dlog[static_cast<std::size_t>(value)] = e;
    value = value * spec.omega % ctx.p;
  }
  return spec;
}

bool is_generic(const CharacterSpec& spec) {
  const FpMatrix& last = spec.A.back();
  for (int i = 0; i < spec.ctx.n; ++i)
    for (int j = i + 1; j < spec.ctx.n; ++j)
      if (last.at(i, i) == last.at(j, j)) return false;
  return true;
}

namespace {

// zeta_m^{p*e + (q-1)*c} with e the chi-exponent and c the additive part;
// zeta_{q-1} = zeta_m^p and zeta_p = zeta_m^{q-1}.
Cyclotomic character_value(const CharacterSpec& spec, int chi_exponent, int additive) {
  const int q1 = spec.ctx.p - 1;
  long long k = static_cast<long long>(spec.ctx.p) * chi_exponent +
                static_cast<long long>(std::max(q1, 1)) * additive;
  return Cyclotomic::root_of_unity(spec.m, k);
}

}  // namespace

Cyclotomic theta_eval(const CharacterSpec& spec, const TruncatedMatrix& t) {
  const GroupContext& ctx = spec.ctx;
  if (!membership(ctx, t, {SubgroupTag::Tr, 0}))
    throw MembershipError("theta_eval: input is not in T_r");
  const Coordinates coords = factor_coordinates(ctx, t);
  const int q1 = ctx.p - 1;
  int e = 0;
  if (q1 > 0) {
    for (int i = 0; i < ctx.n; ++i)
      e = (e + spec.chi[static_cast<std::size_t>(i)] *
                   spec.dlog[static_cast<std::size_t>(coords.x.at(i, i))]) %
          std::max(q1, 1);
  }
  int c = 0;
  for (int j = 1; j <= ctx.r - 1; ++j)
    c = (c + fp_trace_product(spec.A[static_cast<std::size_t>(j) - 1],
                              coords.X[static_cast<std::size_t>(j) - 1], ctx.p)) %
        ctx.p;
  return character_value(spec, e, c);
}

Cyclotomic theta_on_subgroup(const CharacterSpec& spec, const TruncatedMatrix& h,
                             InductionSubgroup which) {
  switch (which) {
    case InductionSubgroup::Br: return theta_eval(spec, sigma(spec.ctx, h));
    case InductionSubgroup::Hprime: return theta_eval(spec, sigma_prime(spec.ctx, h));
    case InductionSubgroup::Gr:
      throw std::invalid_argument("theta_on_subgroup: no retraction from G_r");
  }
  throw std::logic_error("bad induction subgroup");
}

const Cyclotomic& ClassFunction::at(const TruncatedMatrix& g) const {
  const long idx = element_index(*domain, g);
  if (idx < 0) throw std::invalid_argument("ClassFunction::at: element not in the domain");
  return values[static_cast<std::size_t>(idx)];
}

namespace {

bool trivial_spec(const CharacterSpec& spec) {
  for (int e : spec.chi)
    if (e != 0) return false;
  for (const FpMatrix& a : spec.A)
    if (!(a == FpMatrix::zero(spec.ctx.n))) return false;
  return true;
}

ClassFunction induce_over(const CharacterSpec& spec, InductionSubgroup which,
                          std::shared_ptr<const std::vector<TruncatedMatrix>> group) {
  const GroupContext& ctx = spec.ctx;
  ClassFunction cf;
  cf.ctx = ctx;
  cf.domain = std::move(group);
  cf.values.reserve(cf.domain->size());

  if (which == InductionSubgroup::Gr) {
    if (!trivial_spec(spec))
      throw std::invalid_argument("induce from G_r supports only the trivial theta");
    cf.values.assign(cf.domain->size(), Cyclotomic::one(spec.m));
    return cf;
  }

  const SubgroupSpec sub{which == InductionSubgroup::Br ? SubgroupTag::Br : SubgroupTag::Hprime,
                         0};
  const std::vector<TruncatedMatrix> reps = coset_representatives(ctx, sub);
  std::vector<TruncatedMatrix> rep_inverses;
  rep_inverses.reserve(reps.size());
  for (const TruncatedMatrix& x : reps) rep_inverses.push_back(mat_inv(x));

  for (const TruncatedMatrix& g : *cf.domain) {
    Cyclotomic sum = Cyclotomic::zero(spec.m);
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const TruncatedMatrix conj = mat_mul(mat_mul(rep_inverses[k], g), reps[k]);
      if (!membership(ctx, conj, sub)) continue;
      sum += theta_on_subgroup(spec, conj, which);
    }
    cf.values.push_back(std::move(sum));
  }
  return cf;
}

}  // namespace

ClassFunction induce(const CharacterSpec& spec, InductionSubgroup which) {
  auto group = std::make_shared<const std::vector<TruncatedMatrix>>(
      enumerate(spec.ctx, {SubgroupTag::Gr, 0}));
  return induce_over(spec, which, std::move(group));
}

MainTheoremReport verify_main_theorem(const CharacterSpec& spec, bool allow_nongeneric) {
  MainTheoremReport report;
  report.generic = is_generic(spec);
  if (!report.generic && !allow_nongeneric)
    throw std::invalid_argument(
        "verify_main_theorem: spec is not generic (A_{r-1} must be regular semisimple); "
        "pass the override to explore anyway");

  const auto start = std::chrono::steady_clock::now();
  auto group = std::make_shared<const std::vector<TruncatedMatrix>>(
      enumerate(spec.ctx, {SubgroupTag::Gr, 0}));
  const ClassFunction from_borel = induce_over(spec, InductionSubgroup::Br, group);
  const ClassFunction from_hprime = induce_over(spec, InductionSubgroup::Hprime, group);

  constexpr std::size_t kMaxRecorded = 16;
  report.elements_checked = group->size();
  for (std::size_t idx = 0; idx < group->size(); ++idx) {
    if (from_borel.values[idx] == from_hprime.values[idx]) continue;
    if (report.mismatches.size() < kMaxRecorded)
      report.mismatches.push_back({(*group)[idx].to_json(), from_borel.values[idx],
                                   from_hprime.values[idx]});
  }
  report.pass = report.mismatches.empty();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace tgc
