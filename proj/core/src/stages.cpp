#include "tgc/stages.hpp"

#include "tgc/bch.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace tgc {

std::string StageId::to_string() const {
  return (kind == Kind::X ? "X_" : "Y_") + std::to_string(index);
}

std::vector<StageId> stage_chain(const GroupContext& ctx) {
  std::vector<StageId> chain;
  for (int i = ctx.r; i >= ctx.r_hi; --i) chain.push_back({StageId::Kind::X, i});
  for (int i = 1; i <= ctx.r_lo; ++i) chain.push_back({StageId::Kind::Y, i});
  return chain;
}

std::vector<FpMatrix> u_coordinates(const GroupContext& ctx, const FpMatrix& y,
                                    const std::vector<FpMatrix>& xs,
                                    const std::vector<FpMatrix>& ys) {
  const FpMatrix yinv = fp_inv(y, ctx.p);
  TruncatedMatrix left = TruncatedMatrix::identity(ctx);
  for (int j = 1; j <= ctx.r - 1; ++j) {
    const FpMatrix conj = fp_mul(fp_mul(yinv, xs[static_cast<std::size_t>(j) - 1], ctx.p), y, ctx.p);
    left = mat_mul(left, exp_matrix(ctx, j, conj));
  }
  TruncatedMatrix mid = TruncatedMatrix::identity(ctx);
  for (int j = 1; j <= ctx.r - 1; ++j)
    mid = mat_mul(mid, exp_matrix(ctx, j, ys[static_cast<std::size_t>(j) - 1]));
  TruncatedMatrix right = TruncatedMatrix::identity(ctx);
  for (int j = 1; j <= ctx.r - 1; ++j)
    right = mat_mul(right, exp_matrix(ctx, j, xs[static_cast<std::size_t>(j) - 1]));
  const TruncatedMatrix product = mat_mul(mat_mul(left, mid), mat_inv(right));
  return factor_coordinates(ctx, product).X;
}

int h_hat_eval(const CharacterSpec& spec, const FiberPoint& point) {
  const GroupContext& ctx = spec.ctx;
  const std::vector<FpMatrix> us = u_coordinates(ctx, point.y, point.X, point.Y);
  const FpMatrix xinv = fp_inv(point.x, ctx.p);
  int h = 0;
  for (int j = 1; j <= ctx.r - 1; ++j) {
    const FpMatrix conj_a =
        fp_mul(fp_mul(xinv, spec.A[static_cast<std::size_t>(j) - 1], ctx.p), point.x, ctx.p);
    h = (h + fp_trace_product(conj_a, us[static_cast<std::size_t>(j) - 1], ctx.p)) % ctx.p;
  }
  return h;
}

FpMatrix iota_hat_eval(const GroupContext& ctx, const FiberPoint& point) {
  const FpMatrix b = fp_mul(fp_mul(point.x, point.y, ctx.p), fp_inv(point.x, ctx.p), ctx.p);
  if (!fp_is_upper(b))
    throw std::domain_error("iota_hat_eval: x y x^{-1} is not upper triangular");
  return fp_diagonal_part(b);
}

namespace {

std::vector<FpMatrix> enumerate_glnp(int n, int p) {
  std::vector<FpMatrix> out;
  FpMatrix m = FpMatrix::zero(n);
  const std::size_t nd = m.a.size();
  while (true) {
    if (fp_invertible(m, p)) out.push_back(m);
    std::size_t pos = nd;
    bool done = false;
    while (pos > 0) {
      --pos;
      if (++m.a[pos] < p) break;
      m.a[pos] = 0;
      if (pos == 0) done = true;
    }
    if (done) return out;
  }
}

// First-seen representatives of the right cosets T(F_p) x in GL_n(F_p).
std::vector<FpMatrix> torus_coset_reps(int n, int p) {
  const std::vector<FpMatrix> gl = enumerate_glnp(n, p);
  auto key = [](const FpMatrix& m) { return m.a; };
  std::vector<std::vector<std::uint8_t>> seen;
  seen.reserve(gl.size());
  for (const FpMatrix& g : gl) seen.push_back(key(g));
  std::sort(seen.begin(), seen.end());
  std::vector<bool> visited(gl.size(), false);
  auto index_of = [&](const FpMatrix& m) {
    auto it = std::lower_bound(seen.begin(), seen.end(), key(m));
    return static_cast<std::size_t>(it - seen.begin());
  };
  // Torus elements: all diagonal unit tuples.
  std::vector<FpMatrix> torus;
  std::vector<int> diag(static_cast<std::size_t>(n), 1);
  while (true) {
    FpMatrix t = FpMatrix::zero(n);
    for (int i = 0; i < n; ++i) t.set(i, i, diag[static_cast<std::size_t>(i)]);
    torus.push_back(t);
    int pos = n;
    bool done = false;
    while (pos > 0) {
      --pos;
      if (++diag[static_cast<std::size_t>(pos)] < p) break;
      diag[static_cast<std::size_t>(pos)] = 1;
      if (pos == 0) done = true;
    }
    if (done) break;
  }
  std::vector<FpMatrix> reps;
  for (std::size_t idx = 0; idx < gl.size(); ++idx) {
    if (visited[idx]) continue;
    reps.push_back(gl[idx]);
    for (const FpMatrix& t : torus) visited[index_of(fp_mul(t, gl[idx], p))] = true;
  }
  return reps;
}

struct StagePredicates {
  bool in_b = false;  // x y x^{-1} in B
  bool in_t = false;  // x y x^{-1} in T
  std::vector<bool> cond_b;  // [j-1]: x U_j x^{-1} upper triangular
  std::vector<bool> cond_t;  // [j-1]: x U_j x^{-1} diagonal
};

bool stage_satisfied(const GroupContext& ctx, const StageId& stage, const StagePredicates& pr) {
  if (stage.kind == StageId::Kind::X || stage.index == 0) {
    const int i = stage.kind == StageId::Kind::X ? stage.index : ctx.r_hi;
    if (!pr.in_b) return false;
    for (int j = 1; j <= i - 1; ++j)
      if (!pr.cond_b[static_cast<std::size_t>(j) - 1]) return false;
    return true;
  }
  if (!pr.in_t) return false;
  for (int j = 1; j <= stage.index - 1; ++j)
    if (!pr.cond_t[static_cast<std::size_t>(j) - 1]) return false;
  for (int j = stage.index; j <= ctx.r_hi - 1; ++j)
    if (!pr.cond_b[static_cast<std::size_t>(j) - 1]) return false;
  return true;
}

struct TorusRepData {
  FpMatrix x;
  FpMatrix xinv;
  std::vector<FpMatrix> conj_a;  // x^{-1} A_j x
};

std::vector<TorusRepData> prepare_reps(const CharacterSpec& spec) {
  const GroupContext& ctx = spec.ctx;
  std::vector<TorusRepData> data;
  for (const FpMatrix& x : torus_coset_reps(ctx.n, ctx.p)) {
    TorusRepData d;
    d.x = x;
    d.xinv = fp_inv(x, ctx.p);
    for (int j = 1; j <= ctx.r - 1; ++j)
      d.conj_a.push_back(
          fp_mul(fp_mul(d.xinv, spec.A[static_cast<std::size_t>(j) - 1], ctx.p), x, ctx.p));
    data.push_back(std::move(d));
  }
  return data;
}

Int fiber_size(const GroupContext& ctx, std::size_t rep_count) {
  Int size = static_cast<std::uint64_t>(rep_count);
  for (int k = 0; k < ctx.n * ctx.n * (ctx.r - 1); ++k) size *= ctx.p;
  return size;
}

// One pass over the fiber of gprime, accumulating a zeta_m-exponent histogram
// per stage of the chain.
std::vector<Cyclotomic> stage_traces_all(const CharacterSpec& spec,
                                         const std::vector<TorusRepData>& reps,
                                         const std::vector<StageId>& chain,
                                         const TruncatedMatrix& gprime) {
  const GroupContext& ctx = spec.ctx;
  const int q1 = std::max(ctx.p - 1, 1);
  const Coordinates gcoords = factor_coordinates(ctx, gprime);
  const FpMatrix& y = gcoords.x;
  const std::vector<FpMatrix>& ys = gcoords.X;

  std::vector<std::vector<long long>> hist(
      chain.size(), std::vector<long long>(static_cast<std::size_t>(spec.m), 0));

  // Odometer over the free coordinates X_1..X_{r-1}.
  const int digits_count = ctx.n * ctx.n * (ctx.r - 1);
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(digits_count), 0);
  std::vector<FpMatrix> xs(static_cast<std::size_t>(ctx.r - 1), FpMatrix::zero(ctx.n));
  while (true) {
    {
      std::size_t d = 0;
      for (int j = 0; j < ctx.r - 1; ++j)
        for (int i = 0; i < ctx.n * ctx.n; ++i)
          xs[static_cast<std::size_t>(j)].a[static_cast<std::size_t>(i)] = digits[d++];
    }
    const std::vector<FpMatrix> us = u_coordinates(ctx, y, xs, ys);

    for (const TorusRepData& rep : reps) {
      const FpMatrix b0 = fp_mul(fp_mul(rep.x, y, ctx.p), rep.xinv, ctx.p);
      if (!fp_is_upper(b0)) continue;
      StagePredicates pr;
      pr.in_b = true;
      pr.in_t = fp_is_diagonal(b0);
      pr.cond_b.resize(static_cast<std::size_t>(ctx.r - 1));
      pr.cond_t.resize(static_cast<std::size_t>(ctx.r - 1));
      int h = 0;
      for (int j = 1; j <= ctx.r - 1; ++j) {
        const FpMatrix w =
            fp_mul(fp_mul(rep.x, us[static_cast<std::size_t>(j) - 1], ctx.p), rep.xinv, ctx.p);
        pr.cond_b[static_cast<std::size_t>(j) - 1] = fp_is_upper(w);
        pr.cond_t[static_cast<std::size_t>(j) - 1] = fp_is_diagonal(w);
        h = (h + fp_trace_product(rep.conj_a[static_cast<std::size_t>(j) - 1],
                                  us[static_cast<std::size_t>(j) - 1], ctx.p)) %
            ctx.p;
      }
      int e = 0;
      if (ctx.p > 2)
        for (int i = 0; i < ctx.n; ++i)
          e = (e + spec.chi[static_cast<std::size_t>(i)] *
                       spec.dlog[static_cast<std::size_t>(b0.at(i, i))]) %
              q1;
      const long long k =
          (static_cast<long long>(ctx.p) * e + static_cast<long long>(q1) * h) % spec.m;
      for (std::size_t s = 0; s < chain.size(); ++s)
        if (stage_satisfied(ctx, chain[s], pr)) ++hist[s][static_cast<std::size_t>(k)];
    }

    std::size_t pos = digits.size();
    bool done = false;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < ctx.p) break;
      digits[pos] = 0;
      if (pos == 0) done = true;
    }
    if (done) break;
  }

  std::vector<Cyclotomic> traces;
  traces.reserve(chain.size());
  for (const auto& counts : hist) {
    std::vector<Rational> poly(static_cast<std::size_t>(spec.m), Rational(0));
    for (std::size_t k = 0; k < counts.size(); ++k) poly[k] = counts[k];
    traces.push_back(Cyclotomic::from_poly(spec.m, std::move(poly)));
  }
  return traces;
}

}  // namespace

Cyclotomic stage_trace(const CharacterSpec& spec, const StageId& stage,
                       const TruncatedMatrix& gprime) {
  const GroupContext& ctx = spec.ctx;
  const std::vector<TorusRepData> reps = prepare_reps(spec);
  if (fiber_size(ctx, reps.size()) > ctx.budget)
    throw BudgetExceeded("stage_trace fiber enumeration exceeds budget");
  const std::vector<StageId> chain = stage_chain(ctx);
  const std::vector<Cyclotomic> traces = stage_traces_all(spec, reps, chain, gprime);
  for (std::size_t s = 0; s < chain.size(); ++s)
    if (chain[s] == stage ||
        (stage.kind == StageId::Kind::Y && stage.index == 0 &&
         chain[s] == StageId{StageId::Kind::X, ctx.r_hi}))
      return traces[s];
  throw std::invalid_argument("stage_trace: stage " + stage.to_string() +
                              " is outside the chain for r=" + std::to_string(ctx.r));
}

StageChainReport verify_stage_chain(const CharacterSpec& spec) {
  const GroupContext& ctx = spec.ctx;
  StageChainReport report;
  const auto start = std::chrono::steady_clock::now();

  const std::vector<TorusRepData> reps = prepare_reps(spec);
  if (fiber_size(ctx, reps.size()) > ctx.budget)
    throw BudgetExceeded("verify_stage_chain fiber enumeration exceeds budget");
  const std::vector<StageId> chain = stage_chain(ctx);
  const ClassFunction ind_borel = induce(spec, InductionSubgroup::Br);

  // d = r dim b - dim T, the twist exponent carried by the X_r anchor.
  const int d = ctx.r * (ctx.n * (ctx.n + 1) / 2) - ctx.n;
  Rational qd = 1;
  for (int k = 0; k < d; ++k) qd *= ctx.p;

  constexpr std::size_t kMaxRecorded = 16;
  report.elements_checked = ind_borel.domain->size();
  for (std::size_t idx = 0; idx < ind_borel.domain->size(); ++idx) {
    const TruncatedMatrix& g = (*ind_borel.domain)[idx];
    const std::vector<Cyclotomic> traces = stage_traces_all(spec, reps, chain, g);
    for (std::size_t s = 0; s + 1 < chain.size(); ++s) {
      if (traces[s] == traces[s + 1]) continue;
      if (report.counterexamples.size() < kMaxRecorded) {
        std::ostringstream os;
        os << chain[s].to_string() << " vs " << chain[s + 1].to_string() << " at g'="
           << g.to_json() << ": " << traces[s].to_string() << " != "
           << traces[s + 1].to_string();
        report.counterexamples.push_back(os.str());
      }
    }
    if (traces.front() != ind_borel.values[idx] * qd &&
        report.counterexamples.size() < kMaxRecorded) {
      std::ostringstream os;
      os << "X_r anchor at g'=" << g.to_json() << ": trace " << traces.front().to_string()
         << " != q^d * Ind theta = " << (ind_borel.values[idx] * qd).to_string();
      report.counterexamples.push_back(os.str());
    }
  }
  report.anchor_checked = true;
  report.pass = report.counterexamples.empty();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Cyclotomic exp_sum_affine(int p, int n_vars, const std::vector<int>& coeffs, int c) {
  if (!is_prime(p)) throw std::invalid_argument("exp_sum_affine: p must be prime");
  if (n_vars < 0 || static_cast<int>(coeffs.size()) != n_vars)
    throw std::invalid_argument("exp_sum_affine: need one coefficient per variable");
  std::vector<long long> counts(static_cast<std::size_t>(p), 0);
  std::vector<int> point(static_cast<std::size_t>(n_vars), 0);
  while (true) {
    int value = c % p;
    if (value < 0) value += p;
    for (int i = 0; i < n_vars; ++i)
      value = (value + coeffs[static_cast<std::size_t>(i)] * point[static_cast<std::size_t>(i)]) % p;
    ++counts[static_cast<std::size_t>((value % p + p) % p)];
    int pos = n_vars;
    bool done = n_vars == 0;
    while (pos > 0) {
      --pos;
      if (++point[static_cast<std::size_t>(pos)] < p) break;
      point[static_cast<std::size_t>(pos)] = 0;
      if (pos == 0) done = true;
    }
    if (done) break;
  }
  std::vector<Rational> poly(static_cast<std::size_t>(p), Rational(0));
  for (std::size_t k = 0; k < counts.size(); ++k) poly[k] = counts[k];
  return Cyclotomic::from_poly(p, std::move(poly));
}

FpMatrix eval_ncpoly_mod_p(const NCPoly& poly, const std::map<int, FpMatrix>& assignment,
                           int n, int p) {
  FpMatrix acc = FpMatrix::zero(n);
  for (const auto& [mono, coeff] : poly.terms()) {
    FpMatrix term = FpMatrix::identity(n);
    for (int t = 0; t < mono.length(); ++t) {
      auto it = assignment.find(mono.letter(t));
      if (it == assignment.end())
        throw std::invalid_argument("eval_ncpoly_mod_p: no matrix for generator id " +
                                    std::to_string(mono.letter(t)));
      term = fp_mul(term, it->second, p);
    }
    acc = fp_add(acc, fp_scale(rat_mod_p(coeff, p), term, p), p);
  }
  return acc;
}

CrossValidateReport cross_validate_u(const GroupContext& ctx, int trials, std::uint64_t seed,
                                     const PolyCache* cache) {
  CrossValidateReport report;
  report.trials = trials;
  const auto start = std::chrono::steady_clock::now();

  std::vector<NCPoly> us;
  for (int j = 1; j <= ctx.r - 1; ++j) us.push_back(compute_u(j, cache));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, ctx.p - 1);
  auto random_matrix = [&]() {
    FpMatrix m = FpMatrix::zero(ctx.n);
    for (auto& v : m.a) v = static_cast<std::uint8_t>(dist(rng));
    return m;
  };

  for (int trial = 0; trial < trials && report.witness.empty(); ++trial) {
    std::map<int, FpMatrix> assignment;
    std::vector<FpMatrix> as, bs, cs;
    for (int k = 1; k <= ctx.r - 1; ++k) {
      as.push_back(random_matrix());
      bs.push_back(random_matrix());
      cs.push_back(random_matrix());
      assignment.emplace(id_A(k), as.back());
      assignment.emplace(id_B(k), bs.back());
      assignment.emplace(id_C(k), cs.back());
    }
    TruncatedMatrix prod = TruncatedMatrix::identity(ctx);
    for (int k = 1; k <= ctx.r - 1; ++k)
      prod = mat_mul(prod, exp_matrix(ctx, k, as[static_cast<std::size_t>(k) - 1]));
    for (int k = 1; k <= ctx.r - 1; ++k)
      prod = mat_mul(prod, exp_matrix(ctx, k, bs[static_cast<std::size_t>(k) - 1]));
    TruncatedMatrix c_prod = TruncatedMatrix::identity(ctx);
    for (int k = 1; k <= ctx.r - 1; ++k)
      c_prod = mat_mul(c_prod, exp_matrix(ctx, k, cs[static_cast<std::size_t>(k) - 1]));
    prod = mat_mul(prod, mat_inv(c_prod));

    const Coordinates coords = factor_coordinates(ctx, prod);
    for (int j = 1; j <= ctx.r - 1; ++j) {
      const FpMatrix symbolic =
          eval_ncpoly_mod_p(us[static_cast<std::size_t>(j) - 1], assignment, ctx.n, ctx.p);
      if (!(symbolic == coords.X[static_cast<std::size_t>(j) - 1])) {
        std::ostringstream os;
        os << "trial " << trial << ", j=" << j
           << ": symbolic u_j and matrix coordinate disagree";
        report.witness = os.str();
        break;
      }
    }
  }
  report.pass = report.witness.empty();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace tgc
