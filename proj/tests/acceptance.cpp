// Acceptance suite: one line per criterion, exact arithmetic throughout.
// Exit status 0 iff every criterion passes.

#include "tgc/bch.hpp"
#include "tgc/characters.hpp"
#include "tgc/cyclotomic.hpp"
#include "tgc/ncpoly.hpp"
#include "tgc/stages.hpp"
#include "tgc/subgroups.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace tgc;

namespace {

int failures = 0;

void run_criterion(int number, const std::string& title, double time_limit_seconds,
                   const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  const auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > time_limit_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("exceeded time target of ") +
              std::to_string(time_limit_seconds) + "s";
  }
  if (!ok) ++failures;
  std::printf("C%d %s (%.1fs): %s%s%s\n", number, ok ? "PASS" : "FAIL", seconds, title.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

bool criterion_lemma_suite(std::string& detail) {
  int checked = 0;
  for (int r = 2; r <= 6; ++r)
    for (int i = 1; i <= r - 1; ++i) {
      for (const LemmaReport& rep :
           {verify_lemma_4_1(r, i), verify_lemma_4_2(r, i), verify_lemma_4_4_and_4_5(r, i)}) {
        ++checked;
        if (!rep.pass) {
          detail = "lemma " + rep.lemma + " failed at r=" + std::to_string(r) +
                   ", i=" + std::to_string(i) + ": " + rep.witness;
          return false;
        }
      }
      for (int j = 2 * i + 1; j <= r - 1; ++j) {
        ++checked;
        const LemmaReport rep = verify_lemma_4_3(r, i, j);
        if (!rep.pass) {
          detail = "lemma 4.3 failed at (r,i,j)=(" + std::to_string(r) + "," +
                   std::to_string(i) + "," + std::to_string(j) + "): " + rep.witness;
          return false;
        }
      }
    }
  for (int i = 2; i <= 6; ++i)
    for (int j = i + 1; j < 2 * i && j <= 7; ++j) {
      ++checked;
      const LemmaReport rep = verify_lemma_4_6(i, j);
      if (!rep.pass) {
        detail = "lemma 4.6 failed at (i,j)=(" + std::to_string(i) + "," + std::to_string(j) +
                 "): " + rep.witness;
        return false;
      }
    }
  detail = std::to_string(checked) + " lemma instances";
  return true;
}

bool criterion_u_contract(std::string& detail) {
  for (int j = 1; j <= 5; ++j) {
    const NCPoly uj = compute_u(j);
    auto syms = uj.symbols();
    const NCPoly head = NCPoly::generator(j + 1, syms, id_A(j)) +
                        NCPoly::generator(j + 1, syms, id_B(j)) -
                        NCPoly::generator(j + 1, syms, id_C(j));
    const NCPoly tail = uj - head;
    if (tail.constant_term() != 0) {
      detail = "u_" + std::to_string(j) + " has a constant term";
      return false;
    }
    for (const auto& [m, c] : tail.terms())
      if (m.length() <= 1) {
        detail = "u_" + std::to_string(j) + " - (A+B-C) has a linear term";
        return false;
      }
    if (!tail.is_zero() && !dynkin_lie_test(tail)) {
      detail = "u_" + std::to_string(j) + " - (A+B-C) is not a Lie polynomial";
      return false;
    }
  }
  {
    const NCPoly u1 = compute_u(1);
    auto s = u1.symbols();
    if (u1 != NCPoly::generator(2, s, id_A(1)) + NCPoly::generator(2, s, id_B(1)) -
                  NCPoly::generator(2, s, id_C(1))) {
      detail = "u_1 differs from A_1 + B_1 - C_1";
      return false;
    }
  }
  {
    const NCPoly u2 = compute_u(2);
    auto s = u2.symbols();
    auto g = [&](int id) { return NCPoly::generator(3, s, id); };
    const NCPoly expected =
        g(id_A(2)) + g(id_B(2)) - g(id_C(2)) +
        Rational(1, 2) * (bracket(g(id_A(1)), g(id_B(1))) - bracket(g(id_A(1)), g(id_C(1))) -
                          bracket(g(id_B(1)), g(id_C(1))));
    if (u2 != expected) {
      detail = "u_2 differs from its degree-2 closed form";
      return false;
    }
  }
  detail = "u_1..u_5 verified";
  return true;
}

bool theorem_instance(int q, int r, const std::vector<int>& chi,
                      const std::vector<std::vector<int>>& a, std::uint64_t expected_size,
                      std::string& detail) {
  const GroupContext ctx = make_group_context(2, q, r);
  const CharacterSpec spec = make_character_spec(ctx, chi, a);
  if (!is_generic(spec)) {
    detail = "test spec unexpectedly non-generic";
    return false;
  }
  const MainTheoremReport report = verify_main_theorem(spec);
  if (report.elements_checked != expected_size) {
    detail = "expected " + std::to_string(expected_size) + " elements, saw " +
             std::to_string(report.elements_checked);
    return false;
  }
  if (!report.pass) {
    detail = "induced characters differ at " + report.mismatches.front().element_json +
             " (q=" + std::to_string(q) + ", r=" + std::to_string(r) + ")";
    return false;
  }
  return true;
}

bool criterion_main_theorem(std::string& detail) {
  if (!theorem_instance(2, 2, {0, 0}, {{0, 1}}, 96, detail)) return false;
  // Two distinct chi at q=3 for each truncation order.
  if (!theorem_instance(3, 2, {1, 0}, {{1, 2}}, 3888, detail)) return false;
  if (!theorem_instance(3, 2, {0, 1}, {{1, 2}}, 3888, detail)) return false;
  if (!theorem_instance(3, 3, {1, 0}, {{0, 1}, {1, 2}}, 314928, detail)) return false;
  if (!theorem_instance(3, 3, {0, 1}, {{0, 1}, {1, 2}}, 314928, detail)) return false;
  detail = "five generic instances, exact equality everywhere";
  return true;
}

bool criterion_stage_chain(std::string& detail) {
  {
    const GroupContext ctx = make_group_context(2, 2, 2);
    const StageChainReport report =
        verify_stage_chain(make_character_spec(ctx, {0, 0}, {{0, 1}}));
    if (!report.pass) {
      detail = "(2,2): " + report.counterexamples.front();
      return false;
    }
  }
  {
    const GroupContext ctx = make_group_context(2, 3, 2);
    const StageChainReport report =
        verify_stage_chain(make_character_spec(ctx, {1, 0}, {{1, 2}}));
    if (!report.pass) {
      detail = "(3,2): " + report.counterexamples.front();
      return false;
    }
  }
  detail = "chains constant and X_r anchor equals q^4 * Ind theta";
  return true;
}

bool criterion_exp_sum(std::string& detail) {
  int checked = 0;
  for (int p : {2, 3, 5})
    for (int n_vars = 1; n_vars <= 2; ++n_vars) {
      std::vector<int> coeffs(static_cast<std::size_t>(n_vars), 0);
      while (true) {
        const bool constant =
            std::all_of(coeffs.begin(), coeffs.end(), [](int a) { return a == 0; });
        for (int c = 0; c < p; ++c) {
          ++checked;
          const Cyclotomic sum = exp_sum_affine(p, n_vars, coeffs, c);
          if (sum.is_zero() == constant) {
            std::ostringstream os;
            os << "wrong vanishing at p=" << p << ", coeffs=[";
            for (std::size_t t = 0; t < coeffs.size(); ++t) os << (t ? "," : "") << coeffs[t];
            os << "], c=" << c;
            detail = os.str();
            return false;
          }
          if (constant) {
            Rational pn = 1;
            for (int k = 0; k < n_vars; ++k) pn *= p;
            if (sum != Cyclotomic::root_of_unity(p, c) * pn) {
              detail = "constant-case value wrong at p=" + std::to_string(p);
              return false;
            }
          }
        }
        int pos = n_vars;
        bool done = false;
        while (pos > 0) {
          --pos;
          if (++coeffs[static_cast<std::size_t>(pos)] < p) break;
          coeffs[static_cast<std::size_t>(pos)] = 0;
          if (pos == 0) done = true;
        }
        if (done) break;
      }
    }
  detail = std::to_string(checked) + " affine functions";
  return true;
}

bool criterion_sigma_prime_structure(std::string& detail) {
  const GroupContext ctx = make_group_context(2, 3, 3);
  const auto hprime = enumerate(ctx, {SubgroupTag::Hprime, 0});
  const auto kappa = enumerate(ctx, {SubgroupTag::K, 0});
  const auto torus = enumerate(ctx, {SubgroupTag::Tr, 0});

  if (Int(hprime.size()) != Int(torus.size()) * Int(kappa.size())) {
    detail = "|Hprime| != |T_r| * |K|";
    return false;
  }
  int in_both = 0;
  for (const TruncatedMatrix& t : torus)
    if (membership(ctx, t, {SubgroupTag::K, 0})) ++in_both;
  if (in_both != 1) {
    detail = "T_r and K meet in more than the identity";
    return false;
  }
  for (const TruncatedMatrix& g : hprime) {
    const TruncatedMatrix ginv = mat_inv(g);
    for (const TruncatedMatrix& k : kappa)
      if (!membership(ctx, mat_mul(mat_mul(g, k), ginv), {SubgroupTag::K, 0})) {
        detail = "K is not normal: witness g=" + g.to_json() + ", k=" + k.to_json();
        return false;
      }
  }
  for (const TruncatedMatrix& t : torus)
    if (sigma_prime(ctx, t) != t) {
      detail = "sigma' moves the torus element " + t.to_json();
      return false;
    }
  std::mt19937_64 rng(20260809);
  std::uniform_int_distribution<std::size_t> pick(0, hprime.size() - 1);
  for (int trial = 0; trial < 10000; ++trial) {
    const TruncatedMatrix& h1 = hprime[pick(rng)];
    const TruncatedMatrix& h2 = hprime[pick(rng)];
    if (sigma_prime(ctx, mat_mul(h1, h2)) !=
        mat_mul(sigma_prime(ctx, h1), sigma_prime(ctx, h2))) {
      detail = "sigma' not multiplicative at a random pair";
      return false;
    }
  }
  detail = "normality exhaustive over " + std::to_string(hprime.size()) + "x" +
           std::to_string(kappa.size()) + " pairs; 10^4 homomorphism samples";
  return true;
}

bool criterion_cross_validation(std::string& detail) {
  const GroupContext ctx = make_group_context(2, 5, 4);
  const CrossValidateReport report = cross_validate_u(ctx, 100, 20260809);
  if (!report.pass) {
    detail = report.witness;
    return false;
  }
  detail = "100 randomized trials at q=5, r=4";
  return true;
}

bool criterion_infrastructure(std::string& detail) {
  // exp/log and factored_log/factored_exp round trips, r <= 5.
  auto syms = std::make_shared<SymbolTable>();
  syms->add(1, "A", 1);
  syms->add(2, "B", 1);
  syms->add(3, "C", 1);
  std::mt19937_64 rng(20260809);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> den(1, 2);
  std::uniform_int_distribution<int> len(1, 3);
  std::uniform_int_distribution<int> letter(1, 3);
  for (int r = 3; r <= 5; ++r)
    for (int trial = 0; trial < 20; ++trial) {
      NCPoly g = NCPoly::one(r, syms);
      for (int t = 0; t < 4; ++t) {
        Monomial m;
        const int l = len(rng);
        for (int k = 0; k < l; ++k) m = Monomial::concat(m, Monomial::single(letter(rng), 1));
        g.add_term(m, Rational(coeff(rng), den(rng)));
      }
      const NCPoly x = g - NCPoly::constant(r, syms, g.constant_term());
      if (log(exp(x)) != x) {
        detail = "log(exp(x)) != x at r=" + std::to_string(r);
        return false;
      }
      if (exp(log(g)) != g) {
        detail = "exp(log(g)) != g at r=" + std::to_string(r);
        return false;
      }
      if (factored_exp(factored_log(g), r, syms) != g) {
        detail = "factored round trip failed at r=" + std::to_string(r);
        return false;
      }
    }

  // Cyclotomic canonical equality: equal elements via distinct expression trees.
  std::uniform_int_distribution<int> small(-4, 4);
  for (int m : {5, 8, 12, 20}) {
    const int phi = euler_phi(m);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Rational> ca(static_cast<std::size_t>(phi)), cb(static_cast<std::size_t>(phi));
      for (auto& v : ca) v = Rational(small(rng), den(rng));
      for (auto& v : cb) v = Rational(small(rng), den(rng));
      const Cyclotomic a = Cyclotomic::from_poly(m, ca);
      const Cyclotomic b = Cyclotomic::from_poly(m, cb);
      if ((a + b) * (a - b) != a * a - b * b || (a * b) * a != a * (b * a)) {
        detail = "cyclotomic canonical equality failed at m=" + std::to_string(m);
        return false;
      }
      if ((a + b).coeffs() != (b + a).coeffs()) {
        detail = "canonical coefficient vectors differ for equal elements";
        return false;
      }
    }
  }

  // Enumeration counts match closed-form orders at all three contexts.
  std::uint64_t enumerated = 0;
  for (auto [q, r] : {std::pair<int, int>{2, 2}, {3, 2}, {3, 3}}) {
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
      const auto elements = enumerate(ctx, spec);  // verifies the count internally
      if (Int(elements.size()) != subgroup_order(ctx, spec)) {
        detail = "count mismatch for " + spec.to_string() + " at q=" + std::to_string(q) +
                 ", r=" + std::to_string(r);
        return false;
      }
      enumerated += elements.size();
    }
  }
  detail = "round trips, canonical equality, " + std::to_string(enumerated) +
           " elements enumerated against closed forms";
  return true;
}

}  // namespace

int main() {
  std::printf("acceptance suite: exact verification, fixed seeds\n");
  run_criterion(1, "lemma suite 4.1-4.6 over 2 <= r <= 6", 300, criterion_lemma_suite);
  run_criterion(2, "u_j contract for j <= 5", 300, criterion_u_contract);
  run_criterion(3, "main theorem, exhaustive induced-character equality", 900,
                criterion_main_theorem);
  run_criterion(4, "stage-trace chain with q^d anchor at (2,2) and (3,2)", 600,
                criterion_stage_chain);
  run_criterion(5, "exponential-sum vanishing, exhaustive p in {2,3,5}, N <= 2", 60,
                criterion_exp_sum);
  run_criterion(6, "sigma'/K structure at (3,3)", 300, criterion_sigma_prime_structure);
  run_criterion(7, "symbolic vs matrix cross-validation, 100 trials at q=5, r=4", 60,
                criterion_cross_validation);
  run_criterion(8, "infrastructure: round trips, canonical equality, enumeration counts", 300,
                criterion_infrastructure);
  if (failures == 0) {
    std::printf("ALL ACCEPTANCE CRITERIA PASSED\n");
    return 0;
  }
  std::printf("%d CRITERIA FAILED\n", failures);
  return 1;
}
