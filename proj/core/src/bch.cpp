#include "tgc/bch.hpp"

#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace tgc {

namespace {
constexpr int kBaseA = 10;
constexpr int kBaseB = 40;
constexpr int kBaseC = 70;
constexpr int kBaseM = 100;
constexpr int kBaseN = 130;
constexpr int kBaseU = 160;
constexpr int kMaxIndex = 29;

int family_id(int base, int k) {
  if (k < 1 || k > kMaxIndex)
    throw std::invalid_argument("generator index out of range: " + std::to_string(k));
  return base + k;
}

std::string indexed_label(const char* fam, int k) {
  return std::string(fam) + "." + std::to_string(k);
}
}  // namespace

int id_A(int k) { return family_id(kBaseA, k); }
int id_B(int k) { return family_id(kBaseB, k); }
int id_C(int k) { return family_id(kBaseC, k); }
int id_M(int k) { return family_id(kBaseM, k); }
int id_N(int k) { return family_id(kBaseN, k); }
int id_U(int k) { return family_id(kBaseU, k); }

namespace {

bool is_M_or_N(int id) { return (id > kBaseM && id <= kBaseM + kMaxIndex) ||
                                 (id > kBaseN && id <= kBaseN + kMaxIndex); }
bool is_U_at_least(int id, int k) { return id > kBaseU + k - 1 && id <= kBaseU + kMaxIndex; }

NCPoly gen_poly(int r, const SymbolTablePtr& syms, int id) {
  return NCPoly::generator(r, syms, id);
}

std::string first_monomial_witness(const NCPoly& p) {
  auto terms = p.sorted_terms();
  if (terms.empty()) return "(zero)";
  std::ostringstream os;
  os << rat_to_string(terms.front().second) << " :";
  for (int t = 0; t < terms.front().first.length(); ++t)
    os << ' ' << p.symbols()->at(terms.front().first.letter(t)).label;
  return os.str();
}

}  // namespace

std::shared_ptr<const FactoredSides> compute_eq_factored(int r, int i) {
  if (r < 2 || i < 1 || i > r - 1)
    throw std::invalid_argument("compute_eq_factored: need r >= 2 and 1 <= i <= r-1");
  static std::map<std::pair<int, int>, std::shared_ptr<const FactoredSides>> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find({r, i}); it != memo.end()) return it->second;
  }

  auto syms = std::make_shared<SymbolTable>();
  for (int k = i; k <= r - 1; ++k) syms->add(id_M(k), indexed_label("M", k), k);
  for (int k = 1; k <= r - 1; ++k) syms->add(id_U(k), indexed_label("U", k), k);
  for (int k = i; k <= r - 1; ++k) syms->add(id_N(k), indexed_label("N", k), k);

  NCPoly lhs = NCPoly::one(r, syms);
  for (int k = i; k <= r - 1; ++k) lhs *= exp(gen_poly(r, syms, id_M(k)));
  for (int k = 1; k <= r - 1; ++k) lhs *= exp(gen_poly(r, syms, id_U(k)));
  for (int k = r - 1; k >= i; --k) lhs *= exp(-gen_poly(r, syms, id_N(k)));

  auto sides = std::make_shared<FactoredSides>();
  sides->r = r;
  sides->i = i;
  sides->syms = syms;
  sides->V = factored_log(lhs);

  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(r, i), sides);
  return memo.at({r, i});
}

FactoredSides compute_single_perturbation(int r, int i) {
  auto syms = std::make_shared<SymbolTable>();
  syms->add(id_M(i), "M", i);
  for (int k = 1; k <= r - 1; ++k) syms->add(id_U(k), indexed_label("U", k), k);
  syms->add(id_N(i), "N", i);

  NCPoly lhs = exp(gen_poly(r, syms, id_M(i)));
  for (int k = 1; k <= r - 1; ++k) lhs *= exp(gen_poly(r, syms, id_U(k)));
  lhs *= exp(-gen_poly(r, syms, id_N(i)));

  FactoredSides sides;
  sides.r = r;
  sides.i = i;
  sides.syms = syms;
  sides.V = factored_log(lhs);
  return sides;
}

NCPoly compute_u(int j, const PolyCache* cache) {
  if (j < 1) throw std::invalid_argument("compute_u: j >= 1 required");
  const CacheKey key{"u", {j}, j + 1};
  if (cache)
    if (auto hit = cache->get(key)) return *hit;

  const int r = j + 1;
  auto syms = std::make_shared<SymbolTable>();
  for (int k = 1; k <= j; ++k) syms->add(id_A(k), indexed_label("A", k), k);
  for (int k = 1; k <= j; ++k) syms->add(id_B(k), indexed_label("B", k), k);
  for (int k = 1; k <= j; ++k) syms->add(id_C(k), indexed_label("C", k), k);

  NCPoly lhs = NCPoly::one(r, syms);
  for (int k = 1; k <= j; ++k) lhs *= exp(gen_poly(r, syms, id_A(k)));
  for (int k = 1; k <= j; ++k) lhs *= exp(gen_poly(r, syms, id_B(k)));
  NCPoly c_prod = NCPoly::one(r, syms);
  for (int k = 1; k <= j; ++k) c_prod *= exp(gen_poly(r, syms, id_C(k)));
  lhs *= group_inverse(c_prod);

  NCPoly u = factored_log(lhs)[static_cast<std::size_t>(j) - 1];
  if (cache) cache->put(key, u);
  return u;
}

NCPoly compute_psi(int r, int i, int j, const PolyCache* cache) {
  if (!(1 <= i && i < j && j <= r - 1))
    throw std::invalid_argument("compute_psi: need 1 <= i < j <= r-1");
  const CacheKey key{"psi", {i, j}, r};
  if (cache)
    if (auto hit = cache->get(key)) return *hit;

  auto sides = compute_eq_factored(r, i);
  NCPoly psi = sides->V[static_cast<std::size_t>(j) - 1] -
               gen_poly(r, sides->syms, id_U(j)) - gen_poly(r, sides->syms, id_M(j)) +
               gen_poly(r, sides->syms, id_N(j));
  if (cache) cache->put(key, psi);
  return psi;
}

LemmaReport verify_lemma_4_1(int r, int i) {
  LemmaReport rep{"4.1", r, i, 0, true, "", ""};
  auto sides = compute_eq_factored(r, i);
  auto fail = [&rep](int j, const std::string& why) {
    rep.pass = false;
    rep.j = j;
    rep.witness = why;
  };
  for (int j = 1; j <= r - 1 && rep.pass; ++j) {
    const NCPoly& vj = sides->V[static_cast<std::size_t>(j) - 1];
    if (j < i) {
      if (vj != gen_poly(r, sides->syms, id_U(j))) fail(j, "V_j != U_j below i");
    } else if (j == i) {
      NCPoly expected = gen_poly(r, sides->syms, id_U(j)) + gen_poly(r, sides->syms, id_M(j)) -
                        gen_poly(r, sides->syms, id_N(j));
      if (vj != expected) fail(j, "V_i != U_i + M_i - N_i");
    } else {
      NCPoly psi = compute_psi(r, i, j);
      for (const auto& [m, c] : psi.terms()) {
        if (m.length() <= 1) {
          fail(j, "psi_j has a word of length <= 1: " + first_monomial_witness(psi));
          break;
        }
        for (int t = 0; t < m.length(); ++t) {
          const int id = m.letter(t);
          const bool allowed = (id > kBaseM + i - 1 && id <= kBaseM + j - 1) ||
                               (id > kBaseN + i - 1 && id <= kBaseN + j - 1) ||
                               (id > kBaseU && id <= kBaseU + j - 1);
          if (!allowed) {
            fail(j, "psi_j involves a forbidden generator " +
                        psi.symbols()->at(id).label);
            break;
          }
        }
        if (!rep.pass) break;
      }
      if (rep.pass && !psi.is_zero() && !dynkin_lie_test(psi))
        fail(j, "psi_j fails the Dynkin-Specht-Wever test");
      if (rep.pass && psi != compute_psi(r + 1, i, j))
        fail(j, "psi_j differs between truncation orders r and r+1");
    }
  }
  return rep;
}

LemmaReport verify_lemma_4_2(int r, int i) {
  LemmaReport rep{"4.2", r, i, 0, true, "", ""};
  for (int j = i + 1; j <= r - 1; ++j) {
    NCPoly psi = compute_psi(r, i, j);
    for (const auto& [m, c] : psi.terms()) {
      if (m.grade() != j) {
        rep.pass = false;
        rep.j = j;
        rep.witness = "psi_j has a monomial of grade " + std::to_string(m.grade()) +
                      ", expected " + std::to_string(j);
        return rep;
      }
    }
  }
  return rep;
}

namespace {

// Monomials that mention both one of U_{j-i}..U_{r-1} and one of
// M_i.., N_i..; the obstruction class decided in the canonical basis.
NCPoly mixed_part(const NCPoly& p, int j_minus_i) {
  NCPoly mixed = NCPoly::zero(p.truncation(), p.symbols());
  for (const auto& [m, c] : p.terms()) {
    bool has_u = false, has_mn = false;
    for (int t = 0; t < m.length(); ++t) {
      const int id = m.letter(t);
      has_u = has_u || is_U_at_least(id, j_minus_i);
      has_mn = has_mn || is_M_or_N(id);
    }
    if (has_u && has_mn) mixed.add_term(m, c);
  }
  return mixed;
}

}  // namespace

LemmaReport verify_lemma_4_3(int r, int i, int j) {
  if (!(2 * i < j && j <= r - 1))
    throw std::invalid_argument("verify_lemma_4_3: need 2i < j <= r-1");
  LemmaReport rep{"4.3", r, i, j, true, "", ""};
  auto sides = compute_eq_factored(r, i);
  const NCPoly& vj = sides->V[static_cast<std::size_t>(j) - 1];
  const NCPoly br =
      bracket(gen_poly(r, sides->syms, id_N(i)), gen_poly(r, sides->syms, id_U(j - i)));
  const NCPoly remainder_mixed = mixed_part(vj - br, j - i);
  if (!remainder_mixed.is_zero()) {
    rep.pass = false;
    rep.witness = "V_j - [N_i, U_{j-i}] still has a mixed monomial: " +
                  first_monomial_witness(remainder_mixed);
  }
  const NCPoly v_alone = mixed_part(vj, j - i);
  rep.detail = v_alone.is_zero() ? "V_j alone has no mixed part"
                                 : "mixed part of V_j alone:\n" + to_canonical_string(v_alone);
  return rep;
}

LemmaReport verify_lemma_4_4_and_4_5(int r, int i) {
  LemmaReport rep{"4.4+4.5", r, i, 0, true, "", ""};
  for (int j = i + 1; j <= r - 1; ++j) {
    NCPoly psi = compute_psi(r, i, j);
    // 4.4: killing every M, N must kill psi_j.
    std::map<int, NCPoly> to_zero;
    for (const Generator& g : psi.symbols()->all())
      if (is_M_or_N(g.id)) to_zero.emplace(g.id, NCPoly::zero(psi.truncation(), psi.symbols()));
    NCPoly killed = substitute(psi, to_zero);
    if (!killed.is_zero()) {
      rep.pass = false;
      rep.j = j;
      rep.witness = "psi_j(0,..,0,U) != 0: " + first_monomial_witness(killed);
      return rep;
    }
    // 4.5: every canonical monomial mentions an M or N.
    for (const auto& [m, c] : psi.terms()) {
      bool has_mn = false;
      for (int t = 0; t < m.length(); ++t) has_mn = has_mn || is_M_or_N(m.letter(t));
      if (!has_mn) {
        rep.pass = false;
        rep.j = j;
        rep.witness = "psi_j has a pure-U monomial";
        return rep;
      }
    }
  }
  return rep;
}

LemmaReport verify_lemma_4_6(int i, int j) {
  if (!(i < j && j < 2 * i))
    throw std::invalid_argument("verify_lemma_4_6: need i < j < 2i");
  const int r = j + 1;
  LemmaReport rep{"4.6", r, i, j, true, "", ""};
  FactoredSides sides = compute_single_perturbation(r, i);
  const NCPoly& vj = sides.V[static_cast<std::size_t>(j) - 1];

  NCPoly expected = gen_poly(r, sides.syms, id_U(j));
  const NCPoly m_poly = gen_poly(r, sides.syms, id_M(i));
  for (const auto& lambda : partitions(j - i)) {
    // ad^lambda applies ad_{U_1} lambda(1) times first, then ad_{U_2}, ...
    NCPoly term = m_poly;
    Int mult_factorials = 1;
    for (int k = 1; k <= j - i; ++k) {
      const int times = partition_multiplicity(lambda, k);
      Int f = 1;
      for (int t = 2; t <= times; ++t) f *= t;
      mult_factorials *= f;
      const NCPoly uk = gen_poly(r, sides.syms, id_U(k));
      for (int t = 0; t < times; ++t) term = bracket(uk, term);
    }
    const int sign = partition_length(lambda) % 2 == 0 ? 1 : -1;
    expected += Rational(Int(sign), mult_factorials) * term;
  }

  if (vj != expected) {
    rep.pass = false;
    rep.witness = "V_j differs from the partition formula; difference:\n" +
                  to_canonical_string(vj - expected);
  }
  return rep;
}

}  // namespace tgc
