#include "tgc/ncpoly.hpp"

#include <algorithm>
#include <sstream>

namespace tgc {

Generator SymbolTable::add(int id, const std::string& label, int grade) {
  if (id < 1 || id > 255) throw std::invalid_argument("generator id must be in 1..255");
  if (grade < 1 || grade > 255) throw std::invalid_argument("generator grade must be in 1..255");
  if (by_id_.count(id)) throw std::invalid_argument("duplicate generator id " + std::to_string(id));
  if (by_label_.count(label)) throw std::invalid_argument("duplicate generator label " + label);
  Generator g{id, grade, label};
  by_id_[id] = gens_.size();
  by_label_[label] = gens_.size();
  gens_.push_back(g);
  return g;
}

const Generator* SymbolTable::find(int id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &gens_[it->second];
}

const Generator& SymbolTable::at(int id) const {
  const Generator* g = find(id);
  if (!g) throw std::invalid_argument("unknown generator id " + std::to_string(id));
  return *g;
}

const Generator* SymbolTable::find_label(const std::string& label) const {
  auto it = by_label_.find(label);
  return it == by_label_.end() ? nullptr : &gens_[it->second];
}

Monomial Monomial::single(int id, int grade) {
  Monomial m;
  m.len_ = 1;
  m.grade_ = static_cast<std::uint8_t>(grade);
  m.w_[0] = static_cast<std::uint8_t>(id);
  return m;
}

Monomial Monomial::concat(const Monomial& a, const Monomial& b) {
  if (a.len_ + b.len_ > kMaxLen)
    throw std::length_error("monomial word longer than " + std::to_string(kMaxLen) +
                            " letters; truncation order out of supported range");
  Monomial m;
  m.len_ = static_cast<std::uint8_t>(a.len_ + b.len_);
  m.grade_ = static_cast<std::uint8_t>(a.grade_ + b.grade_);
  m.w_ = a.w_;
  std::copy(b.w_.begin(), b.w_.begin() + b.len_, m.w_.begin() + a.len_);
  return m;
}

bool Monomial::canonical_less(const Monomial& a, const Monomial& b) {
  if (a.grade_ != b.grade_) return a.grade_ < b.grade_;
  if (a.len_ != b.len_) return a.len_ < b.len_;
  return std::lexicographical_compare(a.w_.begin(), a.w_.begin() + a.len_, b.w_.begin(),
                                      b.w_.begin() + b.len_);
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ull;
  };
  mix(len_);
  mix(grade_);
  for (int t = 0; t < len_; ++t) mix(w_[static_cast<std::size_t>(t)]);
  return static_cast<std::size_t>(h);
}

NCPoly NCPoly::zero(int r, SymbolTablePtr syms) {
  if (r < 2) throw std::invalid_argument("truncation order must be >= 2");
  NCPoly p;
  p.r_ = r;
  p.syms_ = std::move(syms);
  return p;
}

NCPoly NCPoly::constant(int r, SymbolTablePtr syms, const Rational& c) {
  NCPoly p = zero(r, std::move(syms));
  p.add_term(Monomial::unit(), c);
  return p;
}

NCPoly NCPoly::generator(int r, SymbolTablePtr syms, int id) {
  if (!syms) throw std::invalid_argument("generator: null symbol table");
  const Generator& g = syms->at(id);
  NCPoly p = zero(r, std::move(syms));
  p.add_term(Monomial::single(g.id, g.grade), 1);
  return p;
}

Rational NCPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int NCPoly::min_grade() const {
  int g = r_;
  for (const auto& [m, c] : terms_) g = std::min(g, m.grade());
  return g;
}

void NCPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0 || m.grade() >= r_) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

namespace {

void require_same_truncation(const NCPoly& a, const NCPoly& b) {
  if (a.truncation() != b.truncation())
    throw std::invalid_argument("truncation order mismatch: " +
                                std::to_string(a.truncation()) + " vs " +
                                std::to_string(b.truncation()));
}

// Prefers a's table; verifies b's generators are compatible where both exist
// and merges in any missing ones.
SymbolTablePtr merged_symbols(const SymbolTablePtr& a, const SymbolTablePtr& b) {
  if (a == b || !b) return a;
  if (!a) return b;
  bool superset = true;
  for (const Generator& g : b->all()) {
    const Generator* own = a->find(g.id);
    if (own && (own->grade != g.grade || own->label != g.label))
      throw std::invalid_argument("incompatible generator id " + std::to_string(g.id) +
                                  " across symbol tables");
    if (!own) superset = false;
  }
  if (superset) return a;
  auto merged = std::make_shared<SymbolTable>();
  for (const Generator& g : a->all()) merged->add(g.id, g.label, g.grade);
  for (const Generator& g : b->all())
    if (!merged->find(g.id)) merged->add(g.id, g.label, g.grade);
  return merged;
}

}  // namespace

NCPoly NCPoly::operator-() const {
  NCPoly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

NCPoly operator+(const NCPoly& a, const NCPoly& b) {
  require_same_truncation(a, b);
  NCPoly p = NCPoly::zero(a.r_, merged_symbols(a.syms_, b.syms_));
  p.terms_ = a.terms_;
  for (const auto& [m, c] : b.terms_) p.add_term(m, c);
  return p;
}

NCPoly operator-(const NCPoly& a, const NCPoly& b) {
  require_same_truncation(a, b);
  NCPoly p = NCPoly::zero(a.r_, merged_symbols(a.syms_, b.syms_));
  p.terms_ = a.terms_;
  for (const auto& [m, c] : b.terms_) p.add_term(m, -c);
  return p;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  require_same_truncation(a, b);
  NCPoly p = NCPoly::zero(a.r_, merged_symbols(a.syms_, b.syms_));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.grade() + mb.grade() >= a.r_) continue;
      p.add_term(Monomial::concat(ma, mb), ca * cb);
    }
  }
  return p;
}

NCPoly operator*(const Rational& s, const NCPoly& a) {
  if (s == 0) return NCPoly::zero(a.r_, a.syms_);
  NCPoly p = a;
  for (auto& [m, c] : p.terms_) c *= s;
  return p;
}

NCPoly mul(const NCPoly& a, const NCPoly& b) { return a * b; }

std::vector<std::pair<Monomial, Rational>> NCPoly::sorted_terms() const {
  std::vector<std::pair<Monomial, Rational>> v(terms_.begin(), terms_.end());
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return Monomial::canonical_less(a.first, b.first); });
  return v;
}

NCPoly exp(const NCPoly& x) {
  if (x.constant_term() != 0)
    throw std::invalid_argument("exp: argument has a nonzero grade-0 component");
  const int r = x.truncation();
  NCPoly result = NCPoly::one(r, x.symbols());
  NCPoly term = NCPoly::one(r, x.symbols());
  for (int k = 1; k < r; ++k) {
    term = Rational(1, k) * (term * x);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

NCPoly log(const NCPoly& g) {
  if (g.constant_term() != 1)
    throw std::invalid_argument("log: argument must have constant term 1");
  const int r = g.truncation();
  NCPoly n = g - NCPoly::one(r, g.symbols());
  NCPoly result = NCPoly::zero(r, g.symbols());
  NCPoly power = NCPoly::one(r, g.symbols());
  for (int k = 1; k < r; ++k) {
    power *= n;
    if (power.is_zero()) break;
    result += Rational(k % 2 == 1 ? 1 : -1, k) * power;
  }
  return result;
}

NCPoly group_inverse(const NCPoly& g) {
  if (g.constant_term() != 1)
    throw std::invalid_argument("group_inverse: argument must have constant term 1");
  const int r = g.truncation();
  NCPoly n = g - NCPoly::one(r, g.symbols());
  NCPoly result = NCPoly::one(r, g.symbols());
  NCPoly power = NCPoly::one(r, g.symbols());
  for (int k = 1; k < r; ++k) {
    power *= n;
    if (power.is_zero()) break;
    result += Rational(k % 2 == 1 ? -1 : 1) * power;
  }
  return result;
}

NCPoly bracket(const NCPoly& a, const NCPoly& b) { return a * b - b * a; }

NCPoly slice(const NCPoly& p, int j) {
  if (j < 0 || j >= p.truncation())
    throw std::invalid_argument("slice: grade out of range");
  NCPoly s = NCPoly::zero(p.truncation(), p.symbols());
  for (const auto& [m, c] : p.terms())
    if (m.grade() == j) s.add_term(m, c);
  return s;
}

NCPoly substitute(const NCPoly& p, const std::map<int, NCPoly>& assignment) {
  const int r = p.truncation();
  SymbolTablePtr syms = p.symbols();
  for (const auto& [id, image] : assignment) {
    if (image.truncation() != r)
      throw std::invalid_argument("substitute: image truncation mismatch for id " +
                                  std::to_string(id));
    if (image.min_grade() < p.symbols()->at(id).grade)
      throw std::invalid_argument("substitute: image of generator " +
                                  p.symbols()->at(id).label + " violates its grade");
    syms = merged_symbols(syms, image.symbols());
  }
  NCPoly result = NCPoly::zero(r, syms);
  for (const auto& [m, c] : p.terms()) {
    NCPoly word = NCPoly::constant(r, syms, c);
    for (int t = 0; t < m.length() && !word.is_zero(); ++t) {
      const int id = m.letter(t);
      auto it = assignment.find(id);
      if (it != assignment.end()) {
        word *= it->second;
      } else {
        const Generator& g = p.symbols()->at(id);
        NCPoly gen = NCPoly::zero(r, syms);
        gen.add_term(Monomial::single(g.id, g.grade), 1);
        word *= gen;
      }
    }
    result += word;
  }
  return result;
}

bool dynkin_lie_test(const NCPoly& p) {
  if (p.constant_term() != 0)
    throw std::invalid_argument("dynkin_lie_test: nonzero constant term");
  // Split into word-length homogeneous components.
  std::map<int, NCPoly> comps;
  for (const auto& [m, c] : p.terms()) {
    auto [it, inserted] =
        comps.try_emplace(m.length(), NCPoly::zero(p.truncation(), p.symbols()));
    it->second.add_term(m, c);
  }
  for (const auto& [n, comp] : comps) {
    // delta(a1..an) = [[..[a1,a2],..],an], expanded word by word.
    NCPoly image = NCPoly::zero(p.truncation(), p.symbols());
    for (const auto& [m, c] : comp.terms()) {
      NCPoly acc = NCPoly::zero(p.truncation(), p.symbols());
      acc.add_term(Monomial::single(m.letter(0), p.symbols()->at(m.letter(0)).grade), 1);
      for (int t = 1; t < m.length(); ++t) {
        const Generator& g = p.symbols()->at(m.letter(t));
        NCPoly x = NCPoly::zero(p.truncation(), p.symbols());
        x.add_term(Monomial::single(g.id, g.grade), 1);
        acc = acc * x - x * acc;
      }
      image += c * acc;
    }
    if (image != Rational(n) * comp) return false;
  }
  return true;
}

std::vector<NCPoly> factored_log(const NCPoly& g) {
  if (g.constant_term() != 1)
    throw std::invalid_argument("factored_log: argument must have constant term 1");
  const int r = g.truncation();
  std::vector<NCPoly> vs;
  vs.reserve(static_cast<std::size_t>(r - 1));
  NCPoly h = g;
  for (int j = 1; j < r; ++j) {
    NCPoly vj = slice(h, j);
    if (!vj.is_zero()) h = exp(-vj) * h;
    vs.push_back(std::move(vj));
  }
  if (h != NCPoly::one(r, g.symbols()))
    throw std::logic_error("factored_log: peeling left a non-unit residual");
  return vs;
}

NCPoly factored_exp(std::span<const NCPoly> vs, int r, SymbolTablePtr syms) {
  NCPoly g = NCPoly::one(r, std::move(syms));
  for (std::size_t idx = 0; idx < vs.size(); ++idx) {
    const NCPoly& vj = vs[idx];
    const int j = static_cast<int>(idx) + 1;
    for (const auto& [m, c] : vj.terms())
      if (m.grade() != j)
        throw std::invalid_argument("factored_exp: factor " + std::to_string(j) +
                                    " is not purely of grade " + std::to_string(j));
    if (vj.truncation() != r)
      throw std::invalid_argument("factored_exp: factor truncation mismatch");
    if (!vj.is_zero()) g *= exp(vj);
  }
  return g;
}

std::string to_canonical_string(const NCPoly& p) {
  std::ostringstream os;
  for (const auto& [m, c] : p.sorted_terms()) {
    os << rat_to_string(c) << " :";
    if (m.length() == 0) {
      os << " 1";
    } else {
      for (int t = 0; t < m.length(); ++t) os << ' ' << p.symbols()->at(m.letter(t)).label;
    }
    os << '\n';
  }
  return os.str();
}

NCPoly parse_ncpoly(const std::string& text, int r, SymbolTablePtr syms) {
  NCPoly p = NCPoly::zero(r, syms);
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("parse_ncpoly: missing ':' in line '" + line + "'");
    std::string coeff_str = line.substr(0, colon);
    coeff_str.erase(coeff_str.find_last_not_of(" \t") + 1);
    const Rational c = rat_parse(coeff_str);
    std::istringstream rest(line.substr(colon + 1));
    Monomial m;
    std::string label;
    bool unit_seen = false;
    while (rest >> label) {
      if (label == "1") {
        unit_seen = true;
        continue;
      }
      const Generator* g = syms->find_label(label);
      if (!g) throw std::invalid_argument("parse_ncpoly: unknown label '" + label + "'");
      m = Monomial::concat(m, Monomial::single(g->id, g->grade));
    }
    if (unit_seen && m.length() != 0)
      throw std::invalid_argument("parse_ncpoly: unit mixed with letters in '" + line + "'");
    p.add_term(m, c);
  }
  return p;
}

}  // namespace tgc
