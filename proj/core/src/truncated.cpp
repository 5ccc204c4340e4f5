#include "tgc/truncated.hpp"

#include "tgc/rational.hpp"

#include <algorithm>
#include <sstream>

namespace tgc {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

GroupContext make_group_context(int n, int p, int r, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("GroupContext: n >= 1 required");
  if (r < 2) throw std::invalid_argument("GroupContext: r >= 2 required");
  if (!is_prime(p)) throw std::invalid_argument("GroupContext: p must be prime");
  if (p < r)
    throw std::invalid_argument("GroupContext: p >= r required (got p=" + std::to_string(p) +
                                ", r=" + std::to_string(r) + ")");
  if (p > 255) throw std::invalid_argument("GroupContext: p > 255 unsupported");
  GroupContext ctx;
  ctx.n = n;
  ctx.p = p;
  ctx.r = r;
  ctx.r_lo = r / 2;
  ctx.r_hi = r - r / 2;
  ctx.budget = budget;
  return ctx;
}

TruncatedScalar ts_zero(int r) { return TruncatedScalar{std::vector<std::uint8_t>(r, 0)}; }

TruncatedScalar ts_one(int r) {
  TruncatedScalar s = ts_zero(r);
  s.c[0] = 1;
  return s;
}

TruncatedScalar ts_add(const TruncatedScalar& a, const TruncatedScalar& b, int p) {
  TruncatedScalar s = a;
  for (std::size_t k = 0; k < s.c.size(); ++k)
    s.c[k] = static_cast<std::uint8_t>((s.c[k] + b.c[k]) % p);
  return s;
}

TruncatedScalar ts_sub(const TruncatedScalar& a, const TruncatedScalar& b, int p) {
  TruncatedScalar s = a;
  for (std::size_t k = 0; k < s.c.size(); ++k)
    s.c[k] = static_cast<std::uint8_t>((s.c[k] + p - b.c[k]) % p);
  return s;
}

TruncatedScalar ts_mul(const TruncatedScalar& a, const TruncatedScalar& b, int p) {
  const std::size_t r = a.c.size();
  TruncatedScalar s = ts_zero(static_cast<int>(r));
  for (std::size_t i = 0; i < r; ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; i + j < r; ++j)
      s.c[i + j] = static_cast<std::uint8_t>((s.c[i + j] + a.c[i] * b.c[j]) % p);
  }
  return s;
}

bool ts_is_unit(const TruncatedScalar& a) { return a.c[0] != 0; }

TruncatedScalar ts_inv(const TruncatedScalar& a, int p) {
  if (!ts_is_unit(a)) throw std::domain_error("ts_inv: non-unit scalar");
  const int r = static_cast<int>(a.c.size());
  const int u_inv = inv_mod_p(a.c[0], p);
  // a = c0 (1 + n) with n nilpotent; invert by the finite geometric series.
  TruncatedScalar n = ts_zero(r);
  for (int k = 1; k < r; ++k)
    n.c[static_cast<std::size_t>(k)] =
        static_cast<std::uint8_t>(a.c[static_cast<std::size_t>(k)] * u_inv % p);
  TruncatedScalar inv = ts_one(r);
  TruncatedScalar power = ts_one(r);
  for (int k = 1; k < r; ++k) {
    power = ts_mul(power, n, p);
    TruncatedScalar signed_power = power;
    if (k % 2 == 1)
      for (auto& v : signed_power.c) v = static_cast<std::uint8_t>((p - v) % p);
    inv = ts_add(inv, signed_power, p);
  }
  for (auto& v : inv.c) v = static_cast<std::uint8_t>(v * u_inv % p);
  return inv;
}

FpMatrix FpMatrix::zero(int n) { return FpMatrix{n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0)}; }

FpMatrix FpMatrix::identity(int n) {
  FpMatrix m = zero(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix fp_add(const FpMatrix& x, const FpMatrix& y, int p) {
  FpMatrix z = x;
  for (std::size_t k = 0; k < z.a.size(); ++k)
    z.a[k] = static_cast<std::uint8_t>((z.a[k] + y.a[k]) % p);
  return z;
}

FpMatrix fp_sub(const FpMatrix& x, const FpMatrix& y, int p) {
  FpMatrix z = x;
  for (std::size_t k = 0; k < z.a.size(); ++k)
    z.a[k] = static_cast<std::uint8_t>((z.a[k] + p - y.a[k]) % p);
  return z;
}

FpMatrix fp_mul(const FpMatrix& x, const FpMatrix& y, int p) {
  const int n = x.n;
  FpMatrix z = FpMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const int xv = x.at(i, k);
      if (xv == 0) continue;
      for (int j = 0; j < n; ++j)
        z.set(i, j, (z.at(i, j) + xv * y.at(k, j)) % p);
    }
  return z;
}

FpMatrix fp_neg(const FpMatrix& x, int p) {
  FpMatrix z = x;
  for (auto& v : z.a) v = static_cast<std::uint8_t>((p - v) % p);
  return z;
}

FpMatrix fp_scale(int c, const FpMatrix& x, int p) {
  FpMatrix z = x;
  c %= p;
  if (c < 0) c += p;
  for (auto& v : z.a) v = static_cast<std::uint8_t>(v * c % p);
  return z;
}

namespace {

// Gauss-Jordan over F_p; returns false if singular.
bool fp_inv_impl(const FpMatrix& x, int p, FpMatrix* out) {
  const int n = x.n;
  std::vector<int> work(static_cast<std::size_t>(n) * 2 * n, 0);
  auto w = [&](int i, int j) -> int& { return work[static_cast<std::size_t>(i * 2 * n + j)]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = x.at(i, j);
    w(i, n + i) = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (w(row, col) != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) return false;
    if (pivot != col)
      for (int j = 0; j < 2 * n; ++j) std::swap(w(pivot, j), w(col, j));
    const int inv = inv_mod_p(w(col, col), p);
    for (int j = 0; j < 2 * n; ++j) w(col, j) = w(col, j) * inv % p;
    for (int row = 0; row < n; ++row) {
      if (row == col || w(row, col) == 0) continue;
      const int f = w(row, col);
      for (int j = 0; j < 2 * n; ++j) w(row, j) = (w(row, j) + (p - f) * w(col, j)) % p;
    }
  }
  if (out) {
    *out = FpMatrix::zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out->set(i, j, w(i, n + j));
  }
  return true;
}

}  // namespace

bool fp_invertible(const FpMatrix& x, int p) { return fp_inv_impl(x, p, nullptr); }

FpMatrix fp_inv(const FpMatrix& x, int p) {
  FpMatrix out;
  if (!fp_inv_impl(x, p, &out)) throw std::domain_error("fp_inv: singular matrix");
  return out;
}

int fp_trace_product(const FpMatrix& x, const FpMatrix& y, int p) {
  int t = 0;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) t = (t + x.at(i, j) * y.at(j, i)) % p;
  return t;
}

bool fp_is_diagonal(const FpMatrix& x) {
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      if (i != j && x.at(i, j) != 0) return false;
  return true;
}

bool fp_is_upper(const FpMatrix& x) {
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < i; ++j)
      if (x.at(i, j) != 0) return false;
  return true;
}

bool fp_is_strictly_upper(const FpMatrix& x) {
  return fp_is_upper(x) && fp_has_zero_diagonal(x);
}

bool fp_has_zero_diagonal(const FpMatrix& x) {
  for (int i = 0; i < x.n; ++i)
    if (x.at(i, i) != 0) return false;
  return true;
}

FpMatrix fp_diagonal_part(const FpMatrix& x) {
  FpMatrix d = FpMatrix::zero(x.n);
  for (int i = 0; i < x.n; ++i) d.set(i, i, x.at(i, i));
  return d;
}

LieDecomposition lie_decompose(const FpMatrix& x) {
  LieDecomposition d{FpMatrix::zero(x.n), FpMatrix::zero(x.n), FpMatrix::zero(x.n)};
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      if (i > j)
        d.lower.set(i, j, x.at(i, j));
      else if (i == j)
        d.diag.set(i, j, x.at(i, j));
      else
        d.upper.set(i, j, x.at(i, j));
    }
  return d;
}

TruncatedMatrix::TruncatedMatrix(int n, int p, int r)
    : n_(static_cast<std::uint8_t>(n)),
      p_(static_cast<std::uint8_t>(p)),
      r_(static_cast<std::uint8_t>(r)),
      c_(static_cast<std::size_t>(n) * n * r, 0) {}

TruncatedMatrix TruncatedMatrix::identity(const GroupContext& ctx) {
  TruncatedMatrix m(ctx.n, ctx.p, ctx.r);
  for (int i = 0; i < ctx.n; ++i) m.set_coef(i, i, 0, 1);
  return m;
}

TruncatedMatrix TruncatedMatrix::from_fp(const FpMatrix& x, int p, int r) {
  TruncatedMatrix m(x.n, p, r);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) m.set_coef(i, j, 0, x.at(i, j));
  return m;
}

TruncatedScalar TruncatedMatrix::entry(int i, int j) const {
  TruncatedScalar s = ts_zero(r_);
  for (int k = 0; k < r_; ++k) s.c[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(coef(i, j, k));
  return s;
}

void TruncatedMatrix::set_entry(int i, int j, const TruncatedScalar& s) {
  for (int k = 0; k < r_; ++k) set_coef(i, j, k, s.c[static_cast<std::size_t>(k)]);
}

FpMatrix TruncatedMatrix::reduction() const { return grade_slice(0); }

FpMatrix TruncatedMatrix::grade_slice(int k) const {
  FpMatrix x = FpMatrix::zero(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) x.set(i, j, coef(i, j, k));
  return x;
}

bool TruncatedMatrix::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < r_; ++k)
        if (coef(i, j, k) != (i == j && k == 0 ? 1 : 0)) return false;
  return true;
}

std::string TruncatedMatrix::to_json() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i || j) os << ", ";
      os << '[';
      for (int k = 0; k < r_; ++k) {
        if (k) os << ", ";
        os << coef(i, j, k);
      }
      os << ']';
    }
  os << ']';
  return os.str();
}

namespace {
void require_same_shape(const TruncatedMatrix& a, const TruncatedMatrix& b) {
  if (a.n() != b.n() || a.p() != b.p() || a.r() != b.r())
    throw std::invalid_argument("truncated matrix shape mismatch");
}
}  // namespace

TruncatedMatrix mat_mul(const TruncatedMatrix& a, const TruncatedMatrix& b) {
  require_same_shape(a, b);
  const int n = a.n(), p = a.p(), r = a.r();
  TruncatedMatrix out(n, p, r);
  std::vector<int> acc(static_cast<std::size_t>(r));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int k = 0; k < n; ++k)
        for (int s = 0; s < r; ++s) {
          const int av = a.coef(i, k, s);
          if (av == 0) continue;
          for (int t = 0; s + t < r; ++t) acc[static_cast<std::size_t>(s + t)] += av * b.coef(k, j, t);
        }
      for (int s = 0; s < r; ++s) out.set_coef(i, j, s, acc[static_cast<std::size_t>(s)] % p);
    }
  return out;
}

TruncatedMatrix mat_inv(const TruncatedMatrix& a) {
  const int n = a.n(), p = a.p(), r = a.r();
  const FpMatrix x0 = a.reduction();
  if (!fp_invertible(x0, p)) throw std::domain_error("mat_inv: matrix not invertible mod eps");
  const TruncatedMatrix x0inv = TruncatedMatrix::from_fp(fp_inv(x0, p), p, r);
  // a = x0 (I + N) with N of positive valuation; geometric series on N.
  const TruncatedMatrix h = mat_mul(x0inv, a);
  TruncatedMatrix nil = h;
  for (int i = 0; i < n; ++i) nil.set_coef(i, i, 0, 0);
  TruncatedMatrix inv = TruncatedMatrix(n, p, r);
  for (int i = 0; i < n; ++i) inv.set_coef(i, i, 0, 1);
  TruncatedMatrix power = inv;
  for (int k = 1; k < r; ++k) {
    power = mat_mul(power, nil);
    if (k % 2 == 1) {
      TruncatedMatrix neg = power;
      auto& bytes = neg.mutable_bytes();
      for (auto& v : bytes) v = static_cast<std::uint8_t>((p - v) % p);
      // add
      auto& acc = inv.mutable_bytes();
      for (std::size_t t = 0; t < acc.size(); ++t)
        acc[t] = static_cast<std::uint8_t>((acc[t] + neg.bytes()[t]) % p);
    } else {
      auto& acc = inv.mutable_bytes();
      for (std::size_t t = 0; t < acc.size(); ++t)
        acc[t] = static_cast<std::uint8_t>((acc[t] + power.bytes()[t]) % p);
    }
  }
  return mat_mul(inv, x0inv);
}

TruncatedMatrix exp_matrix(const GroupContext& ctx, int i, const FpMatrix& x) {
  if (i < 1 || i > ctx.r - 1) throw std::invalid_argument("exp_matrix: need 1 <= i <= r-1");
  TruncatedMatrix out = TruncatedMatrix::identity(ctx);
  FpMatrix power = FpMatrix::identity(ctx.n);
  Int factorial = 1;
  for (int k = 1; i * k <= ctx.r - 1; ++k) {
    power = fp_mul(power, x, ctx.p);
    factorial *= k;
    const int coeff = inv_mod_p(int_mod_p(factorial, ctx.p), ctx.p);
    for (int a = 0; a < ctx.n; ++a)
      for (int b = 0; b < ctx.n; ++b) {
        const int v = (out.coef(a, b, i * k) + coeff * power.at(a, b)) % ctx.p;
        out.set_coef(a, b, i * k, v);
      }
  }
  return out;
}

Coordinates factor_coordinates(const GroupContext& ctx, const TruncatedMatrix& g) {
  const FpMatrix x0 = g.reduction();
  if (!fp_invertible(x0, ctx.p))
    throw std::domain_error("factor_coordinates: matrix not invertible");
  Coordinates coords;
  coords.x = x0;
  TruncatedMatrix u = mat_mul(TruncatedMatrix::from_fp(fp_inv(x0, ctx.p), ctx.p, ctx.r), g);
  for (int j = 1; j <= ctx.r - 1; ++j) {
    const FpMatrix xj = u.grade_slice(j);
    coords.X.push_back(xj);
    u = mat_mul(exp_matrix(ctx, j, fp_neg(xj, ctx.p)), u);
  }
  if (!u.is_identity())
    throw std::logic_error("factor_coordinates: peeling left a non-identity residual");
  return coords;
}

TruncatedMatrix build_coordinates(const GroupContext& ctx, const Coordinates& c) {
  TruncatedMatrix g = TruncatedMatrix::from_fp(c.x, ctx.p, ctx.r);
  for (int j = 1; j <= ctx.r - 1; ++j)
    g = mat_mul(g, exp_matrix(ctx, j, c.X[static_cast<std::size_t>(j) - 1]));
  return g;
}

}  // namespace tgc
