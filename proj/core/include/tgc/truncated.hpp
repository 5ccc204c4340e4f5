#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgc {

inline constexpr std::uint64_t kDefaultBudget = 1ull << 22;

bool is_prime(int p);

/// Ambient parameters for G_r(F_p) = GL_n(F_p[eps]/(eps^r)). Construction is
/// refused unless p is prime and p >= r, which keeps every exponential and
/// every structure-polynomial denominator invertible mod p.
struct GroupContext {
  int n = 2;
  int p = 2;
  int r = 2;
  int r_lo = 1;  // floor(r/2)
  int r_hi = 1;  // ceil(r/2); r = r_lo + r_hi
  std::uint64_t budget = kDefaultBudget;
};

GroupContext make_group_context(int n, int p, int r, std::uint64_t budget = kDefaultBudget);

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Element of F_p[eps]/(eps^r): c[k] is the eps^k coefficient, 0 <= c[k] < p.
struct TruncatedScalar {
  std::vector<std::uint8_t> c;
};

TruncatedScalar ts_zero(int r);
TruncatedScalar ts_one(int r);
TruncatedScalar ts_add(const TruncatedScalar& a, const TruncatedScalar& b, int p);
TruncatedScalar ts_sub(const TruncatedScalar& a, const TruncatedScalar& b, int p);
TruncatedScalar ts_mul(const TruncatedScalar& a, const TruncatedScalar& b, int p);
bool ts_is_unit(const TruncatedScalar& a);
/// Inverse of a unit (c[0] != 0) via the geometric series on the nilpotent part.
TruncatedScalar ts_inv(const TruncatedScalar& a, int p);

/// n x n matrix over F_p, entries 0..p-1, row-major.
struct FpMatrix {
  int n = 0;
  std::vector<std::uint8_t> a;

  static FpMatrix zero(int n);
  static FpMatrix identity(int n);
  int at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  void set(int i, int j, int v) { a[static_cast<std::size_t>(i * n + j)] = static_cast<std::uint8_t>(v); }
  bool operator==(const FpMatrix&) const = default;
};

FpMatrix fp_add(const FpMatrix& x, const FpMatrix& y, int p);
FpMatrix fp_sub(const FpMatrix& x, const FpMatrix& y, int p);
FpMatrix fp_mul(const FpMatrix& x, const FpMatrix& y, int p);
FpMatrix fp_neg(const FpMatrix& x, int p);
FpMatrix fp_scale(int c, const FpMatrix& x, int p);
bool fp_invertible(const FpMatrix& x, int p);
FpMatrix fp_inv(const FpMatrix& x, int p);  // throws on singular input
/// tr(x * y) mod p.
int fp_trace_product(const FpMatrix& x, const FpMatrix& y, int p);
bool fp_is_diagonal(const FpMatrix& x);
bool fp_is_upper(const FpMatrix& x);
bool fp_is_strictly_upper(const FpMatrix& x);
bool fp_has_zero_diagonal(const FpMatrix& x);
FpMatrix fp_diagonal_part(const FpMatrix& x);

struct LieDecomposition {
  FpMatrix lower;  // strictly lower part
  FpMatrix diag;
  FpMatrix upper;  // strictly upper part
};

/// X = lower + diag + upper, the unique triangular decomposition.
LieDecomposition lie_decompose(const FpMatrix& x);

/// n x n matrix over F_p[eps]/(eps^r). Bytes are laid out row-major per entry
/// with coefficients ascending, which is also the serialization and the
/// enumeration order. Values are immutable in use.
class TruncatedMatrix {
 public:
  TruncatedMatrix() = default;
  TruncatedMatrix(int n, int p, int r);

  static TruncatedMatrix identity(const GroupContext& ctx);
  /// Embeds an F_p matrix at eps^0.
  static TruncatedMatrix from_fp(const FpMatrix& x, int p, int r);

  int n() const { return n_; }
  int p() const { return p_; }
  int r() const { return r_; }

  int coef(int i, int j, int k) const {
    return c_[static_cast<std::size_t>((i * n_ + j) * r_ + k)];
  }
  void set_coef(int i, int j, int k, int v) {
    c_[static_cast<std::size_t>((i * n_ + j) * r_ + k)] = static_cast<std::uint8_t>(v);
  }
  TruncatedScalar entry(int i, int j) const;
  void set_entry(int i, int j, const TruncatedScalar& s);

  /// The mod-eps reduction; the matrix is invertible iff this is.
  FpMatrix reduction() const;
  /// Coefficient matrix of eps^k.
  FpMatrix grade_slice(int k) const;

  bool is_identity() const;
  const std::vector<std::uint8_t>& bytes() const { return c_; }
  std::vector<std::uint8_t>& mutable_bytes() { return c_; }

  /// Row-major list of coefficient vectors: [[c_0..c_{r-1}], ...].
  std::string to_json() const;

  bool operator==(const TruncatedMatrix&) const = default;
  /// Lexicographic on serialized coefficients; the enumeration order.
  bool operator<(const TruncatedMatrix& o) const { return c_ < o.c_; }

 private:
  std::uint8_t n_ = 0, p_ = 0, r_ = 0;
  std::vector<std::uint8_t> c_;
};

TruncatedMatrix mat_mul(const TruncatedMatrix& a, const TruncatedMatrix& b);
TruncatedMatrix mat_inv(const TruncatedMatrix& a);  // throws on non-invertible input

/// e^{eps^i X} = sum over ik <= r-1 of eps^{ik} X^k / k!, with k! inverted
/// mod p; well-defined because the context enforces p >= r.
TruncatedMatrix exp_matrix(const GroupContext& ctx, int i, const FpMatrix& x);

/// Exponential coordinates: g = x * e^{eps X_1} * ... * e^{eps^{r-1} X_{r-1}}.
struct Coordinates {
  FpMatrix x;
  std::vector<FpMatrix> X;  // X[j-1] for grade j
};

Coordinates factor_coordinates(const GroupContext& ctx, const TruncatedMatrix& g);
TruncatedMatrix build_coordinates(const GroupContext& ctx, const Coordinates& c);

}  // namespace tgc
