#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ellq/errors.hpp"

namespace ellq::yangian {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-2/5" or "0.25".
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

/// Indeterminates: spectral z, second spectral w, spin l.
enum Var : int { Z = 0, W = 1, ELL = 2 };
inline constexpr int kVars = 3;

/// Sparse polynomial in (z, w, l) with rational coefficients.
class Poly {
 public:
  using Exponent = std::array<int, kVars>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly var(Var v);

  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree(Var v) const;
  /// Coefficient of v^d, a polynomial in the other variables.
  Poly coefficient(Var v, int d) const;
  /// Replaces v by `by`.
  Poly substitute(Var v, const Poly& by) const;
  /// Constant term when the polynomial is constant; throws ShapeError otherwise.
  Rational constant_value() const;
  Rational eval(const std::array<Rational, kVars>& at) const;
  /// Largest absolute coefficient (0 for the zero polynomial).
  Rational max_abs() const;
  std::string to_string() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Exponent& e, const Rational& c);
  std::map<Exponent, Rational> terms_;
};

/// Dense matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(std::size_t(rows) * cols) {}
  static PolyMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Poly& operator()(int r, int c) { return e_[std::size_t(r) * cols_ + c]; }
  const Poly& operator()(int r, int c) const { return e_[std::size_t(r) * cols_ + c]; }

  bool is_zero() const;
  Rational max_abs() const;
  int degree(Var v) const;
  PolyMatrix coefficient(Var v, int d) const;
  PolyMatrix substitute(Var v, const Poly& by) const;
  /// Principal submatrix on the given indices.
  PolyMatrix restrict(const std::vector<int>& idx) const;

  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Poly& c, const PolyMatrix& a);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Poly> e_;
};

/// Truncated power series in p with PolyMatrix coefficients.
struct PSeriesMatrix {
  std::vector<PolyMatrix> coeff;

  int order() const { return int(coeff.size()) - 1; }
  int dim() const { return coeff.empty() ? 0 : coeff.front().rows(); }
  PSeriesMatrix restrict(const std::vector<int>& idx) const;
  PSeriesMatrix substitute(Var v, const Poly& by) const;
  PSeriesMatrix scaled(const Poly& c) const;
  /// Multiplication by p (drops the top coefficient).
  PSeriesMatrix shifted_p() const;
  Rational max_abs() const;
};

PSeriesMatrix operator+(const PSeriesMatrix& a, const PSeriesMatrix& b);
PSeriesMatrix operator-(const PSeriesMatrix& a, const PSeriesMatrix& b);
/// Cauchy product truncated at the smaller order.
PSeriesMatrix operator*(const PSeriesMatrix& a, const PSeriesMatrix& b);

/// 4x4 rational R(z) in the basis (v1 v1, v1 v2, v2 v1, v2 v2). Throws PoleError at z = -1.
std::array<std::array<Rational, 4>, 4> yangian_r(const Rational& z);
/// (z+1) R(z) as a polynomial matrix in `z`.
PolyMatrix yangian_r_cleared(const Poly& z);
/// Largest entry of R12(z-w)R13(z)R23(w) - R23(w)R13(z)R12(z-w) at rational points.
Rational qybe_residual(const Rational& z, const Rational& w);
/// The same identity with denominators cleared, as polynomials in z and w.
Rational qybe_symbolic_residual();

/// Sparse operator on a module basis: (row, col) -> entry.
using SparseOp = std::map<std::pair<int, int>, Poly>;

enum class Kind { Finite, Asymptotic, Fock, Tensor };

/// Graded module over the Yangian with an action t_ij(arg), i, j in {1, 2}, on a (truncated) basis.
struct YangianModule {
  Kind kind = Kind::Finite;
  std::string label;
  /// Weight of each basis vector.
  std::vector<int> weight;
  /// Largest level reachable without leaving the stored basis, minus the number of raising steps;
  /// see safe_level.
  int truncation = -1;
  std::function<SparseOp(int, int, const Poly&)> entry;

  int dim() const { return int(weight.size()); }
  bool finite() const { return truncation < 0; }
  /// Highest level from which `raises` raising steps stay inside the stored basis.
  int safe_level(int raises) const;
  SparseOp t(int i, int j, const Poly& arg) const { return entry(i, j, arg); }
};

/// V^m (finite, dim m+1), W^l truncated to K levels, or BW truncated to K levels; spectral shift u.
YangianModule build_module(Kind kind, const Poly& spin, const Rational& shift, int K);
YangianModule finite_module(int m, const Rational& shift = 0);
YangianModule asymptotic_module(const Poly& spin, const Rational& shift, int K);
YangianModule fock_module(const Rational& shift, int K);
/// t_ij(z) -> sum_k t_ik(z) (x) t_kj(z), weights adding.
YangianModule tensor(const YangianModule& X, const YangianModule& Y);
/// Same module with t_12 negated (negative control).
YangianModule flip_t12(const YangianModule& X);

/// Largest coefficient of (z-w+1)[R12 T13(z) T23(w) - T23(w) T13(z) R12] on basis vectors at
/// truncation-safe levels, as polynomials in z, w and the spin.
Rational rtt_residual(const YangianModule& X);

/// Strings i_1..i_L over {1, 2} in lexicographic order; sector s = number of 1s.
struct ChainBasis {
  explicit ChainBasis(int L);
  int length = 0;
  std::vector<std::vector<int>> strings;
  std::vector<int> sector(int s) const;
  /// Index of a string such as {2, 1}.
  int index(const std::vector<int>& s) const;
};

/// t_X(arg; p) = sum_alpha p^alpha Tr_{X_alpha} t_{i_1 j_1}(arg + a_1) ... t_{i_L j_L}(arg + a_L).
/// Throws RangeError if order exceeds the truncation-safe band.
PSeriesMatrix yangian_transfer(const YangianModule& X, const std::vector<Rational>& sites, int order,
                               const Poly& arg = Poly::var(Z));

/// Truncation of W^l needed for `order` over L sites.
int yangian_truncation(int L, int order);

/// Q(z; p) = t_{W^z}(0; p), entries polynomial in z.
PSeriesMatrix yangian_q(const std::vector<Rational>& sites, int order);

/// Largest coefficient of t_{V^1}(z) Q(z) - Q(z+1) prod(z+a_l) - p Q(z-1) prod(z+a_l+1).
Rational yangian_tq_residual(const std::vector<Rational>& sites, int order, bool drop_p_term = false);

/// Largest entry of t coupling different sectors.
Rational sector_leak(const PSeriesMatrix& t, const ChainBasis& basis);

struct DegreeReport {
  int degree = -1;
  bool leading_nonzero = false;
};
/// z-degree of Q restricted to sector s, over all p-coefficients.
DegreeReport q_sector_degree(const PSeriesMatrix& q, const ChainBasis& basis, int s);

/// At p^0, Q is upper triangular for the order comparing strings from the right (1 before 2) with
/// diagonal prod_l (a_l + [i_l = 1] z).
bool q_leading_triangular(const PSeriesMatrix& q, const ChainBasis& basis, const std::vector<Rational>& sites);

/// z^s coefficient of Q on sector s.
PSeriesMatrix a_ls(const PSeriesMatrix& q, const ChainBasis& basis, int s);

/// (1-p)^{-1}[[a1 + p/(1-p), 1/(1-p)], [p/(1-p), a2 + p/(1-p)]] expanded to `order`.
PSeriesMatrix a21_closed_form(const Rational& a1, const Rational& a2, int order);

/// Per sector, largest coefficient of Q - (1-p) A_L^s t_BW.
std::vector<Rational> two_q_residual(const std::vector<Rational>& sites, int order);

/// Exact sum over k of p^k c_k at rational p != 1, given c_0..c_n polynomial in k of degree < n.
/// Throws RangeError if the n-th finite difference does not vanish.
PolyMatrix sum_polynomial_series(const PSeriesMatrix& s, const Rational& p);

/// a + b sqrt(d) over the rationals.
struct QuadExt {
  Rational a, b, d;

  bool is_zero() const { return a == 0 && b == 0; }
  std::complex<double> to_complex() const;
  std::string to_string() const;
};
QuadExt operator+(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x, const QuadExt& y);
QuadExt operator*(const QuadExt& x, const QuadExt& y);
QuadExt operator/(const QuadExt& x, const QuadExt& y);

/// Exact roots of p(z+a1+1)(z+a2+1) = (z+a1)(z+a2) for p != 1.
std::vector<QuadExt> yangian_bethe_roots_exact(const Rational& a1, const Rational& a2, const Rational& p);

struct EigenExample {
  std::vector<QuadExt> roots;
  /// A v - lambda v and the two z-coefficients of Q v - lambda (z - z1) v vanish for every root.
  bool a_eigen = true;
  bool q_eigen = true;
  std::vector<QuadExt> lambdas;
};
/// Eigenvector v(z1) of A_2^1(p) and Q(z; p) for each Bethe root, at rational p != 1 (closed-form sums).
EigenExample eigen_example_check(const Rational& a1, const Rational& a2, const Rational& p);

/// f(z) = num / den.
struct RatFunc {
  Poly num;
  Poly den{1};
};
bool equal(const RatFunc& a, const RatFunc& b);
RatFunc operator*(const RatFunc& a, const RatFunc& b);

/// [g1, g2].
struct YMonomial {
  RatFunc g1, g2;
};
YMonomial operator*(const YMonomial& a, const YMonomial& b);

/// p-graded q-character truncated at `depth`.
struct YQChar {
  int depth = 0;
  std::map<int, std::vector<YMonomial>> levels;

  void add(int level, YMonomial m);
  YQChar shifted(const Rational& u) const;
};
YQChar operator*(const YQChar& a, const YQChar& b);
/// Multiset equality level by level (exact).
bool equal(const YQChar& a, const YQChar& b);

/// Eigenvalues of K2 = t22 and K1 = t11 - t12 t22^{-1} t21 on one-dimensional weight spaces.
/// Throws CategoryError if a weight space of X has dimension > 1 or K is not diagonal.
YQChar yangian_qchar(const YangianModule& X, int depth);
YQChar qchar_finite_formula(int m, int depth);
YQChar qchar_asymptotic_formula(const Poly& spin, int depth);
YQChar qchar_fock_formula(int depth);

}  // namespace ellq::yangian
