#include "ellq/yangian.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>

namespace ellq::yangian {

namespace mp = boost::multiprecision;

Rational parse_rational(const std::string& s) {
  try {
    if (s.empty()) throw ParameterError("empty rational");
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      const Rational num(mp::cpp_int(s.substr(0, slash)));
      const mp::cpp_int den(s.substr(slash + 1));
      if (den == 0) throw ParameterError("zero denominator in '" + s + "'");
      return num / Rational(den);
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
      const std::string frac = s.substr(dot + 1);
      std::string whole = s.substr(0, dot);
      const bool negative = !whole.empty() && whole[0] == '-';
      if (whole.empty() || whole == "-" || whole == "+") whole += "0";
      mp::cpp_int scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      Rational value = Rational(mp::cpp_int(whole));
      const Rational part = frac.empty() ? Rational(0) : Rational(mp::cpp_int(frac)) / Rational(scale);
      return negative ? Rational(value - part) : Rational(value + part);
    }
    return Rational(mp::cpp_int(s));
  } catch (const ParameterError&) {
    throw;
  } catch (const std::exception&) {
    throw ParameterError("not a rational number: '" + s + "'");
  }
}

std::string to_string(const Rational& r) { return r.str(); }

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) {
  if (c != 0) terms_[Exponent{}] = c;
}

Poly Poly::var(Var v) {
  Poly p;
  Exponent e{};
  e[v] = 1;
  p.terms_[e] = 1;
  return p;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Poly::degree(Var v) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
  return d;
}

Poly Poly::coefficient(Var v, int d) const {
  Poly out;
  for (const auto& [e, c] : terms_) {
    if (e[v] != d) continue;
    Exponent f = e;
    f[v] = 0;
    out.add_term(f, c);
  }
  return out;
}

Poly Poly::substitute(Var v, const Poly& by) const {
  std::vector<Poly> powers{Poly(1)};
  Poly out;
  for (const auto& [e, c] : terms_) {
    while (int(powers.size()) <= e[v]) powers.push_back(powers.back() * by);
    Exponent f = e;
    f[v] = 0;
    Poly rest;
    rest.terms_[f] = c;
    out += rest * powers[e[v]];
  }
  return out;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return 0;
  if (terms_.size() > 1 || terms_.begin()->first != Exponent{}) throw ShapeError("polynomial is not constant");
  return terms_.begin()->second;
}

Rational Poly::eval(const std::array<Rational, kVars>& at) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int v = 0; v < kVars; ++v) {
      for (int k = 0; k < e[v]; ++k) t *= at[v];
    }
    sum += t;
  }
  return sum;
}

Rational Poly::max_abs() const {
  Rational m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, Rational(mp::abs(c)));
  return m;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[kVars] = {"z", "w", "l"};
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool constant = e == Exponent{};
    Rational shown = c;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      shown = mp::abs(c);
    } else if (c < 0 && !constant && c == -1) {
      os << "-";
      shown = 1;
    }
    if (constant || shown != 1) os << shown.str();
    for (int v = 0; v < kVars; ++v) {
      if (e[v] == 0) continue;
      os << names[v];
      if (e[v] > 1) os << '^' << e[v];
    }
    first = false;
  }
  return os.str();
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Poly::Exponent e;
      for (int v = 0; v < kVars; ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix PolyMatrix::identity(int n) {
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Poly(1);
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Poly& p) { return p.is_zero(); });
}

Rational PolyMatrix::max_abs() const {
  Rational m = 0;
  for (const auto& p : e_) m = std::max(m, p.max_abs());
  return m;
}

int PolyMatrix::degree(Var v) const {
  int d = -1;
  for (const auto& p : e_) d = std::max(d, p.degree(v));
  return d;
}

PolyMatrix PolyMatrix::coefficient(Var v, int d) const {
  PolyMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].coefficient(v, d);
  return out;
}

PolyMatrix PolyMatrix::substitute(Var v, const Poly& by) const {
  PolyMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].substitute(v, by);
  return out;
}

PolyMatrix PolyMatrix::restrict(const std::vector<int>& idx) const {
  const int n = int(idx.size());
  PolyMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out(r, c) = (*this)(idx[r], idx[c]);
  }
  return out;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sizes differ");
  PolyMatrix out = a;
  for (std::size_t i = 0; i < out.e_.size(); ++i) out.e_[i] += b.e_[i];
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sizes differ");
  PolyMatrix out = a;
  for (std::size_t i = 0; i < out.e_.size(); ++i) out.e_[i] -= b.e_[i];
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw ShapeError("matrix sizes do not chain");
  PolyMatrix out(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r) {
    for (int k = 0; k < a.cols_; ++k) {
      const Poly& x = a(r, k);
      if (x.is_zero()) continue;
      for (int c = 0; c < b.cols_; ++c) {
        if (!b(k, c).is_zero()) out(r, c) += x * b(k, c);
      }
    }
  }
  return out;
}

PolyMatrix operator*(const Poly& c, const PolyMatrix& a) {
  PolyMatrix out(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = c * a.e_[i];
  return out;
}

// ---------------------------------------------------------------- PSeriesMatrix

PSeriesMatrix PSeriesMatrix::restrict(const std::vector<int>& idx) const {
  PSeriesMatrix out;
  for (const auto& m : coeff) out.coeff.push_back(m.restrict(idx));
  return out;
}

PSeriesMatrix PSeriesMatrix::substitute(Var v, const Poly& by) const {
  PSeriesMatrix out;
  for (const auto& m : coeff) out.coeff.push_back(m.substitute(v, by));
  return out;
}

PSeriesMatrix PSeriesMatrix::scaled(const Poly& c) const {
  PSeriesMatrix out;
  for (const auto& m : coeff) out.coeff.push_back(c * m);
  return out;
}

PSeriesMatrix PSeriesMatrix::shifted_p() const {
  PSeriesMatrix out;
  if (coeff.empty()) return out;
  out.coeff.push_back(PolyMatrix(dim(), dim()));
  for (int k = 0; k < order(); ++k) out.coeff.push_back(coeff[k]);
  return out;
}

Rational PSeriesMatrix::max_abs() const {
  Rational m = 0;
  for (const auto& c : coeff) m = std::max(m, c.max_abs());
  return m;
}

PSeriesMatrix operator+(const PSeriesMatrix& a, const PSeriesMatrix& b) {
  PSeriesMatrix out;
  const int n = std::min(a.order(), b.order());
  for (int k = 0; k <= n; ++k) out.coeff.push_back(a.coeff[k] + b.coeff[k]);
  return out;
}

PSeriesMatrix operator-(const PSeriesMatrix& a, const PSeriesMatrix& b) {
  PSeriesMatrix out;
  const int n = std::min(a.order(), b.order());
  for (int k = 0; k <= n; ++k) out.coeff.push_back(a.coeff[k] - b.coeff[k]);
  return out;
}

PSeriesMatrix operator*(const PSeriesMatrix& a, const PSeriesMatrix& b) {
  PSeriesMatrix out;
  const int n = std::min(a.order(), b.order());
  for (int k = 0; k <= n; ++k) {
    PolyMatrix sum(a.coeff[0].rows(), b.coeff[0].cols());
    for (int i = 0; i <= k; ++i) sum = sum + a.coeff[i] * b.coeff[k - i];
    out.coeff.push_back(std::move(sum));
  }
  return out;
}

// ---------------------------------------------------------------- R-matrix

std::array<std::array<Rational, 4>, 4> yangian_r(const Rational& z) {
  if (z == -1) throw PoleError("Yangian R-matrix at z = -1");
  std::array<std::array<Rational, 4>, 4> r{};
  r[0][0] = r[3][3] = 1;
  r[1][1] = r[2][2] = z / (z + 1);
  r[1][2] = r[2][1] = Rational(1) / (z + 1);
  return r;
}

PolyMatrix yangian_r_cleared(const Poly& z) {
  PolyMatrix r(4, 4);
  r(0, 0) = r(3, 3) = z + Poly(1);
  r(1, 1) = r(2, 2) = z;
  r(1, 2) = r(2, 1) = Poly(1);
  return r;
}

namespace {

// R acting on factors (f, g) of C^2 (x) C^2 (x) C^2, index 4a + 2b + c.
PolyMatrix embed(const PolyMatrix& r, int f, int g) {
  PolyMatrix out(8, 8);
  for (int row = 0; row < 8; ++row) {
    for (int col = 0; col < 8; ++col) {
      const int rb[3] = {(row >> 2) & 1, (row >> 1) & 1, row & 1};
      const int cb[3] = {(col >> 2) & 1, (col >> 1) & 1, col & 1};
      const int other = 3 - f - g;
      if (rb[other] != cb[other]) continue;
      out(row, col) = r(2 * rb[f] + rb[g], 2 * cb[f] + cb[g]);
    }
  }
  return out;
}

PolyMatrix constant_matrix(const std::array<std::array<Rational, 4>, 4>& r) {
  PolyMatrix m(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = Poly(r[i][j]);
  }
  return m;
}

}  // namespace

Rational qybe_residual(const Rational& z, const Rational& w) {
  const PolyMatrix r12 = embed(constant_matrix(yangian_r(z - w)), 0, 1);
  const PolyMatrix r13 = embed(constant_matrix(yangian_r(z)), 0, 2);
  const PolyMatrix r23 = embed(constant_matrix(yangian_r(w)), 1, 2);
  return (r12 * r13 * r23 - r23 * r13 * r12).max_abs();
}

Rational qybe_symbolic_residual() {
  const Poly z = Poly::var(Z);
  const Poly w = Poly::var(W);
  const PolyMatrix r12 = embed(yangian_r_cleared(z - w), 0, 1);
  const PolyMatrix r13 = embed(yangian_r_cleared(z), 0, 2);
  const PolyMatrix r23 = embed(yangian_r_cleared(w), 1, 2);
  return (r12 * r13 * r23 - r23 * r13 * r12).max_abs();
}

// ---------------------------------------------------------------- modules

int YangianModule::safe_level(int raises) const {
  if (finite()) return INT_MAX / 2;
  return truncation - 1 - raises;
}

namespace {

void put(SparseOp& op, int r, int c, Poly v) {
  if (!v.is_zero()) op[{r, c}] = std::move(v);
}

std::string rational_label(const Rational& u) { return u == 0 ? "" : "," + u.str(); }

}  // namespace

YangianModule finite_module(int m, const Rational& shift) {
  if (m < 0) throw ParameterError("finite module needs m >= 0");
  YangianModule X;
  X.kind = Kind::Finite;
  X.label = "V^" + std::to_string(m) + rational_label(shift);
  for (int i = 0; i <= m; ++i) X.weight.push_back(i);
  X.entry = [m, shift](int i, int j, const Poly& arg) {
    const Poly s = arg + Poly(shift);
    SparseOp op;
    for (int k = 0; k <= m; ++k) {
      if (i == 1 && j == 1) put(op, k, k, s + Poly(m - k));
      if (i == 1 && j == 2 && k < m) put(op, k + 1, k, Poly(m - k));
      if (i == 2 && j == 1 && k > 0) put(op, k - 1, k, Poly(k));
      if (i == 2 && j == 2) put(op, k, k, s + Poly(k));
    }
    return op;
  };
  return X;
}

YangianModule asymptotic_module(const Poly& spin, const Rational& shift, int K) {
  if (K <= 0) throw ParameterError("truncation must be positive");
  YangianModule X;
  X.kind = Kind::Asymptotic;
  X.label = "W^{" + spin.to_string() + rational_label(shift) + "}";
  X.truncation = K;
  for (int i = 0; i < K; ++i) X.weight.push_back(i);
  X.entry = [spin, shift, K](int i, int j, const Poly& arg) {
    const Poly s = arg + Poly(shift);
    SparseOp op;
    for (int k = 0; k < K; ++k) {
      if (i == 1 && j == 1) put(op, k, k, s + spin - Poly(k));
      if (i == 1 && j == 2 && k + 1 < K) put(op, k + 1, k, spin - Poly(k));
      if (i == 2 && j == 1 && k > 0) put(op, k - 1, k, Poly(k));
      if (i == 2 && j == 2) put(op, k, k, s + Poly(k));
    }
    return op;
  };
  return X;
}

YangianModule fock_module(const Rational& shift, int K) {
  if (K <= 0) throw ParameterError("truncation must be positive");
  YangianModule X;
  X.kind = Kind::Fock;
  X.label = "BW" + rational_label(shift);
  X.truncation = K;
  for (int i = 0; i < K; ++i) X.weight.push_back(i);
  X.entry = [shift, K](int i, int j, const Poly& arg) {
    const Poly s = arg + Poly(shift);
    SparseOp op;
    for (int k = 0; k < K; ++k) {
      if (i == 1 && j == 1) put(op, k, k, s - Poly(k));
      if (i == 1 && j == 2 && k + 1 < K) put(op, k + 1, k, Poly(-1));
      if (i == 2 && j == 1 && k > 0) put(op, k - 1, k, Poly(k));
      if (i == 2 && j == 2) put(op, k, k, Poly(1));
    }
    return op;
  };
  return X;
}

YangianModule build_module(Kind kind, const Poly& spin, const Rational& shift, int K) {
  switch (kind) {
    case Kind::Finite: {
      const Rational m = spin.constant_value();
      if (mp::denominator(m) != 1) throw ParameterError("finite module needs an integer spin");
      return finite_module(int(mp::numerator(m)), shift);
    }
    case Kind::Asymptotic:
      return asymptotic_module(spin, shift, K);
    case Kind::Fock:
      return fock_module(shift, K);
    case Kind::Tensor:
      break;
  }
  throw ParameterError("tensor modules are built with tensor()");
}

YangianModule tensor(const YangianModule& X, const YangianModule& Y) {
  YangianModule T;
  T.kind = Kind::Tensor;
  T.label = X.label + " (x) " + Y.label;
  const int dy = Y.dim();
  for (int a = 0; a < X.dim(); ++a) {
    for (int b = 0; b < dy; ++b) T.weight.push_back(X.weight[a] + Y.weight[b]);
  }
  if (X.finite()) {
    T.truncation = Y.truncation;
  } else if (Y.finite()) {
    T.truncation = X.truncation;
  } else {
    T.truncation = std::min(X.truncation, Y.truncation);
  }
  T.entry = [X, Y, dy](int i, int j, const Poly& arg) {
    SparseOp op;
    for (int k = 1; k <= 2; ++k) {
      const SparseOp a = X.t(i, k, arg);
      const SparseOp b = Y.t(k, j, arg);
      for (const auto& [ia, va] : a) {
        for (const auto& [ib, vb] : b) {
          const std::pair<int, int> key{ia.first * dy + ib.first, ia.second * dy + ib.second};
          Poly& slot = op[key];
          slot += va * vb;
          if (slot.is_zero()) op.erase(key);
        }
      }
    }
    return op;
  };
  return T;
}

YangianModule flip_t12(const YangianModule& X) {
  YangianModule F = X;
  F.label = X.label + " [t12 flipped]";
  F.entry = [X](int i, int j, const Poly& arg) {
    SparseOp op = X.t(i, j, arg);
    if (i == 1 && j == 2) {
      for (auto& [k, v] : op) v = -v;
    }
    return op;
  };
  return F;
}

namespace {

// Column-indexed copy of a sparse operator.
using Columns = std::vector<std::vector<std::pair<int, Poly>>>;

Columns columns(const SparseOp& op, int dim) {
  Columns out(dim);
  for (const auto& [rc, v] : op) out[rc.second].push_back({rc.first, v});
  return out;
}

using SparseVec = std::map<int, Poly>;

SparseVec apply_op(const Columns& op, const SparseVec& v) {
  SparseVec out;
  for (const auto& [c, x] : v) {
    for (const auto& [r, a] : op[c]) {
      Poly& slot = out[r];
      slot += a * x;
      if (slot.is_zero()) out.erase(r);
    }
  }
  return out;
}

}  // namespace

Rational rtt_residual(const YangianModule& X) {
  const Poly z = Poly::var(Z);
  const Poly w = Poly::var(W);
  const PolyMatrix r = yangian_r_cleared(z - w);
  const int n = X.dim();
  Columns tz[2][2], tw[2][2];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      tz[i][j] = columns(X.t(i + 1, j + 1, z), n);
      tw[i][j] = columns(X.t(i + 1, j + 1, w), n);
    }
  }
  const int safe = X.safe_level(2);
  Rational worst = 0;
  for (int col = 0; col < n; ++col) {
    if (X.weight[col] > safe) continue;
    const SparseVec e{{col, Poly(1)}};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int e1 = 0; e1 < 2; ++e1) {
          for (int f = 0; f < 2; ++f) {
            SparseVec diff;
            auto accumulate = [&](const SparseVec& v, const Poly& coef) {
              if (coef.is_zero()) return;
              for (const auto& [k, x] : v) diff[k] += coef * x;
            };
            for (int c = 0; c < 2; ++c) {
              for (int d = 0; d < 2; ++d) {
                // R_{ab,cd} t_ce(z) t_df(w)
                accumulate(apply_op(tz[c][e1], apply_op(tw[d][f], e)), r(2 * a + b, 2 * c + d));
                // t_bd(w) t_ac(z) R_{cd,ef}
                accumulate(apply_op(tw[b][d], apply_op(tz[a][c], e)), -r(2 * c + d, 2 * e1 + f));
              }
            }
            for (const auto& [k, x] : diff) worst = std::max(worst, x.max_abs());
          }
        }
      }
    }
  }
  return worst;
}

// ---------------------------------------------------------------- transfer

ChainBasis::ChainBasis(int L) : length(L) {
  if (L <= 0 || L > 12) throw ParameterError("chain length must be in 1..12");
  for (int idx = 0; idx < (1 << L); ++idx) {
    std::vector<int> s(L);
    for (int l = 0; l < L; ++l) s[l] = ((idx >> (L - 1 - l)) & 1) ? 2 : 1;
    strings.push_back(std::move(s));
  }
}

std::vector<int> ChainBasis::sector(int s) const {
  std::vector<int> out;
  for (int i = 0; i < int(strings.size()); ++i) {
    if (std::count(strings[i].begin(), strings[i].end(), 1) == s) out.push_back(i);
  }
  return out;
}

int ChainBasis::index(const std::vector<int>& s) const {
  if (int(s.size()) != length) throw ShapeError("string length differs from the chain");
  int idx = 0;
  for (int v : s) {
    if (v != 1 && v != 2) throw ShapeError("string entries must be 1 or 2");
    idx = 2 * idx + (v - 1);
  }
  return idx;
}

int yangian_truncation(int L, int order) { return order + L + 1; }

PSeriesMatrix yangian_transfer(const YangianModule& X, const std::vector<Rational>& sites, int order,
                               const Poly& arg) {
  const int L = int(sites.size());
  if (order < 0) throw RangeError("negative order");
  if (order > X.safe_level(L)) {
    throw RangeError("order " + std::to_string(order) + " exceeds the truncation-safe band of " + X.label);
  }
  const ChainBasis basis(L);
  const int n = X.dim();
  std::vector<std::array<std::array<Columns, 2>, 2>> ops(L);
  for (int l = 0; l < L; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) ops[l][i][j] = columns(X.t(i + 1, j + 1, arg + Poly(sites[l])), n);
    }
  }
  const int dim = int(basis.strings.size());
  PSeriesMatrix out;
  out.coeff.assign(order + 1, PolyMatrix(dim, dim));
  for (int b = 0; b < n; ++b) {
    const int level = X.weight[b];
    if (level > order) continue;
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        SparseVec v{{b, Poly(1)}};
        for (int l = L - 1; l >= 0 && !v.empty(); --l) {
          v = apply_op(ops[l][basis.strings[r][l] - 1][basis.strings[c][l] - 1], v);
        }
        auto it = v.find(b);
        if (it != v.end()) out.coeff[level](r, c) += it->second;
      }
    }
  }
  return out;
}

PSeriesMatrix yangian_q(const std::vector<Rational>& sites, int order) {
  const int K = yangian_truncation(int(sites.size()), order);
  return yangian_transfer(asymptotic_module(Poly::var(Z), 0, K), sites, order, Poly(0));
}

Rational yangian_tq_residual(const std::vector<Rational>& sites, int order, bool drop_p_term) {
  const Poly z = Poly::var(Z);
  const PSeriesMatrix t = yangian_transfer(finite_module(1), sites, order);
  const PSeriesMatrix q = yangian_q(sites, order);
  Poly prod_a(1), prod_b(1);
  for (const auto& a : sites) {
    prod_a = prod_a * (z + Poly(a));
    prod_b = prod_b * (z + Poly(a + 1));
  }
  PSeriesMatrix res = t * q - q.substitute(Z, z + Poly(1)).scaled(prod_a);
  if (!drop_p_term) res = res - q.substitute(Z, z - Poly(1)).scaled(prod_b).shifted_p();
  return res.max_abs();
}

Rational sector_leak(const PSeriesMatrix& t, const ChainBasis& basis) {
  Rational worst = 0;
  auto sector_of = [&](int i) { return std::count(basis.strings[i].begin(), basis.strings[i].end(), 1); };
  for (const auto& m : t.coeff) {
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        if (sector_of(r) != sector_of(c)) worst = std::max(worst, m(r, c).max_abs());
      }
    }
  }
  return worst;
}

DegreeReport q_sector_degree(const PSeriesMatrix& q, const ChainBasis& basis, int s) {
  DegreeReport out;
  const PSeriesMatrix qs = q.restrict(basis.sector(s));
  for (const auto& m : qs.coeff) out.degree = std::max(out.degree, m.degree(Z));
  if (out.degree >= 0) {
    out.leading_nonzero = std::any_of(qs.coeff.begin(), qs.coeff.end(),
                                      [&](const PolyMatrix& m) { return !m.coefficient(Z, out.degree).is_zero(); });
  }
  return out;
}

bool q_leading_triangular(const PSeriesMatrix& q, const ChainBasis& basis, const std::vector<Rational>& sites) {
  const PolyMatrix& q0 = q.coeff.at(0);
  const int L = basis.length;
  // i precedes j: at the last position where they differ, i has 1 and j has 2.
  auto precedes = [&](int i, int j) {
    for (int l = L - 1; l >= 0; --l) {
      const int a = basis.strings[i][l];
      const int b = basis.strings[j][l];
      if (a != b) return a == 1;
    }
    return false;
  };
  const Poly z = Poly::var(Z);
  for (int r = 0; r < q0.rows(); ++r) {
    for (int c = 0; c < q0.cols(); ++c) {
      if (precedes(c, r) && !q0(r, c).is_zero()) return false;
    }
    Poly diag(1);
    for (int l = 0; l < L; ++l) diag = diag * (Poly(sites[l]) + (basis.strings[r][l] == 1 ? z : Poly(0)));
    if (!(q0(r, r) == diag)) return false;
  }
  return true;
}

PSeriesMatrix a_ls(const PSeriesMatrix& q, const ChainBasis& basis, int s) {
  PSeriesMatrix out;
  for (const auto& m : q.restrict(basis.sector(s)).coeff) out.coeff.push_back(m.coefficient(Z, s));
  return out;
}

PSeriesMatrix a21_closed_form(const Rational& a1, const Rational& a2, int order) {
  auto scalar = [order](auto f) {
    PSeriesMatrix s;
    for (int k = 0; k <= order; ++k) {
      PolyMatrix m(1, 1);
      m(0, 0) = Poly(f(k));
      s.coeff.push_back(m);
    }
    return s;
  };
  const PSeriesMatrix geo = scalar([](int) { return Rational(1); });
  const PSeriesMatrix p = scalar([](int k) { return Rational(k == 1 ? 1 : 0); });
  const PSeriesMatrix p_geo = p * geo;
  auto constant = [&](const Rational& c) { return scalar([c](int k) { return k == 0 ? c : Rational(0); }); };
  const PSeriesMatrix e00 = geo * (constant(a1) + p_geo);
  const PSeriesMatrix e01 = geo * geo;
  const PSeriesMatrix e10 = geo * p_geo;
  const PSeriesMatrix e11 = geo * (constant(a2) + p_geo);
  PSeriesMatrix out;
  for (int k = 0; k <= order; ++k) {
    PolyMatrix m(2, 2);
    m(0, 0) = e00.coeff[k](0, 0);
    m(0, 1) = e01.coeff[k](0, 0);
    m(1, 0) = e10.coeff[k](0, 0);
    m(1, 1) = e11.coeff[k](0, 0);
    out.coeff.push_back(m);
  }
  return out;
}

std::vector<Rational> two_q_residual(const std::vector<Rational>& sites, int order) {
  const int L = int(sites.size());
  const ChainBasis basis(L);
  const PSeriesMatrix q = yangian_q(sites, order);
  const PSeriesMatrix tbw = yangian_transfer(fock_module(0, yangian_truncation(L, order)), sites, order);
  std::vector<Rational> out;
  for (int s = 0; s <= L; ++s) {
    const std::vector<int> idx = basis.sector(s);
    const int n = int(idx.size());
    PSeriesMatrix one_minus_p;
    for (int k = 0; k <= order; ++k) {
      one_minus_p.coeff.push_back(k == 0 ? PolyMatrix::identity(n)
                                         : (k == 1 ? Poly(-1) * PolyMatrix::identity(n) : PolyMatrix(n, n)));
    }
    const PSeriesMatrix rhs = one_minus_p * a_ls(q, basis, s) * tbw.restrict(idx);
    out.push_back((q.restrict(idx) - rhs).max_abs());
  }
  return out;
}

PolyMatrix sum_polynomial_series(const PSeriesMatrix& s, const Rational& p) {
  if (p == 1) throw PoleError("closed-form p-sum at p = 1");
  const int n = s.order();
  if (n < 1) throw RangeError("closed-form p-sum needs at least two coefficients");
  // Forward differences at 0: delta[j] = sum_i (-1)^{j-i} C(j,i) c_i.
  std::vector<PolyMatrix> row = s.coeff;
  std::vector<PolyMatrix> delta{row[0]};
  for (int j = 1; j <= n; ++j) {
    std::vector<PolyMatrix> next;
    for (std::size_t i = 0; i + 1 < row.size(); ++i) next.push_back(row[i + 1] - row[i]);
    row = std::move(next);
    delta.push_back(row[0]);
  }
  if (!delta[n].is_zero()) throw RangeError("series coefficients are not polynomial in the level");
  // sum_k C(k, j) p^k = p^j / (1-p)^{j+1}.
  PolyMatrix out(s.dim(), s.dim());
  Rational weight = Rational(1) / (1 - p);
  for (int j = 0; j < n; ++j) {
    out = out + Poly(weight) * delta[j];
    weight *= p / (1 - p);
  }
  return out;
}

// ---------------------------------------------------------------- quadratic extension

namespace {

Rational common_radicand(const QuadExt& x, const QuadExt& y) {
  if (x.b == 0) return y.d;
  if (y.b == 0) return x.d;
  if (x.d != y.d) throw ParameterError("quadratic extensions with different radicands");
  return x.d;
}

bool is_square(const mp::cpp_int& n) {
  if (n < 0) return false;
  const mp::cpp_int r = mp::sqrt(n);
  return r * r == n;
}

}  // namespace

std::complex<double> QuadExt::to_complex() const {
  const double root_d = std::sqrt(std::abs(d.convert_to<double>()));
  const double bd = b.convert_to<double>() * root_d;
  if (d < 0) return {a.convert_to<double>(), bd};
  return {a.convert_to<double>() + bd, 0.0};
}

std::string QuadExt::to_string() const {
  if (b == 0) return a.str();
  return a.str() + " + (" + b.str() + ")*sqrt(" + d.str() + ")";
}

QuadExt operator+(const QuadExt& x, const QuadExt& y) { return {x.a + y.a, x.b + y.b, common_radicand(x, y)}; }
QuadExt operator-(const QuadExt& x, const QuadExt& y) { return {x.a - y.a, x.b - y.b, common_radicand(x, y)}; }

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  const Rational d = common_radicand(x, y);
  return {x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d};
}

QuadExt operator/(const QuadExt& x, const QuadExt& y) {
  const Rational norm = y.a * y.a - y.b * y.b * y.d;
  if (norm == 0) throw SingularityError("division by zero in Q(sqrt d)");
  const QuadExt conj{y.a / norm, -y.b / norm, y.d};
  return x * conj;
}

std::vector<QuadExt> yangian_bethe_roots_exact(const Rational& a1, const Rational& a2, const Rational& p) {
  if (p == 1) throw ParameterError("exact Bethe roots need p != 1");
  const Rational A = p - 1;
  const Rational B = p * (a1 + a2 + 2) - (a1 + a2);
  const Rational C = p * (a1 + 1) * (a2 + 1) - a1 * a2;
  const Rational D = B * B - 4 * A * C;
  const Rational base = -B / (2 * A);
  if (D == 0) return {QuadExt{base, 0, 0}};
  const mp::cpp_int num = mp::numerator(D);
  const mp::cpp_int den = mp::denominator(D);
  if (is_square(num) && is_square(den)) {
    const Rational root = Rational(mp::sqrt(num)) / Rational(mp::sqrt(den));
    return {QuadExt{base + root / (2 * A), 0, 0}, QuadExt{base - root / (2 * A), 0, 0}};
  }
  return {QuadExt{base, 1 / (2 * A), D}, QuadExt{base, -1 / (2 * A), D}};
}

EigenExample eigen_example_check(const Rational& a1, const Rational& a2, const Rational& p) {
  const std::vector<Rational> sites{a1, a2};
  const ChainBasis basis(2);
  const std::vector<int> idx{basis.index({2, 1}), basis.index({1, 2})};
  // Level polynomials of Q have degree <= L, so L + 2 coefficients fix the closed form.
  const PolyMatrix q = sum_polynomial_series(yangian_q(sites, 4).restrict(idx), p);
  const PolyMatrix A = q.coefficient(Z, 1);
  const PolyMatrix B = q.coefficient(Z, 0);
  EigenExample out;
  out.roots = yangian_bethe_roots_exact(a1, a2, p);
  const Rational g = 1 / (1 - p);
  auto lift = [](const Rational& r) { return QuadExt{r, 0, 0}; };
  auto apply2 = [&](const PolyMatrix& m, const QuadExt v[2], int r) {
    return lift(m(r, 0).constant_value()) * v[0] + lift(m(r, 1).constant_value()) * v[1];
  };
  for (const QuadExt& z1 : out.roots) {
    const QuadExt v[2] = {z1 + lift(a1 + 1), z1 + lift(a2)};
    const QuadExt lambda = lift(a1 * g + p * g * g) + lift(g * g) * v[1] / v[0];
    out.lambdas.push_back(lambda);
    for (int r = 0; r < 2; ++r) {
      if (!(apply2(A, v, r) - lambda * v[r]).is_zero()) out.a_eigen = false;
      // Q(z) v = lambda (z - z1) v: the z^1 part is A v = lambda v, the z^0 part B v = -lambda z1 v.
      if (!(apply2(B, v, r) + lambda * z1 * v[r]).is_zero()) out.q_eigen = false;
    }
    if (!out.a_eigen) out.q_eigen = false;
  }
  return out;
}

// ---------------------------------------------------------------- q-characters

bool equal(const RatFunc& a, const RatFunc& b) { return (a.num * b.den - b.num * a.den).is_zero(); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num * b.num, a.den * b.den}; }

YMonomial operator*(const YMonomial& a, const YMonomial& b) { return {a.g1 * b.g1, a.g2 * b.g2}; }

void YQChar::add(int level, YMonomial m) {
  if (level <= depth) levels[level].push_back(std::move(m));
}

YQChar YQChar::shifted(const Rational& u) const {
  const Poly by = Poly::var(Z) + Poly(u);
  YQChar out{depth, {}};
  auto sub = [&](const RatFunc& f) { return RatFunc{f.num.substitute(Z, by), f.den.substitute(Z, by)}; };
  for (const auto& [k, monos] : levels) {
    for (const auto& m : monos) out.add(k, {sub(m.g1), sub(m.g2)});
  }
  return out;
}

YQChar operator*(const YQChar& a, const YQChar& b) {
  YQChar out{std::min(a.depth, b.depth), {}};
  for (const auto& [i, ma] : a.levels) {
    for (const auto& [j, mb] : b.levels) {
      for (const auto& x : ma) {
        for (const auto& y : mb) out.add(i + j, x * y);
      }
    }
  }
  return out;
}

bool equal(const YQChar& a, const YQChar& b) {
  const int depth = std::min(a.depth, b.depth);
  for (int k = 0; k <= depth; ++k) {
    const auto ia = a.levels.find(k);
    const auto ib = b.levels.find(k);
    const std::vector<YMonomial> none;
    const auto& ma = ia == a.levels.end() ? none : ia->second;
    const auto& mb = ib == b.levels.end() ? none : ib->second;
    if (ma.size() != mb.size()) return false;
    std::vector<bool> used(mb.size(), false);
    for (const auto& x : ma) {
      bool found = false;
      for (std::size_t j = 0; j < mb.size() && !found; ++j) {
        if (!used[j] && equal(x.g1, mb[j].g1) && equal(x.g2, mb[j].g2)) used[j] = found = true;
      }
      if (!found) return false;
    }
  }
  return true;
}

YQChar yangian_qchar(const YangianModule& X, int depth) {
  const Poly z = Poly::var(Z);
  const int n = X.dim();
  const SparseOp t11 = X.t(1, 1, z), t12 = X.t(1, 2, z), t21 = X.t(2, 1, z), t22 = X.t(2, 2, z);
  std::map<int, int> count;
  for (int w : X.weight) ++count[w];
  auto at = [](const SparseOp& op, int r, int c) {
    auto it = op.find({r, c});
    return it == op.end() ? Poly() : it->second;
  };
  YQChar out{depth, {}};
  for (int b = 0; b < n; ++b) {
    const int level = X.weight[b];
    if (level > depth) continue;
    if (!X.finite() && level > X.safe_level(0)) continue;
    if (count[level] > 1) throw CategoryError("weight space of dimension > 1 in " + X.label);
    const Poly k2 = at(t22, b, b);
    if (k2.is_zero()) throw CategoryError("t22 not invertible on " + X.label);
    RatFunc k1{at(t11, b, b), Poly(1)};
    for (const auto& [rc, down] : t21) {
      if (rc.second != b) continue;
      const int mid = rc.first;
      const Poly d = at(t22, mid, mid);
      if (d.is_zero()) throw CategoryError("t22 not invertible on " + X.label);
      const Poly up = at(t12, b, mid);
      // k1 - up * down / d
      k1 = RatFunc{k1.num * d - up * down * k1.den, k1.den * d};
    }
    out.add(level, YMonomial{k1, RatFunc{k2, Poly(1)}});
  }
  return out;
}

namespace {

YMonomial level_monomial(const Poly& spin, int i) {
  const Poly z = Poly::var(Z);
  const YMonomial head{RatFunc{z + spin, Poly(1)}, RatFunc{z, Poly(1)}};
  const YMonomial tail{RatFunc{z - Poly(1), z + Poly(i - 1)}, RatFunc{z + Poly(i), z}};
  return head * tail;
}

}  // namespace

YQChar qchar_finite_formula(int m, int depth) {
  YQChar out{depth, {}};
  for (int i = 0; i <= std::min(m, depth); ++i) out.add(i, level_monomial(Poly(m), i));
  return out;
}

YQChar qchar_asymptotic_formula(const Poly& spin, int depth) {
  YQChar out{depth, {}};
  for (int i = 0; i <= depth; ++i) out.add(i, level_monomial(spin, i));
  return out;
}

YQChar qchar_fock_formula(int depth) {
  YQChar out{depth, {}};
  for (int i = 0; i <= depth; ++i) out.add(i, YMonomial{RatFunc{Poly::var(Z), Poly(1)}, RatFunc{Poly(1), Poly(1)}});
  return out;
}

}  // namespace ellq::yangian
