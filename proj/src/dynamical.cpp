#include "ellq/dynamical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ellq {

namespace {

bool even_integer_gap(cplx d, long& half) {
  const double h = d.real() / 2.0;
  half = std::lround(h);
  return std::abs(d.imag()) < 1e-9 && std::abs(h - double(half)) < 1e-9;
}

}  // namespace

WeightBasis::WeightBasis(cplx top_weight, std::vector<int> levels, std::vector<int> edges, int complete_level)
    : top_(top_weight), levels_(std::move(levels)), edges_(std::move(edges)), complete_(complete_level) {
  if (levels_.size() != edges_.size()) throw ShapeError("basis levels and edges differ in length");
  if (!std::is_sorted(levels_.begin(), levels_.end())) throw ShapeError("basis levels must be ascending");
  if (!levels_.empty() && levels_.front() < 0) throw ShapeError("basis levels must be nonnegative");
}

WeightBasis WeightBasis::ladder(cplx top_weight, int K, bool finite) {
  std::vector<int> levels(K + 1);
  std::vector<int> edges(K + 1);
  for (int j = 0; j <= K; ++j) {
    levels[j] = j;
    edges[j] = finite ? kUnbounded : K - j;
  }
  return WeightBasis(top_weight, levels, edges, finite ? kUnbounded : K);
}

std::vector<int> WeightBasis::at_level(int level) const {
  std::vector<int> out;
  auto lo = std::lower_bound(levels_.begin(), levels_.end(), level);
  auto hi = std::upper_bound(levels_.begin(), levels_.end(), level);
  for (auto it = lo; it != hi; ++it) out.push_back(int(it - levels_.begin()));
  return out;
}

int WeightBasis::safe_level(int min_edge) const {
  int safe = max_level();
  for (int k = 0; k < size(); ++k) {
    if (edges_[k] < min_edge) safe = std::min(safe, levels_[k] - 1);
  }
  return safe;
}

void ModuleOperator::add(int row, int col, const ThetaSum& value) {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_) throw ShapeError("operator entry out of range");
  if (value.is_zero()) return;
  for (auto& e : entries_) {
    if (e.row == row && e.col == col) {
      e.value += value;
      return;
    }
  }
  entries_.push_back({row, col, value});
}

ThetaSum ModuleOperator::entry(int row, int col) const {
  for (const auto& e : entries_) {
    if (e.row == row && e.col == col) return e.value;
  }
  return {};
}

Matrix ModuleOperator::eval(cplx z, cplx x, const EllipticParams& params, double pole_margin) const {
  Matrix m = Matrix::Zero(rows_, cols_);
  for (const auto& e : entries_) m(e.row, e.col) += e.value.eval(z, x, params, pole_margin);
  return m;
}

ModuleOperator ModuleOperator::shifted_z(cplx c) const {
  ModuleOperator out(alpha_, beta_, rows_, cols_);
  for (const auto& e : entries_) out.entries_.push_back({e.row, e.col, e.value.shifted_z(c)});
  return out;
}

ModuleOperator ModuleOperator::scaled(cplx c) const {
  ModuleOperator out(alpha_, beta_, rows_, cols_);
  if (c == cplx(0.0)) return out;
  for (const auto& e : entries_) out.entries_.push_back({e.row, e.col, e.value * c});
  return out;
}

ModuleOperator compose_module_ops(const ModuleOperator& phi, const ModuleOperator& psi, const EllipticParams& params) {
  if (phi.cols() != psi.rows()) throw ShapeError("composed operators act on different bases");
  ModuleOperator out(phi.alpha() + psi.alpha(), phi.beta() + psi.beta(), phi.rows(), psi.cols());
  const cplx shift = phi.beta() * params.hbar;
  for (const auto& a : phi.entries()) {
    for (const auto& b : psi.entries()) {
      if (a.col != b.row) continue;
      out.add(a.row, b.col, a.value * b.value.shifted_x(shift));
    }
  }
  return out;
}

NumOp numeric(const ModuleOperator& op, cplx z, const EllipticParams& params, double pole_margin) {
  return {op.alpha(), op.beta(), [op, z, params, pole_margin](cplx x) { return op.eval(z, x, params, pole_margin); }};
}

NumOp compose(const NumOp& a, const NumOp& b, cplx hbar) {
  const cplx shift = a.beta * hbar;
  return {a.alpha + b.alpha, a.beta + b.beta, [a, b, shift](cplx x) -> Matrix { return a(x) * b(x + shift); }};
}

NumOp inverse(const NumOp& a, cplx hbar) {
  const cplx shift = a.beta * hbar;
  return {-a.alpha, -a.beta, [a, shift](cplx x) -> Matrix {
            const Matrix m = a(x - shift);
            Eigen::FullPivLU<Matrix> lu(m);
            if (!lu.isInvertible()) {
              std::ostringstream os;
              os << "operator not invertible at x = " << (x - shift);
              throw SingularityError(os.str());
            }
            return lu.inverse();
          }};
}

NumOp combine(const NumOp& a, const NumOp& b, cplx s) {
  if (std::abs(a.alpha - b.alpha) > 1e-12 || std::abs(a.beta - b.beta) > 1e-12) {
    throw ShapeError("sum of operators with different bidegrees");
  }
  return {a.alpha, a.beta, [a, b, s](cplx x) -> Matrix { return a(x) + s * b(x); }};
}

EllipticModule dynamical_tensor(const EllipticModule& X, const EllipticModule& Y) {
  if (X.params.tau != Y.params.tau || X.params.hbar != Y.params.hbar) {
    throw ParameterError("tensor factors use different (tau, hbar)");
  }
  struct Pair {
    int a;
    int b;
    int level;
  };
  std::vector<Pair> pairs;
  for (int a = 0; a < X.dim(); ++a) {
    for (int b = 0; b < Y.dim(); ++b) pairs.push_back({a, b, X.basis.level(a) + Y.basis.level(b)});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) { return p.level < q.level; });
  const int n = int(pairs.size());
  std::vector<int> levels(n);
  std::vector<int> edges(n);
  std::vector<std::vector<int>> index(X.dim(), std::vector<int>(Y.dim()));
  for (int k = 0; k < n; ++k) {
    levels[k] = pairs[k].level;
    edges[k] = std::min(X.basis.edge(pairs[k].a), Y.basis.edge(pairs[k].b));
    index[pairs[k].a][pairs[k].b] = k;
  }

  EllipticModule out;
  out.params = X.params;
  out.basis = WeightBasis(X.basis.top_weight() + Y.basis.top_weight(), levels, edges,
                          std::min(X.basis.complete_level(), Y.basis.complete_level()));
  out.label = "(" + X.label + ")x(" + Y.label + ")";
  const cplx hbar = X.params.hbar;
  for (int i : {1, -1}) {
    for (int j : {1, -1}) {
      ModuleOperator op(double(i), double(j), n, n);
      for (int k : {1, -1}) {
        for (const auto& ex : X.op(i, k).entries()) {
          for (const auto& ey : Y.op(k, j).entries()) {
            const cplx wt = Y.basis.weight(ey.row);
            op.add(index[ex.row][ey.row], index[ex.col][ey.col], ex.value.shifted_x(hbar * wt) * ey.value);
          }
        }
      }
      out.op(i, j) = std::move(op);
    }
  }
  return out;
}

DiffOpSeries::DiffOpSeries(cplx alpha0, int order, int dim, cplx hbar, Coefficients coefficients)
    : alpha0_(alpha0),
      order_(order),
      dim_(dim),
      hbar_(hbar),
      coefficients_(std::move(coefficients)),
      cache_(std::make_shared<Cache>()) {
  if (order < 0) throw ShapeError("series order must be nonnegative");
}

DiffOpSeries DiffOpSeries::identity(int dim, int order, cplx hbar) {
  return DiffOpSeries(0.0, order, dim, hbar, [dim, order](cplx) {
    std::vector<Matrix> c(order + 1, Matrix::Zero(dim, dim));
    c[0] = Matrix::Identity(dim, dim);
    return c;
  });
}

const std::vector<Matrix>& DiffOpSeries::at(cplx x) const {
  const std::pair<double, double> key{x.real(), x.imag()};
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->values.find(key);
    if (it != cache_->values.end()) return it->second;
  }
  std::vector<Matrix> value = coefficients_(x);
  if (int(value.size()) < order_ + 1) throw ShapeError("series coefficient callback returned too few terms");
  value.resize(order_ + 1);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->values.emplace(key, std::move(value)).first->second;
}

DiffOpSeries DiffOpSeries::scaled(cplx c) const {
  DiffOpSeries self = *this;
  return DiffOpSeries(alpha0_, order_, dim_, hbar_, [self, c](cplx x) {
    std::vector<Matrix> v = self.at(x);
    for (auto& m : v) m *= c;
    return v;
  });
}

DiffOpSeries DiffOpSeries::truncated(int order) const {
  if (order > order_) throw RangeError("cannot extend a truncated series");
  DiffOpSeries self = *this;
  return DiffOpSeries(alpha0_, order, dim_, hbar_, [self, order](cplx x) {
    const auto& v = self.at(x);
    return std::vector<Matrix>(v.begin(), v.begin() + order + 1);
  });
}

DiffOpSeries series_compose(const DiffOpSeries& a, const DiffOpSeries& b, int order, int shift_sign) {
  if (a.dim() != b.dim()) throw ShapeError("composed series act on different spaces");
  if (order > std::min(a.order(), b.order())) throw RangeError("composition order exceeds operand truncation");
  const cplx hbar = a.hbar();
  const double sign = shift_sign < 0 ? -1.0 : 1.0;
  return DiffOpSeries(a.alpha0() + b.alpha0(), order, a.dim(), hbar, [a, b, order, hbar, sign](cplx x) {
    const auto& bx = b.at(x);
    std::vector<Matrix> c(order + 1, Matrix::Zero(a.dim(), a.dim()));
    for (int j = 0; j <= order; ++j) {
      const auto& ax = a.at(x + sign * b.exponent(j) * hbar);
      for (int i = 0; i + j <= order; ++i) c[i + j] += ax[i] * bx[j];
    }
    return c;
  });
}

DiffOpSeries series_invert(const DiffOpSeries& s, int order) {
  if (order > s.order()) throw RangeError("inversion order exceeds operand truncation");
  const cplx hbar = s.hbar();
  const cplx a0 = s.alpha0();
  return DiffOpSeries(-a0, order, s.dim(), hbar, [s, order, hbar, a0](cplx x) {
    auto b = [a0](int j) { return -a0 - 2.0 * double(j); };
    std::vector<Matrix> n(order + 1);
    for (int k = 0; k <= order; ++k) {
      Matrix rhs = Matrix::Zero(s.dim(), s.dim());
      if (k == 0) rhs.setIdentity();
      for (int i = 1; i <= k; ++i) rhs -= s.at(x + b(k - i) * hbar)[i] * n[k - i];
      Eigen::FullPivLU<Matrix> lu(s.at(x + b(k) * hbar)[0]);
      if (!lu.isInvertible()) {
        std::ostringstream os;
        os << "leading series coefficient is singular at x = " << (x + b(k) * hbar);
        throw SingularityError(os.str());
      }
      n[k] = lu.solve(rhs);
    }
    return n;
  });
}

DiffOpSeries series_add(const DiffOpSeries& a, const DiffOpSeries& b, cplx c) {
  if (a.dim() != b.dim()) throw ShapeError("added series act on different spaces");
  long half = 0;
  if (!even_integer_gap(a.alpha0() - b.alpha0(), half)) {
    throw GradingError("leading exponents lie in different cosets of 2Z");
  }
  const DiffOpSeries& hi = half >= 0 ? a : b;
  const int offset = int(std::abs(half));
  const cplx ch = half >= 0 ? cplx(1.0) : c;
  const cplx cl = half >= 0 ? c : cplx(1.0);
  const DiffOpSeries& lo = half >= 0 ? b : a;
  const int order = std::min(hi.order(), lo.order() + offset);
  return DiffOpSeries(hi.alpha0(), order, a.dim(), a.hbar(), [hi, lo, offset, order, ch, cl](cplx x) {
    std::vector<Matrix> out(order + 1);
    const auto& hx = hi.at(x);
    const auto& lx = lo.at(x);
    for (int k = 0; k <= order; ++k) {
      out[k] = ch * hx[k];
      if (k >= offset) out[k] += cl * lx[k - offset];
    }
    return out;
  });
}

double series_residual(const DiffOpSeries& a, const DiffOpSeries& b, const std::vector<cplx>& xs, int order) {
  if (a.dim() != b.dim()) throw ShapeError("compared series act on different spaces");
  long half = 0;
  if (!even_integer_gap(a.alpha0() - b.alpha0(), half)) {
    throw GradingError("compared series lie in different cosets of 2Z");
  }
  const int oa = half >= 0 ? 0 : int(-half);
  const int ob = half >= 0 ? int(half) : 0;
  double worst = 0.0;
  for (cplx x : xs) {
    const auto& ax = a.at(x);
    const auto& bx = b.at(x);
    auto coeff = [](const std::vector<Matrix>& v, int k) -> double { return k >= 0 && k < int(v.size()) ? v[k].norm() : 0.0; };
    double scale = 0.0;
    for (int k = 0; k <= order; ++k) scale = std::max({scale, coeff(ax, k - oa), coeff(bx, k - ob)});
    scale = std::max(scale, 1e-300);
    for (int k = 0; k <= order; ++k) {
      const int ka = k - oa;
      const int kb = k - ob;
      if (ka > a.order() || kb > b.order()) continue;
      Matrix ma = ka >= 0 ? ax[ka] : Matrix::Zero(a.dim(), a.dim());
      Matrix mb = kb >= 0 ? bx[kb] : Matrix::Zero(a.dim(), a.dim());
      worst = std::max(worst, (ma - mb).norm() / scale);
    }
  }
  return worst;
}

}  // namespace ellq
