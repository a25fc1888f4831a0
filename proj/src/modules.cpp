#include "ellq/modules.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace ellq {

namespace {

int vec_index(int sign) { return sign > 0 ? 0 : 1; }
int pair_index(int a, int b) { return 2 * vec_index(a) + vec_index(b); }

ThetaExpr th(int cz, int cx, cplx shift, int e = 1) { return ThetaExpr::theta(cz, cx, shift, e); }

// Canonical form keeps constant theta factors out of repeated evaluation and turns
// factors vanishing identically (theta at a lattice point) into exact zeros.
ThetaSum canon(const ThetaExpr& e, const EllipticParams& params) { return ThetaSum(e.canonical(params)); }

Matrix keep_columns(const Matrix& m, const WeightBasis& basis, int max_level) {
  Matrix out = m;
  for (int k = 0; k < basis.size(); ++k) {
    if (basis.level(k) > max_level) out.col(k).setZero();
  }
  return out;
}

EllipticModule module_shell(const EllipticParams& params, WeightBasis basis, std::string label) {
  EllipticModule X;
  X.params = params;
  X.basis = std::move(basis);
  X.label = std::move(label);
  const int n = X.basis.size();
  for (int i : {1, -1}) {
    for (int j : {1, -1}) X.op(i, j) = ModuleOperator(double(i), double(j), n, n);
  }
  return X;
}

std::string fmt(cplx c) {
  std::ostringstream os;
  os << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

}  // namespace

ThetaExpr r_entry(int i, int j, int m, int n, const EllipticParams& params) {
  const cplx h = params.hbar;
  if (i + j != m + n) return ThetaExpr::zero();
  if (i == j) return (m == i && n == j) ? ThetaExpr() : ThetaExpr::zero();
  if (i > 0 && m > 0) return th(1, 0, 0.0) * th(0, 1, h) * th(0, 1, -h) * th(1, 0, h, -1) * th(0, 1, 0.0, -2);
  if (i < 0 && m > 0) return th(1, 1, 0.0) * th(0, 0, h) * th(1, 0, h, -1) * th(0, 1, 0.0, -1);
  if (i > 0 && m < 0) return -(th(1, -1, 0.0) * th(0, 0, h) * th(1, 0, h, -1) * th(0, 1, 0.0, -1));
  return th(1, 0, 0.0) * th(1, 0, h, -1);
}

Eigen::Matrix4cd r_matrix(cplx z, cplx x, const EllipticParams& params, double pole_margin) {
  Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
  for (int i : {1, -1}) {
    for (int j : {1, -1}) {
      for (int m : {1, -1}) {
        for (int n : {1, -1}) {
          const ThetaExpr e = r_entry(i, j, m, n, params);
          if (!e.is_zero()) r(pair_index(m, n), pair_index(i, j)) = e.eval(z, x, params, pole_margin);
        }
      }
    }
  }
  return r;
}

double qdybe_residual(cplx z, cplx w, cplx x, const EllipticParams& params, cplx lattice_kick) {
  const cplx h = params.hbar;
  auto sign_of = [](int idx, int slot) { return ((idx >> (2 - slot)) & 1) ? -1 : 1; };
  // Embeds R(s; x + hbar * weight of the spectator slot) into slots (a, b).
  auto embed = [&](int a, int b, cplx s, cplx xbase, bool dynamical_spectator) {
    const int c = 3 - a - b;
    Eigen::Matrix<cplx, 8, 8> out = Eigen::Matrix<cplx, 8, 8>::Zero();
    for (int col = 0; col < 8; ++col) {
      const int sc = sign_of(col, c);
      const cplx xx = dynamical_spectator ? xbase + h * double(sc) : xbase;
      const Eigen::Matrix4cd r = r_matrix(s, xx, params);
      const int ia = sign_of(col, a);
      const int ib = sign_of(col, b);
      for (int m : {1, -1}) {
        for (int n : {1, -1}) {
          int row = 0;
          for (int slot = 0; slot < 3; ++slot) {
            const int sg = slot == a ? m : slot == b ? n : sign_of(col, slot);
            row = 2 * row + (sg > 0 ? 0 : 1);
          }
          out(row, col) += r(pair_index(m, n), pair_index(ia, ib));
        }
      }
    }
    return out;
  };
  const Eigen::Matrix<cplx, 8, 8> lhs = embed(0, 1, z - w, x + lattice_kick, true) * embed(0, 2, z, x, false) * embed(1, 2, w, x, true);
  const Eigen::Matrix<cplx, 8, 8> rhs = embed(1, 2, w, x, false) * embed(0, 2, z, x, true) * embed(0, 1, z - w, x, false);
  return (lhs - rhs).norm();
}

EllipticModule build_vector_rep(const EllipticParams& params) {
  EllipticModule X = module_shell(params, WeightBasis::ladder(1.0, 1, true), "V");
  for (int m : {1, -1}) {
    for (int i : {1, -1}) {
      for (int j : {1, -1}) {
        for (int n : {1, -1}) {
          const ThetaExpr e = r_entry(i, j, m, n, params);
          if (!e.is_zero()) X.op(m, i).add(vec_index(n), vec_index(j), canon(e, params));
        }
      }
    }
  }
  return X;
}

EllipticModule build_asymptotic(cplx spin, cplx shift, int K, const EllipticParams& params) {
  if (K < 0) throw ShapeError("truncation must be nonnegative");
  const cplx h = params.hbar;
  const cplx u = shift * h;
  EllipticModule X = module_shell(params, WeightBasis::ladder(spin, K, false), "W^{" + fmt(spin) + "," + fmt(shift) + "}");
  for (int j = 0; j <= K; ++j) {
    const double dj = double(j);
    X.op(1, 1).add(j, j,
                   canon(th(1, 0, u + (spin - dj + 1.0) * h) * th(0, 1, (spin - dj + 1.0) * h) * th(0, 1, -dj * h) *
                             th(0, 1, 0.0, -1) * th(0, 1, (spin - 2.0 * dj + 1.0) * h, -1),
                         params));
    if (j < K) {
      X.op(1, -1).add(j + 1, j,
                      canon(th(1, 1, u + (spin - dj) * h) * th(0, 0, (spin - dj) * h) *
                                th(0, 1, (spin - 2.0 * dj - 1.0) * h, -1),
                            params));
    }
    if (j >= 1) {
      X.op(-1, 1).add(j - 1, j, canon(-(th(1, -1, u + dj * h) * th(0, 0, dj * h) * th(0, 1, 0.0, -1)), params));
    }
    X.op(-1, -1).add(j, j, canon(th(1, 0, u + (dj + 1.0) * h), params));
  }
  return X;
}

EllipticModule build_asymptotic_socle(cplx spin, cplx shift, int l, const EllipticParams& params) {
  if (l < 0) throw ParameterError("socle dimension must be nonnegative");
  if (!in_scaled_lattice(spin - double(l), params)) {
    throw ParameterError("spin " + fmt(spin) + " is not in " + std::to_string(l) + " + hbar^{-1}(Z + Z tau)");
  }
  EllipticModule W = build_asymptotic(spin, shift, l, params);
  W.basis = WeightBasis::ladder(spin, l, true);
  W.label = "V^{" + fmt(spin) + "," + fmt(shift) + "}";
  return W;
}

EllipticModule socle(int l, const EllipticParams& params, cplx shift) {
  return build_asymptotic_socle(double(l), shift, l, params);
}

EllipticModule one_dim_module(const ThetaExpr& g, const EllipticParams& params) {
  if (!g.x_free()) throw ShapeError("one-dimensional module needs g independent of x");
  if (g.is_zero()) throw SingularityError("one-dimensional module needs g nonzero");
  EllipticModule X = module_shell(params, WeightBasis::ladder(0.0, 0, true), "D[" + g.to_string() + "]");
  X.op(1, 1).add(0, 0, ThetaSum(g));
  X.op(-1, -1).add(0, 0, ThetaSum(g));
  return X;
}

EllipticModule spectral_twist(const EllipticModule& X, cplx u) {
  EllipticModule out = X;
  for (auto& op : out.L) op = op.shifted_z(u * X.params.hbar);
  out.label = "Psi_" + fmt(u) + "(" + X.label + ")";
  return out;
}

double rll_residual(const EllipticModule& X, cplx z, cplx w, cplx x, int level) {
  if (level < 0 || level > X.basis.safe_level(2)) {
    throw RangeError("RLL check at level " + std::to_string(level) + " exceeds the truncation-safe band");
  }
  const EllipticParams& P = X.params;
  const cplx h = P.hbar;
  auto Lz = [&](int a, int b, cplx xx) { return X.op(a, b).eval(z, xx, P); };
  auto Lw = [&](int a, int b, cplx xx) { return X.op(a, b).eval(w, xx, P); };
  const std::vector<int> cols = X.basis.at_level(level);
  double worst = 0.0;
  for (int i : {1, -1}) {
    for (int j : {1, -1}) {
      for (int m : {1, -1}) {
        for (int n : {1, -1}) {
          Matrix lhs = Matrix::Zero(X.dim(), X.dim());
          Matrix rhs = Matrix::Zero(X.dim(), X.dim());
          for (int p : {1, -1}) {
            for (int q : {1, -1}) {
              const ThetaExpr rl = r_entry(p, q, m, n, P);
              if (!rl.is_zero()) {
                Matrix prod = Lz(p, i, x) * Lw(q, j, x + double(i) * h);
                for (int r = 0; r < X.dim(); ++r) prod.row(r) *= rl.eval(z - w, x + h * X.basis.weight(r), P);
                lhs += prod;
              }
              const ThetaExpr rr = r_entry(i, j, p, q, P);
              if (!rr.is_zero()) rhs += Lw(n, q, x) * Lz(m, p, x + double(q) * h) * rr.eval(z - w, x, P);
            }
          }
          for (int c : cols) {
            const double scale = std::max({1.0, lhs.col(c).norm(), rhs.col(c).norm()});
            worst = std::max(worst, (lhs.col(c) - rhs.col(c)).norm() / scale);
          }
        }
      }
    }
  }
  return worst;
}

GaussFactors gauss_decompose(const EllipticModule& X, cplx z) {
  const cplx h = X.params.hbar;
  GaussFactors g;
  g.Kminus = numeric(X.op(-1, -1), z, X.params);
  const NumOp kinv = inverse(g.Kminus, h);
  g.E = compose(kinv, numeric(X.op(-1, 1), z, X.params), h);
  g.F = compose(numeric(X.op(1, -1), z, X.params), kinv, h);
  g.Kplus = combine(numeric(X.op(1, 1), z, X.params), compose(g.F, numeric(X.op(-1, 1), z, X.params), h), -1.0);
  return g;
}

double gauss_reconstruction_residual(const EllipticModule& X, cplx z, cplx x, int max_level) {
  const cplx h = X.params.hbar;
  const GaussFactors g = gauss_decompose(X, z);
  const NumOp km_e = compose(g.Kminus, g.E, h);
  const NumOp f_km = compose(g.F, g.Kminus, h);
  const NumOp f_km_e = compose(f_km, g.E, h);
  const Matrix rebuilt[4] = {g.Kplus(x) + f_km_e(x), f_km(x), km_e(x), g.Kminus(x)};
  double worst = 0.0;
  double scale = 0.0;
  for (int s = 0; s < 4; ++s) {
    const int i = s < 2 ? 1 : -1;
    const int j = (s % 2 == 0) ? 1 : -1;
    const Matrix L = keep_columns(X.op(i, j).eval(z, x, X.params), X.basis, max_level);
    const Matrix R = keep_columns(rebuilt[s], X.basis, max_level);
    worst = std::max(worst, (L - R).cwiseAbs().maxCoeff());
    scale = std::max(scale, L.cwiseAbs().maxCoeff());
  }
  return worst / std::max(scale, 1e-300);
}

double gauss_scalar_law_residual(const EllipticModule& X, cplx z, cplx x, cplx scalar, int max_level) {
  const cplx h = X.params.hbar;
  const NumOp kp = gauss_decompose(X, z).Kplus;
  const NumOp km = numeric(X.op(-1, -1), z - h, X.params);
  const Matrix prod = keep_columns(compose(kp, km, h)(x), X.basis, max_level);
  const Matrix target = keep_columns(scalar * Matrix::Identity(X.dim(), X.dim()), X.basis, max_level);
  return (prod - target).cwiseAbs().maxCoeff() / std::max(std::abs(scalar), 1e-300);
}

bool degenerate_spin(cplx spin, const EllipticParams& params, long* l) {
  const auto ip = integer_part(spin, params);
  if (!ip || *ip < 0) return false;
  if (l) *l = *ip;
  return true;
}

SigmaSet sigma_set(cplx alpha, cplx beta, int depth, const EllipticParams& params) {
  SigmaSet s;
  long l = 0;
  if (degenerate_spin(alpha - beta, params, &l)) {
    for (long p = 0; p < l; ++p) s.values.push_back(beta + double(p));
    return s;
  }
  s.truncated = true;
  for (int p = 0; p < depth; ++p) s.values.push_back(beta + double(p));
  return s;
}

Cyclicity cyclicity_predicates(const HighestWeightData& data, int depth, const EllipticParams& params) {
  if (data.alphas.size() != data.betas.size()) throw ShapeError("alpha and beta lists differ in length");
  Cyclicity c;
  const std::size_t n = data.alphas.size();
  for (std::size_t i = 0; i < n; ++i) {
    const SigmaSet si = sigma_set(data.alphas[i], data.betas[i], depth, params);
    const SigmaSet sd = sigma_set(-data.betas[i], -data.alphas[i], depth, params);
    for (std::size_t j = i + 1; j < n; ++j) {
      for (cplx s : si.values) {
        if (in_scaled_lattice(data.alphas[j] - s, params)) c.cocyclic = false;
      }
      for (cplx s : sd.values) {
        if (in_scaled_lattice(data.betas[j] + s, params)) c.cyclic = false;
      }
    }
  }
  c.cyclic = c.cyclic && c.cocyclic;
  return c;
}

KernelCount highest_vector_count(const EllipticModule& X, const std::vector<cplx>& zs, cplx x) {
  if (zs.empty()) throw ParameterError("highest vector count needs spectral samples");
  const int J = X.basis.complete_level();
  std::vector<int> cols;
  std::vector<int> rows;
  for (int k = 0; k < X.dim(); ++k) {
    if (X.basis.level(k) <= J) cols.push_back(k);
    if (X.basis.level(k) <= J - 1) rows.push_back(k);
  }
  KernelCount out;
  if (rows.empty()) {
    out.count = int(cols.size());
    return out;
  }
  Matrix stacked(Eigen::Index(rows.size() * zs.size()), Eigen::Index(cols.size()));
  for (std::size_t s = 0; s < zs.size(); ++s) {
    const Matrix m = X.op(-1, 1).eval(zs[s], x, X.params);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) stacked(Eigen::Index(s * rows.size() + r), Eigen::Index(c)) = m(rows[r], cols[c]);
    }
  }
  for (Eigen::Index c = 0; c < stacked.cols(); ++c) {
    const double nrm = stacked.col(c).norm();
    if (nrm > 0.0) stacked.col(c) /= nrm;
  }
  Eigen::JacobiSVD<Matrix> svd(stacked);
  const auto& sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    const double rel = top > 0.0 ? sv(k) / top : 0.0;
    if (rel > 1e-8) ++rank;
    if (rel >= 1e-8 && rel <= 1e-6) out.indeterminate = true;
  }
  out.count = int(cols.size()) - rank;
  return out;
}

HighestWeightData rearrange(const HighestWeightData& data, const EllipticParams& params) {
  if (data.alphas.size() != data.betas.size()) throw ShapeError("alpha and beta lists differ in length");
  HighestWeightData out = data;
  std::vector<cplx> alphas = data.alphas;
  std::vector<cplx> betas = data.betas;
  out.alphas.clear();
  out.betas.clear();
  while (!alphas.empty()) {
    std::optional<long> best;
    std::size_t bp = 0;
    std::size_t bq = 0;
    for (std::size_t p = 0; p < alphas.size(); ++p) {
      for (std::size_t q = 0; q < betas.size(); ++q) {
        const auto ip = integer_part(alphas[p] - betas[q], params);
        if (ip && (!best || *ip < *best)) {
          best = ip;
          bp = p;
          bq = q;
        }
      }
    }
    if (!best) {
      out.alphas.insert(out.alphas.end(), alphas.begin(), alphas.end());
      out.betas.insert(out.betas.end(), betas.begin(), betas.end());
      break;
    }
    out.alphas.push_back(alphas[bp]);
    out.betas.push_back(betas[bq]);
    alphas.erase(alphas.begin() + long(bp));
    betas.erase(betas.begin() + long(bq));
  }
  return out;
}

bool is_finite_dimensional(const HighestWeightData& data, const EllipticParams& params) {
  const std::size_t n = data.alphas.size();
  if (data.betas.size() != n) throw ShapeError("alpha and beta lists differ in length");
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) ok[p][q] = degenerate_spin(data.alphas[p] - data.betas[q], params);
  }
  std::vector<int> match(n, -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t p, std::vector<bool>& seen) {
    for (std::size_t q = 0; q < n; ++q) {
      if (!ok[p][q] || seen[q]) continue;
      seen[q] = true;
      if (match[q] < 0 || augment(std::size_t(match[q]), seen)) {
        match[q] = int(p);
        return true;
      }
    }
    return false;
  };
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<bool> seen(n, false);
    if (!augment(p, seen)) return false;
  }
  return true;
}

SimpleModule construct_simple(const HighestWeightData& data, const ThetaExpr& aplus, int K,
                              const EllipticParams& params) {
  if (data.lambda == cplx(0.0)) throw ParameterError("lambda must be nonzero");
  SimpleModule out;
  out.data = rearrange(data, params);
  out.finite_dimensional = is_finite_dimensional(data, params);
  ThetaExpr g = aplus * std::pow(data.lambda, -0.5);
  for (cplx a : out.data.alphas) g *= th(1, 0, a * params.hbar, -1);
  EllipticModule M = one_dim_module(g.canonical(params), params);
  for (std::size_t k = 0; k < out.data.alphas.size(); ++k) {
    const cplx a = out.data.alphas[k];
    const cplx b = out.data.betas[k];
    long l = 0;
    EllipticModule factor = degenerate_spin(a - b, params, &l) ? build_asymptotic_socle(a - b, b - 1.0, int(l), params)
                                                               : build_asymptotic(a - b, b - 1.0, K, params);
    M = dynamical_tensor(M, factor);
  }
  out.module = std::move(M);
  return out;
}

}  // namespace ellq
