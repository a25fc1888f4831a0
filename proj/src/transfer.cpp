#include "ellq/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ellq {

namespace {

void balanced_strings(int L, std::vector<int>& cur, int plus, std::vector<std::vector<int>>& out) {
  const int placed = int(cur.size());
  if (placed == L) {
    if (2 * plus == L) out.push_back(cur);
    return;
  }
  for (int s : {1, -1}) {
    const int np = plus + (s > 0 ? 1 : 0);
    const int nm = placed + 1 - np;
    if (2 * np > L || 2 * nm > L) continue;
    cur.push_back(s);
    balanced_strings(L, cur, np, out);
    cur.pop_back();
  }
}

double coefficient_residual(const std::vector<Matrix>& a, const std::vector<Matrix>& b, int order) {
  double scale = 0.0;
  for (int k = 0; k <= order; ++k) scale = std::max({scale, a[k].norm(), b[k].norm()});
  scale = std::max(scale, 1e-300);
  double worst = 0.0;
  for (int k = 0; k <= order; ++k) worst = std::max(worst, (a[k] - b[k]).norm() / scale);
  return worst;
}

cplx site_product(const QuantumSpace& V, cplx shift, const EllipticParams& params) {
  cplx p = 1.0;
  for (cplx a : V.sites()) p *= theta_eval(a + shift, params);
  return p;
}

}  // namespace

QuantumSpace::QuantumSpace(std::vector<cplx> sites, const EllipticParams& params) : sites_(std::move(sites)) {
  const int L = int(sites_.size());
  if (L == 0 || L % 2 != 0) throw ParameterError("quantum space length must be even and positive");
  for (cplx a : sites_) {
    if (lattice_distance(a, params) < params.lattice_tol) throw ParameterError("site lies on the period lattice");
  }
  std::vector<int> cur;
  balanced_strings(L, cur, 0, strings_);
}

bool QuantumSpace::homogeneous() const {
  return std::all_of(sites_.begin(), sites_.end(), [&](cplx a) { return a == sites_.front(); });
}

DiffOpSeries transfer_matrix(const EllipticModule& X, const QuantumSpace& V, cplx z, int order) {
  const int L = V.length();
  if (order < 0) throw RangeError("negative transfer order");
  const int safe = X.basis.safe_level(L / 2);
  if (safe < X.basis.max_level() && order > safe) {
    throw RangeError("transfer order " + std::to_string(order) + " exceeds the truncation-safe band of " + X.label);
  }
  const cplx h = X.params.hbar;
  const int top_level = std::min(order, X.basis.max_level());
  return DiffOpSeries(X.basis.top_weight(), order, V.dim(), h, [X, V, z, order, top_level, L, h](cplx x) {
    // L_{ij}(z + a_l - hbar; x + s hbar) for |s| <= L, evaluated lazily.
    std::map<std::tuple<int, int, int, int>, Matrix> cache;
    auto entry = [&](int l, int i, int j, int s) -> const Matrix& {
      const auto key = std::make_tuple(l, i, j, s);
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, X.op(i, j).eval(z + V.sites()[l] - h, x + double(s) * h, X.params)).first;
      }
      return it->second;
    };
    std::vector<Matrix> coeffs(order + 1, Matrix::Zero(V.dim(), V.dim()));
    const auto& strings = V.strings();
    for (int r = 0; r < V.dim(); ++r) {
      for (int c = 0; c < V.dim(); ++c) {
        Matrix prod = Matrix::Identity(X.dim(), X.dim());
        int shift = 0;
        for (int l = 0; l < L; ++l) {
          const int i = strings[r][l];
          const int j = strings[c][l];
          prod = prod * entry(l, i, j, shift);
          shift += j;
        }
        for (int k = 0; k <= top_level; ++k) {
          cplx tr = 0.0;
          for (int b : X.basis.at_level(k)) tr += prod(b, b);
          coeffs[k](r, c) = tr;
        }
      }
    }
    return coeffs;
  });
}

int auxiliary_truncation(const QuantumSpace& V, int order) { return order + V.length() / 2 + 1; }

DiffOpSeries q_operator(const QuantumSpace& V, cplx z, int order, const EllipticParams& params) {
  const EllipticModule W = build_asymptotic(z / params.hbar, 0.0, auxiliary_truncation(V, order), params);
  return transfer_matrix(W, V, 0.0, order);
}

Matrix l2_q_tilde_coefficient(cplx z, cplx x, cplx a1, cplx a2, int k, const EllipticParams& params) {
  auto t = [&](cplx v) { return theta_eval(v, params); };
  const cplx h = params.hbar;
  const double j = double(k);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = t(z + a1 - j * h) * t(z + x + (1.0 - j) * h) * t(x - j * h) / (t(x) * t(z + x + (1.0 - 2.0 * j) * h)) *
            t(a2 + j * h);
  if (k >= 1) {
    m(0, 1) = -t(z + a1 + x - j * h) * t(z - (j - 1.0) * h) / t(z + x + (1.0 - 2.0 * j) * h) * t(a2 - x + j * h) *
              t(j * h) / t(x - h);
  }
  m(1, 0) = -t(a1 - x + j * h) * t((j + 1.0) * h) / t(x) * t(z + a2 + x - j * h) * t(z - j * h) / t(z + x - 2.0 * j * h);
  m(1, 1) = t(a1 + j * h) * t(z + a2 - j * h) * t(z + x - j * h) * t(x - (j + 1.0) * h) / (t(x - h) * t(z + x - 2.0 * j * h));
  return m;
}

double tensor_transfer_residual(const EllipticModule& X, const EllipticModule& Y, const QuantumSpace& V, cplx z,
                                int order, const std::vector<cplx>& xs) {
  const DiffOpSeries lhs = series_compose(transfer_matrix(X, V, z, order), transfer_matrix(Y, V, z, order), order);
  const DiffOpSeries rhs = transfer_matrix(dynamical_tensor(X, Y), V, z, order);
  return series_residual(lhs, rhs, xs, order);
}

double interchange_transfer_residual(cplx spin, cplx shift, const QuantumSpace& V, cplx z, int order,
                                     const std::vector<cplx>& xs, const EllipticParams& params, int shift_sign) {
  const int K = auxiliary_truncation(V, order);
  const cplx uh = shift * params.hbar;
  auto t = [&](cplx l, cplx at) { return transfer_matrix(build_asymptotic(l, 0.0, K, params), V, at, order); };
  const DiffOpSeries lhs = series_compose(t(spin, z), t(0.0, z + uh), order, shift_sign);
  const DiffOpSeries rhs = series_compose(t(spin - shift, z + uh), t(shift, z), order, shift_sign);
  return series_residual(lhs, rhs, xs, order);
}

double commutator_residual(const EllipticModule& X, cplx z, const EllipticModule& Y, cplx w, const QuantumSpace& V,
                           int order, const std::vector<cplx>& xs) {
  const DiffOpSeries tx = transfer_matrix(X, V, z, order);
  const DiffOpSeries ty = transfer_matrix(Y, V, w, order);
  return series_residual(series_compose(tx, ty, order), series_compose(ty, tx, order), xs, order);
}

double qq_relation_residual(cplx spin, const QuantumSpace& V, cplx z, int order, const std::vector<cplx>& xs,
                            const EllipticParams& params, const std::optional<QuantumSpace>& other) {
  const int K = auxiliary_truncation(V, order);
  const QuantumSpace& R = other ? *other : V;
  if (R.dim() != V.dim()) throw ShapeError("quantum spaces of different size");
  const DiffOpSeries lhs = series_compose(q_operator(V, z + spin * params.hbar, order, params),
                                          transfer_matrix(build_asymptotic(0.0, 0.0, K, params), V, z, order), order);
  const DiffOpSeries rhs = series_compose(transfer_matrix(build_asymptotic(spin, 0.0, K, params), R, z, order),
                                          q_operator(R, z, order, params), order);
  return series_residual(lhs, rhs, xs, order);
}

double tq_residual(int n, const QuantumSpace& V, cplx z, int order, const std::vector<cplx>& xs,
                   const EllipticParams& params, std::optional<int> drop_term) {
  if (n < 0) throw ParameterError("TQ relation needs n >= 0");
  const cplx h = params.hbar;
  std::map<int, DiffOpSeries> q;
  auto Q = [&](int s) -> const DiffOpSeries& {
    auto it = q.find(s);
    if (it == q.end()) it = q.emplace(s, q_operator(V, z + double(s) * h, order, params)).first;
    return it->second;
  };
  const DiffOpSeries numerator = series_compose(Q(n), Q(-1), order);
  std::optional<DiffOpSeries> sum;
  for (int j = 0; j <= n; ++j) {
    if (drop_term && *drop_term == j) continue;
    const DiffOpSeries denominator = series_invert(series_compose(Q(j), Q(j - 1), order), order);
    const DiffOpSeries term = series_compose(numerator, denominator, order).scaled(site_product(V, z + double(j) * h, params));
    sum = sum ? series_add(*sum, term) : term;
  }
  const DiffOpSeries lhs = transfer_matrix(socle(n, params), V, z, order);
  if (!sum) throw ParameterError("TQ relation with every summand dropped");
  return series_residual(lhs, *sum, xs, order);
}

PeriodicityResidual periodicity_residual(const QuantumSpace& V, cplx z, int order, const std::vector<cplx>& xs,
                                         const EllipticParams& params) {
  if (!V.homogeneous()) throw ParameterError("periodicity check needs equal sites");
  const int n = V.length() / 2;
  const cplx a = V.sites().front();
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const DiffOpSeries q0 = q_operator(V, z, order, params);
  const DiffOpSeries q1 = q_operator(V, z + 1.0, order, params);
  const DiffOpSeries qt = q_operator(V, z + params.tau, order, params);
  const cplx factor = sign * std::exp(-double(n) * kPi * kI * (params.tau + 2.0 * z + 2.0 * a));
  PeriodicityResidual out;
  for (cplx x : xs) {
    std::vector<Matrix> base = q0.at(x);
    std::vector<Matrix> want_one = base;
    std::vector<Matrix> want_tau = base;
    for (auto& m : want_one) m *= sign;
    for (auto& m : want_tau) m *= factor;
    out.one = std::max(out.one, coefficient_residual(q1.at(x), want_one, order));
    out.tau = std::max(out.tau, coefficient_residual(qt.at(x), want_tau, order));
  }
  return out;
}

double leading_coefficient_residual(const QuantumSpace& V, cplx z, const std::vector<cplx>& xs,
                                    const EllipticParams& params) {
  const DiffOpSeries t = transfer_matrix(build_asymptotic(0.0, 0.0, auxiliary_truncation(V, 0), params), V, z, 0);
  const cplx want = site_product(V, z, params);
  double worst = 0.0;
  for (cplx x : xs) {
    const Matrix diff = t.at(x)[0] - want * Matrix::Identity(V.dim(), V.dim());
    worst = std::max(worst, diff.cwiseAbs().maxCoeff() / std::abs(want));
  }
  return worst;
}

}  // namespace ellq
