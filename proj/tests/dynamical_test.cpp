#include <gtest/gtest.h>

#include "ellq/modules.hpp"

using namespace ellq;

namespace {

const EllipticParams P;
const cplx z0(0.17, 0.09);
const cplx x0(0.23, 0.17);

ModuleOperator identity_op(int n) {
  ModuleOperator id(0.0, 0.0, n, n);
  for (int k = 0; k < n; ++k) id.add(k, k, ThetaExpr::constant(1.0));
  return id;
}

// A series with one term p^a T_a M(x); M built from theta values so it is x-dependent.
DiffOpSeries single_term(cplx a, cplx c0) {
  return DiffOpSeries(a, 0, 2, P.hbar, [=](cplx x) {
    Matrix m(2, 2);
    m << theta_eval(x + c0, P), 0.3, theta_eval(x - c0 + 0.1, P), 1.0 + theta_eval(x + 0.2, P);
    return std::vector<Matrix>{m};
  });
}

DiffOpSeries random_series(std::uint64_t seed, cplx a, int order) {
  return DiffOpSeries(a, order, 2, P.hbar, [=](cplx x) {
    std::vector<Matrix> out;
    for (int k = 0; k <= order; ++k) {
      Matrix m(2, 2);
      const double s = double(seed) * 0.1 + k * 0.07;
      m << 1.0 + theta_eval(x + s, P), theta_eval(x - s, P), 0.2 * double(k), 2.0 + theta_eval(x + 2.0 * s, P);
      out.push_back(m);
    }
    return out;
  });
}

}  // namespace

TEST(ComposeModuleOps, IdentityIsNeutral) {
  const EllipticModule W = build_asymptotic(cplx(0.37, 0.21), 0.0, 6, P);
  const ModuleOperator& psi = W.op(-1, 1);
  const ModuleOperator c = compose_module_ops(identity_op(W.dim()), psi, P);
  EXPECT_EQ(c.alpha(), psi.alpha());
  EXPECT_EQ(c.beta(), psi.beta());
  EXPECT_LT((c.eval(z0, x0, P) - psi.eval(z0, x0, P)).norm(), 1e-13);
}

TEST(ComposeModuleOps, MatchesSequentialApplication) {
  const EllipticModule W = build_asymptotic(cplx(0.37, 0.21), 0.0, 6, P);
  for (auto [i1, j1, i2, j2] : {std::array{-1, 1, 1, -1}, std::array{1, -1, -1, 1}, std::array{1, 1, -1, -1}}) {
    const ModuleOperator& phi = W.op(i1, j1);
    const ModuleOperator& psi = W.op(i2, j2);
    const ModuleOperator c = compose_module_ops(phi, psi, P);
    EXPECT_EQ(c.alpha(), phi.alpha() + psi.alpha());
    EXPECT_EQ(c.beta(), phi.beta() + psi.beta());
    // Phi(Psi v)(x) = M_Phi(x) M_Psi(x + beta_Phi hbar) v(x + (beta_Phi + beta_Psi) hbar).
    const Matrix want = phi.eval(z0, x0, P) * psi.eval(z0, x0 + phi.beta() * P.hbar, P);
    EXPECT_LT((c.eval(z0, x0, P) - want).norm(), 1e-12 * (1 + want.norm()));
  }
}

TEST(ComposeModuleOps, ShapeMismatchThrows) {
  EXPECT_THROW(compose_module_ops(identity_op(2), identity_op(3), P), ShapeError);
}

TEST(DynamicalTensor, TrivialModuleIsUnit) {
  const EllipticModule one = one_dim_module(ThetaExpr::constant(1.0), P);
  const EllipticModule W = build_asymptotic(cplx(0.37, 0.21), 0.0, 5, P);
  const EllipticModule T = dynamical_tensor(one, W);
  ASSERT_EQ(T.dim(), W.dim());
  for (int i : {1, -1}) {
    for (int j : {1, -1}) {
      EXPECT_LT((T.op(i, j).eval(z0, x0, P) - W.op(i, j).eval(z0, x0, P)).norm(), 1e-12) << i << j;
    }
  }
}

TEST(DynamicalTensor, LowestEntryOnTopVector) {
  const EllipticModule T = dynamical_tensor(build_asymptotic(cplx(0.37, 0.21), 0.0, 4, P), build_asymptotic(0.0, 0.0, 4, P));
  const Matrix m = T.op(-1, -1).eval(z0, x0, P);
  const cplx want = theta_eval(z0 + P.hbar, P) * theta_eval(z0 + P.hbar, P);
  EXPECT_LT(std::abs(m(0, 0) - want), 1e-12 * std::abs(want));
}

TEST(DiffOpSeries, ComposeWithIdentity) {
  const DiffOpSeries s = random_series(1, cplx(0.4, 0.1), 3);
  const DiffOpSeries id = DiffOpSeries::identity(2, 3, P.hbar);
  EXPECT_LT(series_residual(series_compose(s, id, 3), s, {x0}, 3), 1e-14);
  EXPECT_LT(series_residual(series_compose(id, s, 3), s, {x0}, 3), 1e-14);
}

TEST(DiffOpSeries, SingleTermProductUsesShiftedLeftFactor) {
  const cplx a(0.4, 0.1), b(-0.7, 0.2);
  const DiffOpSeries A = single_term(a, 0.13), B = single_term(b, 0.29);
  const DiffOpSeries C = series_compose(A, B, 0);
  EXPECT_EQ(C.alpha0(), a + b);
  const Matrix want = A.at(x0 + b * P.hbar)[0] * B.at(x0)[0];
  EXPECT_LT((C.at(x0)[0] - want).norm(), 1e-13 * want.norm());
}

TEST(DiffOpSeries, Associativity) {
  const DiffOpSeries a = random_series(1, 0.3, 4), b = random_series(2, cplx(0.1, 0.2), 4),
                     c = random_series(3, -0.5, 4);
  const DiffOpSeries l = series_compose(series_compose(a, b, 4), c, 4);
  const DiffOpSeries r = series_compose(a, series_compose(b, c, 4), 4);
  EXPECT_LT(series_residual(l, r, {x0, cplx(0.41, 0.29)}, 4), 1e-10);
}

TEST(DiffOpSeries, InverseOfSingleTerm) {
  const cplx a(0.4, 0.1);
  const DiffOpSeries A = single_term(a, 0.13);
  const DiffOpSeries N = series_invert(A, 0);
  EXPECT_EQ(N.alpha0(), -a);
  const Matrix want = A.at(x0 - a * P.hbar)[0].inverse();
  EXPECT_LT((N.at(x0)[0] - want).norm(), 1e-12 * want.norm());
}

TEST(DiffOpSeries, InverseIsTwoSided) {
  const DiffOpSeries s = random_series(4, cplx(0.2, -0.3), 5);
  const DiffOpSeries id = DiffOpSeries::identity(2, 5, P.hbar);
  const DiffOpSeries n = series_invert(s, 5);
  EXPECT_LT(series_residual(series_compose(s, n, 5), id, {x0}, 5), 1e-9);
  EXPECT_LT(series_residual(series_compose(n, s, 5), id, {x0}, 5), 1e-9);
  const DiffOpSeries idi = series_invert(id, 5);
  EXPECT_LT(series_residual(idi, id, {x0}, 5), 1e-15);
}

TEST(DiffOpSeries, SingularLeadingTermThrows) {
  const DiffOpSeries z(0.0, 0, 2, P.hbar, [](cplx) { return std::vector<Matrix>{Matrix::Zero(2, 2)}; });
  EXPECT_THROW(series_invert(z, 0).at(x0), SingularityError);
}

TEST(DiffOpSeries, MixedCosetsRejected) {
  const DiffOpSeries a = random_series(1, 0.0, 2), b = random_series(2, 0.5, 2);
  EXPECT_THROW(series_add(a, b).at(x0), GradingError);
  EXPECT_NO_THROW(series_add(a, random_series(2, -2.0, 2)).at(x0));
}
