#include <gtest/gtest.h>

#include <numeric>

#include "ellq/transfer.hpp"

using namespace ellq;

namespace {

const EllipticParams P;
const std::vector<cplx> sites{cplx(0.21, 0.13), cplx(0.37, 0.41)};
const std::vector<cplx> xs{cplx(0.23, 0.17), cplx(0.41, 0.29)};
const cplx z0(0.17, 0.09), l(0.37, 0.21), u(0.53, -0.12);

const QuantumSpace& V() {
  static const QuantumSpace v(sites, P);
  return v;
}

EllipticModule aux(cplx spin, int order) { return build_asymptotic(spin, 0.0, auxiliary_truncation(V(), order) + 1, P); }

}  // namespace

TEST(QuantumSpace, Basis) {
  EXPECT_EQ(V().dim(), 2);
  const QuantumSpace v4({0.1, 0.2, 0.3, 0.4}, P);
  EXPECT_EQ(v4.dim(), 6);
  for (const auto& s : v4.strings()) EXPECT_EQ(std::accumulate(s.begin(), s.end(), 0), 0);
  EXPECT_THROW(QuantumSpace({0.1, 0.2, 0.3}, P), ParameterError);
  EXPECT_THROW(QuantumSpace({0.1, 1.0 + P.tau}, P), ParameterError);
  EXPECT_FALSE(V().homogeneous());
  EXPECT_TRUE(QuantumSpace({0.1, 0.1}, P).homogeneous());
}

TEST(Transfer, OneDimensionalModuleGivesScalar) {
  const ThetaExpr g = ThetaExpr::theta(1, 0, cplx(0.3, 0.1)) * ThetaExpr::theta(1, 0, cplx(-0.2, 0.35), -1);
  const DiffOpSeries t = transfer_matrix(one_dim_module(g, P), V(), z0, 0);
  const cplx want = g.eval(z0 + sites[0] - P.hbar, 0.0, P) * g.eval(z0 + sites[1] - P.hbar, 0.0, P);
  for (cplx x : xs) {
    const Matrix m = t.at(x)[0];
    EXPECT_LT((m - want * Matrix::Identity(2, 2)).norm(), 1e-12 * std::abs(want));
  }
}

TEST(Transfer, RejectsShallowTruncation) {
  EXPECT_THROW(transfer_matrix(build_asymptotic(l, 0.0, 3, P), V(), z0, 6).at(xs[0]), RangeError);
}

TEST(Transfer, LeadingCoefficientOfQAtZero) {
  EXPECT_LT(leading_coefficient_residual(V(), 0.0, xs, P), 1e-10);
  const Matrix q0 = q_operator(V(), 0.0, 0, P).at(xs[0])[0];
  const cplx want = theta_eval(sites[0], P) * theta_eval(sites[1], P);
  EXPECT_LT((q0 - want * Matrix::Identity(2, 2)).norm(), 1e-10 * std::abs(want));
}

TEST(Transfer, QAtZeroIsInvertible) {
  const DiffOpSeries q = q_operator(V(), 0.0, 6, P);
  EXPECT_LT(series_residual(series_compose(q, series_invert(q, 6), 6), DiffOpSeries::identity(2, 6, P.hbar), xs, 6),
            1e-9);
}

TEST(Transfer, TensorProductIsProduct) {
  EXPECT_LT(tensor_transfer_residual(aux(l, 6), aux(u, 6), V(), z0, 6, xs), 1e-8);
}

TEST(Transfer, SpectralShiftCovariance) {
  const EllipticModule W = aux(l, 6);
  EXPECT_LT(series_residual(transfer_matrix(spectral_twist(W, u), V(), z0, 6),
                            transfer_matrix(W, V(), z0 + u * P.hbar, 6), xs, 6),
            1e-12);
}

TEST(Transfer, InterchangeAndConventionLock) {
  EXPECT_LT(interchange_transfer_residual(l, 0.0, V(), z0, 6, xs, P), 1e-12);
  EXPECT_LT(interchange_transfer_residual(l, u, V(), z0, 6, xs, P), 1e-8);
  EXPECT_GT(interchange_transfer_residual(l, u, V(), z0, 6, xs, P, -1), 1e-2);
}

TEST(Transfer, Commutativity) {
  const cplx w(0.3, -0.2);
  EXPECT_LT(commutator_residual(aux(l, 6), z0, aux(u, 6), w, V(), 6, xs), 1e-8);
  EXPECT_LT(commutator_residual(build_vector_rep(P), z0, aux(u, 6), w, V(), 6, xs), 1e-8);
  EXPECT_LT(commutator_residual(build_vector_rep(P), z0, build_vector_rep(P), w, V(), 6, xs), 1e-8);
}

TEST(QOperator, QQRelation) {
  EXPECT_LT(qq_relation_residual(0.0, V(), z0, 6, xs, P), 1e-12);
  EXPECT_LT(qq_relation_residual(l, V(), z0, 6, xs, P), 1e-8);
  const QuantumSpace other({cplx(0.3, 0.1), cplx(0.25, 0.2)}, P);
  EXPECT_GT(qq_relation_residual(l, V(), z0, 6, xs, P, other), 1e-2);
}

TEST(QOperator, TQRelation) {
  EXPECT_LT(tq_residual(0, V(), z0, 6, xs, P), 1e-8);
  EXPECT_LT(tq_residual(1, V(), z0, 6, xs, P), 1e-8);
  EXPECT_LT(tq_residual(2, V(), z0, 4, xs, P), 1e-7);
  EXPECT_GT(tq_residual(1, V(), z0, 6, xs, P, 1), 1e-2);
}

TEST(QOperator, LengthFour) {
  const QuantumSpace v4({cplx(0.21, 0.13), cplx(0.37, 0.41), cplx(0.11, 0.3), cplx(0.6, 0.2)}, P);
  EXPECT_LT(qq_relation_residual(l, v4, z0, 3, xs, P), 1e-8);
  EXPECT_LT(tq_residual(1, v4, z0, 3, xs, P), 1e-8);
}

TEST(QOperator, Periodicity) {
  const QuantumSpace h({sites[0], sites[0]}, P);
  const PeriodicityResidual r = periodicity_residual(h, z0, 6, xs, P);
  EXPECT_LT(r.one, 1e-7);
  EXPECT_LT(r.tau, 1e-7);
  EXPECT_THROW(periodicity_residual(V(), z0, 6, xs, P), ParameterError);
}

TEST(QOperator, ClosedFormLengthTwoEntries) {
  const DiffOpSeries q = q_operator(V(), z0, 6, P);
  for (cplx x : xs) {
    for (int k = 0; k <= 6; ++k) {
      const Matrix want = l2_q_tilde_coefficient(z0, x, sites[0], sites[1], k, P);
      EXPECT_LT((q.at(x)[k] - want).norm(), 1e-9 * want.norm()) << k;
    }
  }
}
