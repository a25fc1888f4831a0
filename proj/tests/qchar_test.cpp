#include <gtest/gtest.h>

#include "ellq/qchar.hpp"

using namespace ellq;

namespace {

const EllipticParams P;
const cplx l(0.37, 0.21), u(0.53, -0.12);
const std::vector<cplx> xs{cplx(0.23, 0.17), cplx(0.41, 0.29)};

ThetaExpr th_z(cplx shift) { return ThetaExpr::theta(1, 0, shift); }

const QCharGrid& grid() {
  static const QCharGrid g = QCharGrid::generic(P, 11);
  return g;
}

}  // namespace

TEST(QChar, UnitIsNeutralAndProductCommutes) {
  ThetaQChar unit(0.0, 8);
  unit.add(0, ThetaMonomial{ThetaExpr::constant(1.0), ThetaExpr::constant(1.0)});
  const ThetaQChar a = qchar_asymptotic(l, 0.0, 6, P);
  const ThetaQChar b = qchar_asymptotic(u, 0.2, 6, P);
  EXPECT_TRUE(compare(unit * a, a, P, grid()).equal);
  EXPECT_TRUE(compare(a * b, b * a, P, grid()).equal);
  const ThetaQChar c = qchar_asymptotic(0.7, -0.1, 6, P);
  EXPECT_TRUE(compare((a * b) * c, a * (b * c), P, grid()).equal);
}

TEST(QChar, AsymptoticLeadingTerms) {
  const cplx h = P.hbar;
  const ThetaQChar q = qchar_asymptotic(l, 0.0, 4, P);
  const auto top = q.at_level(0);
  ASSERT_EQ(top.size(), 1u);
  ThetaQChar want(l, 0);
  want.add(0, ThetaMonomial{th_z((l + 1.0) * h), th_z(h)});
  EXPECT_TRUE(compare(q, want, P, grid(), 1e-9, 0).equal);

  const ThetaQChar q0 = qchar_asymptotic(0.0, 0.0, 0, P);
  ThetaQChar want0(0.0, 0);
  want0.add(0, ThetaMonomial{th_z(h), th_z(h)});
  EXPECT_TRUE(compare(q0, want0, P, grid()).equal);
}

TEST(QChar, FactorizesAsHeadTimesSpinZero) {
  const cplx h = P.hbar;
  ThetaQChar head(l, 8);
  head.add(0, ThetaMonomial{th_z((l + 1.0) * h), th_z(h)});
  const ThetaQChar rhs = head * qchar_asymptotic(0.0, 0.0, 8, P);
  // The top term of qc(W^0) is [theta(z+h), theta(z+h)]; divide it out.
  ThetaQChar unit_inv(0.0, 8);
  unit_inv.add(0, inverse(ThetaMonomial{th_z(h), th_z(h)}));
  EXPECT_TRUE(compare(rhs * unit_inv, qchar_asymptotic(l, 0.0, 8, P), P, grid()).equal);
}

TEST(QChar, ExtractedFromModules) {
  const ThetaQChar ql = qchar_asymptotic(l, 0.3, 8, P);
  const SampledQChar got = qchar_of_module(build_asymptotic(l, 0.3, 10, P), grid(), 8, xs);
  EXPECT_TRUE(compare(got, sample(ql, grid(), P)).equal);
  for (int m = 0; m <= 3; ++m) {
    const auto c = compare(qchar_of_module(socle(m, P), grid(), 8, xs), sample(qchar_socle(m, 8, P), grid(), P));
    EXPECT_TRUE(c.equal) << m;
    EXPECT_EQ(c.compared, 2 * (m + 1));
  }
  const ThetaExpr g = th_z(cplx(0.3, 0.1)) * th_z(cplx(0.2, 0.5));
  EXPECT_TRUE(compare(qchar_of_module(one_dim_module(g, P), grid(), 4, xs), sample(qchar_one_dim(g, 4, P), grid(), P)).equal);
}

TEST(QChar, WrongSpinDoesNotMatch) {
  const SampledQChar got = qchar_of_module(build_asymptotic(l, 0.0, 8, P), grid(), 6, xs);
  EXPECT_FALSE(compare(got, sample(qchar_asymptotic(l + 0.01, 0.0, 6, P), grid(), P)).equal);
}

TEST(QChar, Multiplicativity) {
  const EllipticModule A = build_asymptotic(l, 0.0, 9, P), B = build_asymptotic(u, 0.0, 9, P);
  const auto c = compare(qchar_of_module(dynamical_tensor(A, B), grid(), 8, xs),
                         qchar_of_module(A, grid(), 8, xs) * qchar_of_module(B, grid(), 8, xs));
  EXPECT_TRUE(c.equal);
  EXPECT_LT(c.deviation, 1e-9);
}

TEST(QChar, Interchange) {
  const auto same = interchange_check(l, 0.0, 8, P, grid());
  EXPECT_TRUE(same.equal);
  const auto c = interchange_check(l, u, 8, P, grid());
  EXPECT_TRUE(c.equal);
  EXPECT_LT(c.deviation, 1e-9);
  EXPECT_FALSE(interchange_check(l, u, 8, P, grid(), 0.01).equal);
}

TEST(QChar, GeneralizedBaxter) {
  for (int m = 0; m <= 3; ++m) EXPECT_TRUE(generalized_baxter(m, 6, P, grid()).equal) << m;
}

TEST(QChar, XDependentDiagonalIsCategoryViolation) {
  EllipticModule W = build_asymptotic(l, 0.0, 6, P);
  ModuleOperator bad(W.op(-1, -1).alpha(), W.op(-1, -1).beta(), W.dim(), W.dim());
  for (int j = 0; j < W.dim(); ++j) bad.add(j, j, ThetaExpr::theta(1, 1, double(j + 1) * P.hbar));
  W.op(-1, -1) = bad;
  EXPECT_THROW(qchar_of_module(W, grid(), 4, xs), CategoryError);
}

TEST(Classify, HighestWeights) {
  const cplx h = P.hbar;
  const auto c = classify_highest_weight(ThetaMonomial{th_z(l * h), th_z(u * h)}, l - u, P);
  ASSERT_TRUE(c.data.has_value()) << c.reason;
  ASSERT_EQ(c.data->alphas.size(), 1u);
  EXPECT_LT(std::abs(c.data->alphas[0] - l), 1e-9);
  EXPECT_LT(std::abs(c.data->betas[0] - u), 1e-9);

  const ThetaExpr g = 2.0 * th_z(cplx(0.3, 0.1));
  const auto d = classify_highest_weight(ThetaMonomial{g, g}, 0.0, P);
  ASSERT_TRUE(d.data.has_value()) << d.reason;
  EXPECT_TRUE(d.data->alphas.empty());

  const auto stray =
      classify_highest_weight(ThetaMonomial{th_z(l * h) * ThetaExpr::exponential(1.0, 0.0), th_z(u * h)}, l - u, P);
  EXPECT_FALSE(stray.data.has_value());
  EXPECT_FALSE(stray.reason.empty());
}

TEST(Classify, SimpleModuleLeadingTerm) {
  const cplx h = P.hbar;
  const cplx a1(0.8, 0.1), b1(0.2, 0.3), a2(1.1, -0.2), b2(-0.3, 0.25);
  HighestWeightData data{1.0, {a1, a2}, {b1, b2}, a1 + a2 - b1 - b2};
  const ThetaExpr aplus = th_z(a1 * h) * th_z(a2 * h);
  const SimpleModule S = construct_simple(data, aplus, 6, P);
  const SampledQChar q = qchar_of_module(S.module, grid(), 0, xs);
  ThetaQChar want(data.weight, 0);
  want.add(0, ThetaMonomial{aplus, th_z(b1 * h) * th_z(b2 * h)});
  EXPECT_TRUE(compare(q, sample(want, grid(), P)).equal);
}
