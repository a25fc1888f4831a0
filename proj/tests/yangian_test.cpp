#include <gtest/gtest.h>

#include <random>

#include "ellq/yangian.hpp"

using namespace ellq;
using namespace ellq::yangian;

namespace {

const Poly z = Poly::var(Z);

Rational R(long n, long d = 1) { return Rational(n) / Rational(d); }

// Dense matrix of an operator on a basis of size n.
std::vector<std::vector<Poly>> dense(const SparseOp& op, int n) {
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (const auto& [rc, v] : op) {
    if (rc.first < n && rc.second < n) m[rc.first][rc.second] = v;
  }
  return m;
}

PSeriesMatrix scalar_series(const std::vector<Rational>& c) {
  PSeriesMatrix s;
  for (const Rational& x : c) {
    PolyMatrix m(1, 1);
    m(0, 0) = Poly(x);
    s.coeff.push_back(m);
  }
  return s;
}

}  // namespace

TEST(Rationals, Parse) {
  EXPECT_EQ(parse_rational("3"), R(3));
  EXPECT_EQ(parse_rational("-2/5"), R(-2, 5));
  EXPECT_EQ(parse_rational("0.25"), R(1, 4));
  EXPECT_EQ(to_string(R(-2, 5)), "-2/5");
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Poly, Arithmetic) {
  const Poly w = Poly::var(W), l = Poly::var(ELL);
  const Poly sq = (z + w) * (z + w);
  EXPECT_EQ(sq, z * z + Poly(2) * z * w + w * w);
  EXPECT_EQ(sq.degree(Z), 2);
  EXPECT_EQ(Poly().degree(Z), -1);
  EXPECT_EQ(sq.coefficient(Z, 1), Poly(2) * w);
  EXPECT_EQ(sq.substitute(W, -z), Poly());
  EXPECT_EQ((z * l + Poly(R(1, 3))).eval({R(2), R(0), R(3)}), R(19, 3));
  EXPECT_EQ(Poly(R(-7, 2)).constant_value(), R(-7, 2));
  EXPECT_THROW(z.constant_value(), ShapeError);
  EXPECT_EQ((Poly(3) * z - Poly(5)).max_abs(), R(5));
}

TEST(RMatrix, EntriesAndUnitarity) {
  for (const Rational& u : {R(1, 3), R(-2, 7), R(5), R(0)}) {
    const auto r = yangian_r(u), rm = yangian_r(-u);
    EXPECT_EQ(r[0][0], 1);
    EXPECT_EQ(r[3][3], 1);
    // (u + 1) R(u) = u + P.
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const Rational perm = ((i == 1 && j == 2) || (i == 2 && j == 1) || (i == j && (i == 0 || i == 3))) ? 1 : 0;
        EXPECT_EQ((u + 1) * r[i][j], (i == j ? u : Rational(0)) + perm) << i << j;
        if (u == -1 || u == 1) continue;
        Rational prod = 0;
        for (int k = 0; k < 4; ++k) prod += r[i][k] * rm[k][j];
        EXPECT_EQ(prod, i == j ? 1 : 0);
      }
    }
    const PolyMatrix c = yangian_r_cleared(z);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) EXPECT_EQ(c(i, j).eval({u, 0, 0}), (u + 1) * r[i][j]);
    }
  }
  EXPECT_THROW(yangian_r(R(-1)), PoleError);
}

TEST(RMatrix, LargeArgumentApproachesIdentity) {
  const auto r = yangian_r(R(1000000));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_LT(abs(r[i][j] - (i == j ? 1 : 0)), R(1, 100000));
  }
}

TEST(RMatrix, YangBaxter) {
  EXPECT_EQ(qybe_symbolic_residual(), 0);
  for (const auto& [u, v] : {std::pair{R(1, 3), R(-2, 7)}, std::pair{R(4), R(1, 9)}, std::pair{R(-5, 3), R(2)}}) {
    EXPECT_EQ(qybe_residual(u, v), 0);
  }
}

TEST(Modules, RTT) {
  for (int m = 0; m <= 4; ++m) EXPECT_EQ(rtt_residual(finite_module(m, R(1, 2))), 0) << m;
  EXPECT_EQ(rtt_residual(asymptotic_module(Poly::var(ELL), R(1, 3), 8)), 0);
  EXPECT_EQ(rtt_residual(asymptotic_module(Poly(R(-3, 4)), 0, 6)), 0);
  EXPECT_EQ(rtt_residual(fock_module(R(2), 8)), 0);
  EXPECT_EQ(rtt_residual(tensor(finite_module(1), fock_module(0, 6))), 0);
  EXPECT_EQ(rtt_residual(tensor(finite_module(2), finite_module(1, R(1, 5)))), 0);
  EXPECT_GT(rtt_residual(flip_t12(finite_module(2))), 0);
  EXPECT_GT(rtt_residual(flip_t12(fock_module(0, 6))), 0);
}

TEST(Modules, IntegralSpinQuotientIsFinite) {
  for (int m = 0; m <= 3; ++m) {
    const YangianModule V = finite_module(m, R(1, 3)), Wm = asymptotic_module(Poly(m), R(1, 3), m + 4);
    for (int i : {1, 2}) {
      for (int j : {1, 2}) {
        EXPECT_EQ(dense(V.t(i, j, z), m + 1), dense(Wm.t(i, j, z), m + 1)) << m << i << j;
      }
    }
    // Levels above m form a submodule: t12 stops at level m, t21 still reaches down from m + 1.
    const SparseOp up = Wm.t(2, 1, z);
    EXPECT_EQ(up.count({m, m + 1}), std::size_t(1));
    const SparseOp down = Wm.t(1, 2, z);
    EXPECT_EQ(down.count({m + 1, m}), std::size_t(0));
  }
}

TEST(Modules, TensorWeightsAndShape) {
  const YangianModule T = tensor(finite_module(1), finite_module(2));
  EXPECT_EQ(T.dim(), 6);
  EXPECT_TRUE(T.finite());
  const YangianModule U = tensor(finite_module(1), asymptotic_module(Poly(1), 0, 5));
  EXPECT_EQ(U.truncation, 5);
  EXPECT_EQ(U.safe_level(1), 3);
}

TEST(ChainBasis, Layout) {
  const ChainBasis b(2);
  ASSERT_EQ(b.strings.size(), 4u);
  EXPECT_EQ(b.strings[0], (std::vector<int>{1, 1}));
  EXPECT_EQ(b.strings[3], (std::vector<int>{2, 2}));
  EXPECT_EQ(b.index({2, 1}), 2);
  EXPECT_EQ(b.sector(1), (std::vector<int>{1, 2}));
  EXPECT_EQ(b.sector(2), (std::vector<int>{0}));
}

TEST(Transfer, OneSiteByHand) {
  const Rational a = R(1, 2);
  const PSeriesMatrix t = yangian_transfer(finite_module(1), {a}, 3);
  ASSERT_EQ(t.order(), 3);
  const Poly s = z + Poly(a);
  EXPECT_EQ(t.coeff[0](0, 0), s + Poly(1));
  EXPECT_EQ(t.coeff[1](0, 0), s);
  EXPECT_EQ(t.coeff[0](1, 1), s);
  EXPECT_EQ(t.coeff[1](1, 1), s + Poly(1));
  EXPECT_TRUE(t.coeff[0](0, 1).is_zero());
  EXPECT_TRUE(t.coeff[2].is_zero());
  EXPECT_TRUE(t.coeff[3].is_zero());

  const PSeriesMatrix q = yangian_q({a}, 5);
  const PSeriesMatrix f = yangian_transfer(fock_module(0, yangian_truncation(1, 5)), {a}, 5);
  for (int k = 0; k <= 5; ++k) {
    EXPECT_EQ(q.coeff[k](0, 0), Poly(a) + z - Poly(k)) << k;
    EXPECT_EQ(q.coeff[k](1, 1), Poly(a + k)) << k;
    EXPECT_EQ(f.coeff[k](0, 0), s - Poly(k)) << k;
    EXPECT_EQ(f.coeff[k](1, 1), Poly(1)) << k;
  }
}

TEST(Transfer, TruncationIsEnforced) {
  EXPECT_THROW(yangian_transfer(asymptotic_module(Poly(1), 0, 3), {R(1, 2), R(2, 3)}, 6), RangeError);
}

TEST(Transfer, ProductsAndCommutators) {
  const std::vector<Rational> sites{R(1, 2), R(2, 3), R(-3, 4)};
  const int order = 3;
  const ChainBasis basis(3);
  const auto t1 = yangian_transfer(finite_module(1), sites, order);
  const auto t2 = yangian_transfer(finite_module(2, R(1, 7)), sites, order);
  const auto t12 = yangian_transfer(tensor(finite_module(1), finite_module(2, R(1, 7))), sites, order);
  EXPECT_EQ((t1 * t2 - t12).max_abs(), 0);
  EXPECT_EQ((t1 * t2 - t2 * t1).max_abs(), 0);
  const auto q = yangian_q(sites, order);
  EXPECT_EQ((t1 * q - q * t1).max_abs(), 0);
  EXPECT_EQ(sector_leak(q, basis), 0);
  EXPECT_EQ(sector_leak(t2, basis), 0);
  // Two Q's at different arguments commute.
  const auto qw = q.substitute(Z, Poly::var(W));
  EXPECT_EQ((q * qw - qw * q).max_abs(), 0);
}

TEST(QOperator, DegreeAndTriangularity) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  for (int L = 1; L <= 3; ++L) {
    const ChainBasis basis(L);
    for (int k = 0; k < 10; ++k) {
      std::vector<Rational> sites;
      while (int(sites.size()) < L) {
        const Rational a(num(rng), den(rng));
        if (a != 0) sites.push_back(a);
      }
      const auto q = yangian_q(sites, 2);
      for (int s = 0; s <= L; ++s) {
        const auto d = q_sector_degree(q, basis, s);
        EXPECT_EQ(d.degree, s);
        EXPECT_TRUE(d.leading_nonzero);
      }
      EXPECT_TRUE(q_leading_triangular(q, basis, sites));
    }
  }
}

TEST(QOperator, TQRelation) {
  EXPECT_EQ(yangian_tq_residual({R(1, 2)}, 8), 0);
  EXPECT_EQ(yangian_tq_residual({R(1, 2), R(2, 3)}, 6), 0);
  EXPECT_EQ(yangian_tq_residual({R(1, 2), R(2, 3), R(-3, 4)}, 4), 0);
  EXPECT_GT(yangian_tq_residual({R(1, 2), R(2, 3)}, 3, true), 0);
}

TEST(QOperator, A21ClosedForm) {
  const Rational a1 = R(1, 2), a2 = R(2, 3);
  const int order = 8;
  const PSeriesMatrix c = a21_closed_form(a1, a2, order);
  for (int k = 0; k <= order; ++k) {
    EXPECT_EQ(c.coeff[k](0, 0), Poly(a1 + k));
    EXPECT_EQ(c.coeff[k](0, 1), Poly(k + 1));
    EXPECT_EQ(c.coeff[k](1, 0), Poly(k));
    EXPECT_EQ(c.coeff[k](1, 1), Poly(a2 + k));
  }
  const ChainBasis basis(2);
  const auto q = yangian_q({a1, a2}, order).restrict({basis.index({2, 1}), basis.index({1, 2})});
  PSeriesMatrix a;
  for (const auto& m : q.coeff) a.coeff.push_back(m.coefficient(Z, 1));
  EXPECT_EQ((a - c).max_abs(), 0);
  EXPECT_EQ(a_ls(yangian_q({a1, a2}, order), basis, 1).dim(), 2);
}

TEST(QOperator, TwoQFactorization) {
  for (const Rational& r : two_q_residual({R(1, 2), R(2, 3), R(-3, 4)}, 6)) EXPECT_EQ(r, 0);
  for (const Rational& r : two_q_residual({R(5), R(-1, 3)}, 6)) EXPECT_EQ(r, 0);
}

TEST(SeriesSum, PolynomialCoefficients) {
  // sum_k k p^k = p / (1-p)^2.
  const PolyMatrix s = sum_polynomial_series(scalar_series({0, 1, 2}), R(1, 3));
  EXPECT_EQ(s(0, 0), Poly(R(3, 4)));
  // sum_k p^k = 1 / (1-p).
  EXPECT_EQ(sum_polynomial_series(scalar_series({1, 1}), R(-2, 5))(0, 0), Poly(R(5, 7)));
  EXPECT_THROW(sum_polynomial_series(scalar_series({1, 2, 4}), R(1, 3)), RangeError);
}

TEST(QuadExt, Arithmetic) {
  const QuadExt x{1, 1, 2}, y{1, -1, 2};
  const QuadExt prod = x * y;
  EXPECT_EQ(prod.a, -1);
  EXPECT_EQ(prod.b, 0);
  const QuadExt q = x / x;
  EXPECT_EQ(q.a, 1);
  EXPECT_EQ(q.b, 0);
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_NEAR(x.to_complex().real(), 1 + std::sqrt(2.0), 1e-15);
  const QuadExt i{0, 1, -1};
  EXPECT_NEAR(i.to_complex().imag(), 1.0, 1e-15);
}

TEST(QuadExt, BetheRootsAreExact) {
  for (const auto& [a1, a2, p] : {std::tuple{R(1, 2), R(2, 3), R(1, 3)}, std::tuple{R(1), R(-2), R(-2, 5)},
                                  std::tuple{R(0), R(3, 7), R(4)}}) {
    const auto roots = yangian_bethe_roots_exact(a1, a2, p);
    EXPECT_EQ(roots.size(), 2u);
    for (const QuadExt& r : roots) {
      const QuadExt one{1, 0, r.d}, A1{a1, 0, r.d}, A2{a2, 0, r.d}, P{p, 0, r.d};
      const QuadExt lhs = P * (r + A1 + one) * (r + A2 + one) - (r + A1) * (r + A2);
      EXPECT_TRUE(lhs.is_zero()) << r.to_string();
    }
  }
}

TEST(Eigen, ExampleHolds) {
  for (const Rational& p : {R(1, 3), R(0), R(-2, 5)}) {
    const EigenExample e = eigen_example_check(R(1, 2), R(2, 3), p);
    EXPECT_TRUE(e.a_eigen) << p;
    EXPECT_TRUE(e.q_eigen) << p;
    EXPECT_EQ(e.roots.size(), e.lambdas.size());
  }
}

TEST(YQChar, MatchesFormulas) {
  const int depth = 6;
  for (int m = 0; m <= 3; ++m) EXPECT_TRUE(equal(yangian_qchar(finite_module(m), depth), qchar_finite_formula(m, depth)));
  EXPECT_TRUE(equal(yangian_qchar(asymptotic_module(Poly::var(ELL), 0, depth + 2), depth),
                    qchar_asymptotic_formula(Poly::var(ELL), depth)));
  EXPECT_TRUE(equal(yangian_qchar(fock_module(0, depth + 2), depth), qchar_fock_formula(depth)));
  EXPECT_FALSE(equal(qchar_finite_formula(1, depth), qchar_finite_formula(2, depth)));
}

TEST(YQChar, SpectralShift) {
  const int depth = 5;
  const Rational u = R(2, 5);
  EXPECT_TRUE(equal(yangian_qchar(asymptotic_module(Poly::var(ELL), u, depth + 2), depth),
                    yangian_qchar(asymptotic_module(Poly::var(ELL), 0, depth + 2), depth).shifted(u)));
}

TEST(YQChar, Interchange) {
  const int depth = 6, K = depth + 2;
  const Poly l = Poly::var(ELL);
  const Rational u = R(2, 5);
  auto qc = [&](const Poly& spin, const Rational& shift) { return yangian_qchar(asymptotic_module(spin, shift, K), depth); };
  EXPECT_TRUE(equal(qc(l, 0) * qc(Poly(0), u), qc(l - Poly(u), u) * qc(Poly(u), 0)));
  EXPECT_FALSE(equal(qc(l, 0) * qc(Poly(0), u), qc(l, u) * qc(Poly(0), 0)));
}

TEST(YQChar, DegenerateWeightSpaceRejected) {
  EXPECT_THROW(yangian_qchar(tensor(finite_module(1), finite_module(1)), 4), CategoryError);
}
