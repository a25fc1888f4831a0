#include <gtest/gtest.h>

#include "ellq/theta.hpp"

using namespace ellq;

namespace {

// Direct summation of the defining series over a fixed symmetric window.
cplx brute_theta(cplx z, cplx tau, int window = 30) {
  cplx s = 0.0;
  for (int j = -window; j <= window; ++j) {
    const double h = j + 0.5;
    s += std::exp(kI * kPi * h * h * tau + 2.0 * kI * kPi * h * (z + 0.5));
  }
  return -s;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Theta, VanishesOnLattice) {
  const EllipticParams P;
  EXPECT_LT(std::abs(theta_eval(0.0, P)), 1e-15);
  EXPECT_LT(std::abs(theta_eval(1.0, P)), 1e-14);
  EXPECT_LT(std::abs(theta_eval(P.tau, P)), 1e-14);
  EXPECT_LT(std::abs(theta_eval(2.0 - P.tau, P)), 1e-13);
}

TEST(Theta, MatchesBruteForceSeries) {
  EXPECT_LT(rel(theta_eval(0.25, cplx(0, 1)), brute_theta(0.25, cplx(0, 1))), 1e-12);
  const cplx tau(0.3, 0.8);
  for (cplx z : {cplx(0.1, 0.2), cplx(-0.4, 0.55), cplx(0.77, -0.3)}) {
    EXPECT_LT(rel(theta_eval(z, tau), brute_theta(z, tau)), 1e-12) << z;
  }
}

TEST(Theta, DerivativeMatchesDifferenceQuotient) {
  const EllipticParams P;
  const cplx z(0.31, 0.27);
  const double h = 1e-5;
  const cplx fd = (theta_eval(z + h, P) - theta_eval(z - h, P)) / (2 * h);
  EXPECT_LT(rel(theta_derivative(z, P), fd), 1e-8);
}

TEST(Theta, QuasiPeriodicityAndOddness) {
  for (cplx tau : {cplx(0, 1), cplx(0.2, 0.7)}) {
    const EllipticParams P(tau, 0.31);
    Sampler s(42);
    for (int k = 0; k < 100; ++k) {
      const cplx z = s.cell_point(P);
      const cplx t = theta_eval(z, P);
      EXPECT_LT(std::abs(theta_eval(z + 1.0, P) + t), 1e-10 * (1 + std::abs(t)));
      EXPECT_LT(std::abs(theta_eval(z + tau, P) + std::exp(-kI * kPi * tau - 2.0 * kI * kPi * z) * t),
                1e-10 * (1 + std::abs(t)));
      EXPECT_LT(rel(theta_eval(-z, P), -t), 1e-12);
    }
  }
}

TEST(Theta, RejectsLowerHalfPlane) {
  EXPECT_THROW(EllipticParams(cplx(0.1, -1.0), 0.31), ParameterError);
  EXPECT_THROW(EllipticParams(cplx(0, 1), 0.0), ParameterError);
  // 2 hbar = 1 lies in the period lattice.
  EXPECT_THROW(EllipticParams(cplx(0, 1), 0.5), ParameterError);
  EXPECT_NO_THROW(EllipticParams(cplx(0, 1), 0.31));
}

TEST(LatticeReduce, Examples) {
  const EllipticParams P;
  const auto r0 = lattice_reduce(0.0, P);
  EXPECT_LT(std::abs(r0.rem), 1e-15);
  EXPECT_EQ(r0.m, 0);
  EXPECT_EQ(r0.n, 0);

  const auto r1 = lattice_reduce(1.0 + P.tau, P);
  EXPECT_LT(std::abs(r1.rem), 1e-12);
  EXPECT_EQ(r1.m, 1);
  EXPECT_EQ(r1.n, 1);

  const cplx c = 2.7 + 1.3 * P.tau;
  const auto r2 = lattice_reduce(c, P);
  EXPECT_GE(r2.rem.real(), 0.0);
  EXPECT_LT(r2.rem.real(), 1.0);
  EXPECT_GE(r2.rem.imag(), 0.0);
  EXPECT_LT(r2.rem.imag(), P.tau.imag());
  EXPECT_LT(std::abs(r2.rem + double(r2.m) + double(r2.n) * P.tau - c), 1e-12);
}

TEST(LatticeReduce, ReconstructsSkewTau) {
  const EllipticParams P(cplx(0.35, 0.9), 0.31);
  Sampler s(7);
  for (int k = 0; k < 50; ++k) {
    const cplx c = 10.0 * (s.uniform() - 0.5) + 10.0 * (s.uniform() - 0.5) * P.tau;
    const auto r = lattice_reduce(c, P);
    EXPECT_LT(std::abs(r.rem + double(r.m) + double(r.n) * P.tau - c), 1e-11);
    EXPECT_LT(lattice_distance(double(r.m) + double(r.n) * P.tau, P), 1e-12);
  }
}

TEST(ThetaExpr, EmptyIsOne) {
  const EllipticParams P;
  EXPECT_EQ(ThetaExpr::constant(1.0).eval(cplx(0.3, 0.2), cplx(-0.1, 0.4), P), cplx(1.0));
}

TEST(ThetaExpr, SingleFactorComposesWithTheta) {
  const EllipticParams P;
  const ThetaExpr e = ThetaExpr::theta(1, 1, 0.0);
  EXPECT_LT(rel(e.eval(0.2, 0.3, P), theta_eval(0.5, P)), 1e-14);
}

TEST(ThetaExpr, RMatrixEntryMatchesFactorProduct) {
  const EllipticParams P;
  const cplx h = P.hbar;
  const ThetaExpr e = ThetaExpr::theta(1, 0, 0.0) * ThetaExpr::theta(0, 1, h) * ThetaExpr::theta(0, 1, -h) *
                      ThetaExpr::theta(1, 0, h, -1) * ThetaExpr::theta(0, 1, 0.0, -2);
  Sampler s(3);
  for (int k = 0; k < 20; ++k) {
    const cplx z = s.cell_point(P), x = s.cell_point(P);
    const cplx want = theta_eval(z, P) * theta_eval(x + h, P) * theta_eval(x - h, P) /
                      (theta_eval(z + h, P) * theta_eval(x, P) * theta_eval(x, P));
    EXPECT_LT(rel(e.eval(z, x, P), want), 1e-12);
  }
}

TEST(ThetaExpr, CanonicalFormEvaluatesIdentically) {
  const EllipticParams P(cplx(0.1, 1.1), 0.31);
  const ThetaExpr e = 2.5 * ThetaExpr::theta(-1, 0, cplx(3.4, 0.2)) * ThetaExpr::theta(0, 1, cplx(-1.7, 2.3), -1) *
                      ThetaExpr::theta(1, -1, cplx(0.9, -1.4), 2) * ThetaExpr::exponential(cplx(0.2, 0.1), 0.0);
  const ThetaExpr c1 = e.canonical(P);
  const ThetaExpr c2 = e.canonical(P, true);
  for (const auto& f : c1.factors()) {
    EXPECT_GE(f.shift.real(), 0.0);
    EXPECT_LT(f.shift.real(), 1.0);
  }
  Sampler s(9);
  for (int k = 0; k < 20; ++k) {
    const cplx z = s.cell_point(P), x = s.cell_point(P);
    const cplx v = e.eval(z, x, P);
    EXPECT_LT(rel(c1.eval(z, x, P), v), 1e-10);
    EXPECT_LT(rel(c2.eval(z, x, P), v), 1e-10);
  }
}

TEST(ThetaExpr, PoleRaises) {
  const EllipticParams P;
  const ThetaExpr e = ThetaExpr::theta(1, 0, 0.0, -1);
  EXPECT_THROW(e.eval(0.0, 0.0, P, 1e-6), PoleError);
  EXPECT_THROW(e.eval(1.0 + P.tau, 0.0, P, 1e-6), PoleError);
  EXPECT_NO_THROW(e.eval(0.3, 0.0, P, 1e-6));
}

TEST(Sampler, DeterministicAndRespectsMargin) {
  const EllipticParams P;
  Sampler a(123), b(123), c(124);
  bool differs = false;
  for (int k = 0; k < 20; ++k) {
    const cplx pa = a.cell_point(P), pb = b.cell_point(P), pc = c.cell_point(P);
    EXPECT_EQ(pa, pb);
    differs = differs || pa != pc;
  }
  EXPECT_TRUE(differs);
  Sampler g(5);
  for (int k = 0; k < 50; ++k) {
    const cplx z = g.generic_point(P, 0.05, [&](cplx w) { return std::vector<cplx>{w, w + P.hbar}; });
    EXPECT_GE(lattice_distance(z, P), 0.05);
    EXPECT_GE(lattice_distance(z + P.hbar, P), 0.05);
  }
}
