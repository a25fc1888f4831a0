#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ellq/theta.hpp"

namespace ellq {

struct BetheConfig {
  int n = 0;
  cplx a{};
  cplx p{1.0, 0.0};
  std::vector<cplx> roots;
};

/// r_k = p^2 (theta(z_k+a)/theta(z_k+a+hbar))^{2n} - prod_{j != k} theta(z_k-z_j-hbar)/theta(z_k-z_j+hbar).
/// Throws PoleError if any theta argument lies on the lattice.
std::vector<cplx> elliptic_bethe_residual(const BetheConfig& cfg, const EllipticParams& params);

/// max_k |r_k|.
double elliptic_bethe_residual_norm(const BetheConfig& cfg, const EllipticParams& params);

struct NewtonOptions {
  int max_iter = 200;
  double tol = 1e-14;
  /// Roots closer than this on the torus are treated as colliding.
  double collision = 1e-6;
  /// Torus distance below which two root multisets are the same solution.
  double dedup = 1e-8;
  double sum_rule_tol = 1e-6;
};

struct BetheSolution {
  BetheConfig config;
  double residual = 0.0;
  int iterations = 0;
  /// z_1 + ... + z_n - n a, reduced into the fundamental cell.
  cplx sum_defect{};
  bool sum_rule = false;
};

/// Damped Newton on log(p^2 f_k^{2n} / prod_k) from the roots of `start`.
/// Throws DivergenceError (with the iteration trace) if it does not converge.
BetheSolution elliptic_bethe_newton(const BetheConfig& start, const EllipticParams& params,
                                    const NewtonOptions& opts = {});

struct BetheSolveResult {
  /// Distinct solutions, sorted by canonical form.
  std::vector<BetheSolution> solutions;
  /// One message per seed that failed to converge or collided.
  std::vector<std::string> failures;
};

/// Newton from every seed (each seed holds n roots); solutions merged modulo the lattice and
/// root permutation. Seeds run concurrently; the result does not depend on scheduling.
BetheSolveResult elliptic_bethe_solve(int n, cplx a, cplx p, const std::vector<std::vector<cplx>>& seeds,
                                      const EllipticParams& params, const NewtonOptions& opts = {});

/// `count` seeds of n roots drawn from the fundamental cell.
std::vector<std::vector<cplx>> bethe_seeds(int n, int count, std::uint64_t seed, const EllipticParams& params);

/// Distance on C/(Z + Z tau) between two unordered root lists, by greedy matching.
double root_set_distance(const std::vector<cplx>& a, const std::vector<cplx>& b, const EllipticParams& params);

struct YangianBetheRoots {
  std::vector<cplx> roots;
  /// (a1 - a2)^2 + 4p/(1-p)^2 vanishes: a double root.
  bool degenerate = false;
  /// p = 1: the equation is linear (or trivial).
  bool linear = false;
};

/// Roots of p (z+a1+1)(z+a2+1) = (z+a1)(z+a2).
YangianBetheRoots yangian_bethe_solve(cplx a1, cplx a2, cplx p, double tol = 1e-12);

}  // namespace ellq
