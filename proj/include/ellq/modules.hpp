#pragma once

#include <optional>
#include <vector>

#include "ellq/dynamical.hpp"

namespace ellq {

/// Entry R^{ij}_{mn}(z; x): coefficient of v_m (x) v_n in R(z; x)(v_i (x) v_j), signs in {+1,-1}.
ThetaExpr r_entry(int i, int j, int m, int n, const EllipticParams& params);

/// 4x4 dynamical R-matrix in the basis (++, +-, -+, --).
Eigen::Matrix4cd r_matrix(cplx z, cplx x, const EllipticParams& params, double pole_margin = 0.0);

/// Frobenius norm of the difference of the two sides of the dynamical Yang-Baxter equation on V^{(x)3}.
/// `lattice_kick` is added to the dynamical argument of the first factor only (negative control).
double qdybe_residual(cplx z, cplx w, cplx x, const EllipticParams& params, cplx lattice_kick = 0.0);

/// Two-dimensional module with L-operator read off the R-matrix.
EllipticModule build_vector_rep(const EllipticParams& params);

/// W^{l,u} truncated to w_0..w_K.
EllipticModule build_asymptotic(cplx spin, cplx shift, int K, const EllipticParams& params);

/// The simple socle w_0..w_l of W^{l,u} for a nonnegative integer l (exact, finite).
EllipticModule socle(int l, const EllipticParams& params, cplx shift = 0.0);

/// Restriction of W^{spin,shift} to w_0..w_l when spin lies in l + hbar^{-1}(Z + Z tau).
EllipticModule build_asymptotic_socle(cplx spin, cplx shift, int l, const EllipticParams& params);

/// One-dimensional module of weight zero with L_{++} = L_{--} = g(z).
EllipticModule one_dim_module(const ThetaExpr& g, const EllipticParams& params);

/// Pullback by the spectral automorphism z -> z + u*hbar.
EllipticModule spectral_twist(const EllipticModule& X, cplx u);

/// Worst norm of (LHS - RHS) of the explicit RLL relation over all (i,j,m,n), applied to
/// the basis vectors at `level`, relative to max(1, |LHS|, |RHS|). Throws RangeError above the truncation-safe band.
double rll_residual(const EllipticModule& X, cplx z, cplx w, cplx x, int level);

/// Gauss factors at a fixed spectral point.
struct GaussFactors {
  NumOp Kplus;
  NumOp Kminus;
  NumOp E;
  NumOp F;
};

GaussFactors gauss_decompose(const EllipticModule& X, cplx z);

/// Worst entrywise mismatch between L(z; x) and (1 F; 0 1) diag(K+, K-) (1 0; E 1), relative to
/// the size of L, on levels <= max_level.
double gauss_reconstruction_residual(const EllipticModule& X, cplx z, cplx x, int max_level);

/// Worst deviation of K+(z) K-(z - hbar) from scalar * identity on levels <= max_level, relative to |scalar|.
double gauss_scalar_law_residual(const EllipticModule& X, cplx z, cplx x, cplx scalar, int max_level);

struct HighestWeightData {
  cplx lambda{1.0};
  std::vector<cplx> alphas;
  std::vector<cplx> betas;
  cplx weight{};
};

struct SigmaSet {
  std::vector<cplx> values;
  bool truncated = false;
};

/// Sigma(alpha, beta): {beta + p : 0 <= p < l} when alpha - beta lies in l + hbar^{-1}(Z + Z tau)
/// for some integer l >= 0, else the first `depth` points of beta + Z_{>=0}, flagged truncated.
SigmaSet sigma_set(cplx alpha, cplx beta, int depth, const EllipticParams& params);

struct Cyclicity {
  bool cocyclic = true;
  bool cyclic = true;
};

Cyclicity cyclicity_predicates(const HighestWeightData& data, int depth, const EllipticParams& params);

struct KernelCount {
  int count = 0;
  bool indeterminate = false;
};

/// Dimension of the joint kernel of L_{-+}(z_s) on the complete levels of X at a generic x.
KernelCount highest_vector_count(const EllipticModule& X, const std::vector<cplx>& zs, cplx x);

struct SimpleModule {
  EllipticModule module;
  HighestWeightData data;  // after rearrangement
  bool finite_dimensional = false;
};

/// Rearranges (alpha_k, beta_k) by minimal integer parts, then builds
/// D (x) L(alpha_1, beta_1) (x) ... (x) L(alpha_n, beta_n) truncated at K, where D has
/// g(z) = lambda^{-1/2} aplus(z) / prod theta(z + alpha_k hbar).
SimpleModule construct_simple(const HighestWeightData& data, const ThetaExpr& aplus, int K,
                              const EllipticParams& params);

/// Greedy rearrangement used by construct_simple.
HighestWeightData rearrange(const HighestWeightData& data, const EllipticParams& params);

/// True iff some pairing satisfies alpha_k - beta_k in Z_{>=0} + hbar^{-1}(Z + Z tau) for all k.
bool is_finite_dimensional(const HighestWeightData& data, const EllipticParams& params);

/// True iff spin lies in Z_{>=0} + hbar^{-1}(Z + Z tau); sets l to the integer part.
bool degenerate_spin(cplx spin, const EllipticParams& params, long* l = nullptr);

}  // namespace ellq
