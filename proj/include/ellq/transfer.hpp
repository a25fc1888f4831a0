#pragma once

#include <optional>
#include <vector>

#include "ellq/modules.hpp"

namespace ellq {

/// Zero-weight subspace of the L-fold tensor power of the vector representation, with sites a_1..a_L.
class QuantumSpace {
 public:
  /// Throws ParameterError if L is odd or zero, or a site lies on the period lattice.
  QuantumSpace(std::vector<cplx> sites, const EllipticParams& params);

  const std::vector<cplx>& sites() const { return sites_; }
  int length() const { return int(sites_.size()); }
  int dim() const { return int(strings_.size()); }
  /// Basis strings of signs with as many +1 as -1, in lexicographic order (+1 first).
  const std::vector<std::vector<int>>& strings() const { return strings_; }
  /// Exact equality of all sites.
  bool homogeneous() const;

 private:
  std::vector<cplx> sites_;
  std::vector<std::vector<int>> strings_;
};

/// t_X(z; p) truncated to `order` p^{-2} steps: coefficient k is the matrix with entries
/// Tr over level k of L_{i_1 j_1}(z + a_1 - hbar) ... L_{i_L j_L}(z + a_L - hbar), composed in D_X.
/// Throws RangeError if `order` exceeds the truncation-safe band of X.
DiffOpSeries transfer_matrix(const EllipticModule& X, const QuantumSpace& V, cplx z, int order);

/// Truncation needed for an asymptotic auxiliary module to serve `order` on V.
int auxiliary_truncation(const QuantumSpace& V, int order);

/// Q(z; p) = t_{W^{z/hbar}}(0; p), leading exponent z/hbar.
DiffOpSeries q_operator(const QuantumSpace& V, cplx z, int order, const EllipticParams& params);

/// Coefficient k of Q~(z; p) for L = 2 in the basis (v+ v-, v- v+), from the closed-form
/// entries A, B, C, D.
Matrix l2_q_tilde_coefficient(cplx z, cplx x, cplx a1, cplx a2, int k, const EllipticParams& params);

/// t_X(z) t_Y(z) against t_{X (x) Y}(z).
double tensor_transfer_residual(const EllipticModule& X, const EllipticModule& Y, const QuantumSpace& V, cplx z,
                                int order, const std::vector<cplx>& xs);

/// t_{W^l}(z) t_{W^0}(z + u hbar) against t_{W^{l-u}}(z + u hbar) t_{W^u}(z).
/// shift_sign = -1 composes with the mirrored shift rule (negative control).
double interchange_transfer_residual(cplx spin, cplx shift, const QuantumSpace& V, cplx z, int order,
                                     const std::vector<cplx>& xs, const EllipticParams& params, int shift_sign = 1);

/// t_X(z) t_Y(w) against t_Y(w) t_X(z).
double commutator_residual(const EllipticModule& X, cplx z, const EllipticModule& Y, cplx w, const QuantumSpace& V,
                           int order, const std::vector<cplx>& xs);

/// Q(z + l hbar) t_{W^0}(z) against t_{W^l}(z) Q(z). `other` replaces the sites of the
/// right-hand side (negative control).
double qq_relation_residual(cplx spin, const QuantumSpace& V, cplx z, int order, const std::vector<cplx>& xs,
                            const EllipticParams& params, const std::optional<QuantumSpace>& other = std::nullopt);

/// t_{V^n}(z) against sum_j Q(z+n h) Q(z-h) [Q(z+j h) Q(z+(j-1) h)]^{-1} prod_l theta(z+a_l+j h).
/// `drop_term` omits one summand (negative control).
double tq_residual(int n, const QuantumSpace& V, cplx z, int order, const std::vector<cplx>& xs,
                   const EllipticParams& params, std::optional<int> drop_term = std::nullopt);

struct PeriodicityResidual {
  double one = 0.0;
  double tau = 0.0;
};

/// Coefficientwise residuals of Q~(z+1) = (-1)^n Q~(z) and
/// Q~(z+tau) = (-1)^n exp(-n pi i (tau + 2z + 2a)) Q~(z) on a homogeneous space of length 2n.
PeriodicityResidual periodicity_residual(const QuantumSpace& V, cplx z, int order, const std::vector<cplx>& xs,
                                         const EllipticParams& params);

/// Worst relative deviation of the k = 0 coefficient of t_{W^0}(z) from prod_l theta(z + a_l) times identity.
double leading_coefficient_residual(const QuantumSpace& V, cplx z, const std::vector<cplx>& xs,
                                    const EllipticParams& params);

}  // namespace ellq
