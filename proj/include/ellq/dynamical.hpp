#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ellq/theta.hpp"

namespace ellq {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Weight-graded basis. Vector k sits at level `level(k)` and has weight top - 2*level.
///
/// `edge(k)` is the number of raising/lowering steps that can be applied to vector k
/// before truncation could affect the result; finite modules use kUnbounded.
class WeightBasis {
 public:
  static constexpr int kUnbounded = 1 << 20;

  WeightBasis() = default;
  WeightBasis(cplx top_weight, std::vector<int> levels, std::vector<int> edges, int complete_level = kUnbounded);
  /// Ladder w_0..w_K with one vector per level; `finite` marks an exact (untruncated) module.
  static WeightBasis ladder(cplx top_weight, int K, bool finite);

  cplx top_weight() const { return top_; }
  int size() const { return int(levels_.size()); }
  int level(int k) const { return levels_[k]; }
  int edge(int k) const { return edges_[k]; }
  cplx weight(int k) const { return top_ - 2.0 * double(levels_[k]); }
  int max_level() const { return levels_.empty() ? -1 : levels_.back(); }
  /// Basis indices at the given level (contiguous, possibly empty).
  std::vector<int> at_level(int level) const;
  /// Largest level j such that every vector at level <= j has edge >= min_edge.
  int safe_level(int min_edge) const;
  /// Levels <= complete_level() contain every basis vector of the untruncated module.
  int complete_level() const { return std::min(complete_, max_level()); }

 private:
  cplx top_{};
  std::vector<int> levels_;
  std::vector<int> edges_;
  int complete_ = kUnbounded;
};

struct OpEntry {
  int row = 0;
  int col = 0;
  ThetaSum value;
};

/// Element of (D_X)_{alpha,beta}: a matrix of theta expressions in (z, x) acting by
/// v(x) -> M(z, x) v(x + beta*hbar).
class ModuleOperator {
 public:
  ModuleOperator() = default;
  ModuleOperator(cplx alpha, cplx beta, int rows, int cols) : alpha_(alpha), beta_(beta), rows_(rows), cols_(cols) {}

  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<OpEntry>& entries() const { return entries_; }

  /// Adds `value` to entry (row, col).
  void add(int row, int col, const ThetaSum& value);
  ThetaSum entry(int row, int col) const;

  Matrix eval(cplx z, cplx x, const EllipticParams& params, double pole_margin = 0.0) const;
  ModuleOperator shifted_z(cplx c) const;
  ModuleOperator scaled(cplx c) const;

 private:
  cplx alpha_{};
  cplx beta_{};
  int rows_ = 0;
  int cols_ = 0;
  std::vector<OpEntry> entries_;
};

/// (Phi Psi)_{ac}(x) = sum_b Phi_ab(x) Psi_bc(x + beta_Phi hbar). Throws ShapeError on mismatch.
ModuleOperator compose_module_ops(const ModuleOperator& phi, const ModuleOperator& psi, const EllipticParams& params);

/// Numeric element of D_X at a fixed spectral point: v(x) -> M(x) v(x + beta*hbar).
struct NumOp {
  cplx alpha{};
  cplx beta{};
  std::function<Matrix(cplx)> matrix;

  Matrix operator()(cplx x) const { return matrix(x); }
};

NumOp numeric(const ModuleOperator& op, cplx z, const EllipticParams& params, double pole_margin = 0.0);
NumOp compose(const NumOp& a, const NumOp& b, cplx hbar);
/// Inverse in D_X: bidegree negated, matrix M(x - beta*hbar)^{-1}. Throws SingularityError.
NumOp inverse(const NumOp& a, cplx hbar);
/// a + s*b; bidegrees must agree.
NumOp combine(const NumOp& a, const NumOp& b, cplx s = 1.0);

/// Representation of E on a weight-graded space: the four L-operator entries as module operators.
struct EllipticModule {
  EllipticParams params;
  WeightBasis basis;
  /// Indexed by slot(i, j) for i, j in {+1, -1}.
  std::array<ModuleOperator, 4> L;
  std::string label;

  static constexpr int slot(int i, int j) { return (i > 0 ? 0 : 2) + (j > 0 ? 0 : 1); }
  const ModuleOperator& op(int i, int j) const { return L[slot(i, j)]; }
  ModuleOperator& op(int i, int j) { return L[slot(i, j)]; }
  int dim() const { return basis.size(); }
};

/// X (x) Y with L_{ij} = sum_k L^X_{ik}(x + hbar*wt_Y) (x) L^Y_{kj}(x).
EllipticModule dynamical_tensor(const EllipticModule& X, const EllipticModule& Y);

/// p-graded difference operator series sum_k p^{alpha0 - 2k} T_{alpha0 - 2k} M_k(x) at a fixed
/// spectral point, with coefficients to the right of the shift operator. T_b(g(x) v) = g(x - b hbar) v.
class DiffOpSeries {
 public:
  using Coefficients = std::function<std::vector<Matrix>(cplx x)>;

  DiffOpSeries(cplx alpha0, int order, int dim, cplx hbar, Coefficients coefficients);
  static DiffOpSeries identity(int dim, int order, cplx hbar);

  cplx alpha0() const { return alpha0_; }
  int order() const { return order_; }
  int dim() const { return dim_; }
  cplx hbar() const { return hbar_; }
  /// Exponent of coefficient k is alpha0 - 2k.
  cplx exponent(int k) const { return alpha0_ - 2.0 * double(k); }

  /// Coefficients M_0..M_order at x (cached).
  const std::vector<Matrix>& at(cplx x) const;

  DiffOpSeries scaled(cplx c) const;
  /// Coefficients restricted to k <= order.
  DiffOpSeries truncated(int order) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<double, double>, std::vector<Matrix>> values;
  };
  cplx alpha0_{};
  int order_ = 0;
  int dim_ = 0;
  cplx hbar_{};
  Coefficients coefficients_;
  std::shared_ptr<Cache> cache_;
};

/// Coefficients (p^a T_a M)(p^b T_b N) = p^{a+b} T_{a+b} M(x + b hbar) N(x), collected to `order`.
/// shift_sign = -1 uses M(x - b hbar) instead (convention negative control).
DiffOpSeries series_compose(const DiffOpSeries& a, const DiffOpSeries& b, int order, int shift_sign = 1);
/// Right inverse with leading exponent -alpha0. Throws SingularityError if M_0 is singular.
DiffOpSeries series_invert(const DiffOpSeries& s, int order);
/// a + c*b. Leading exponents must differ by an even integer (GradingError otherwise);
/// the result starts at the higher one.
DiffOpSeries series_add(const DiffOpSeries& a, const DiffOpSeries& b, cplx c = 1.0);

/// Worst coefficientwise residual ||A_k - B_k|| over k <= order, relative to the largest
/// coefficient norm of either series at the same x; exponents are aligned first.
double series_residual(const DiffOpSeries& a, const DiffOpSeries& b, const std::vector<cplx>& xs, int order);

}  // namespace ellq
