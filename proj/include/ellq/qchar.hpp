#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellq/modules.hpp"

namespace ellq {

/// [a+(z), a-(z)] modulo (a+, a-) ~ (c a+, c^{-1} a-), both components theta expressions in z.
struct ThetaMonomial {
  ThetaExpr plus;
  ThetaExpr minus;

  /// Canonical representative: plus has scalar 1, the constant moved into minus.
  ThetaMonomial normalized(const EllipticParams& params) const;
  std::string key() const;
  std::string to_string() const;
};

ThetaMonomial operator*(const ThetaMonomial& a, const ThetaMonomial& b);
ThetaMonomial inverse(const ThetaMonomial& m);

/// [a+, a-] sampled on a fixed grid of spectral points.
struct SampledMonomial {
  std::vector<cplx> plus;
  std::vector<cplx> minus;
};

SampledMonomial operator*(const SampledMonomial& a, const SampledMonomial& b);

/// Spectral points shared by every sampled monomial under comparison.
struct QCharGrid {
  std::vector<cplx> zs;

  /// `count` generic points from the seeded sampler, kept away from z + k*hbar on the lattice for |k| <= reach.
  static QCharGrid generic(const EllipticParams& params, std::uint64_t seed, int count = 10, int reach = 16);
};

SampledMonomial sample(const ThetaMonomial& m, const QCharGrid& grid, const EllipticParams& params);

/// Worst deviation of the component ratios a/b from a pair of reciprocal constants.
double ratio_deviation(const SampledMonomial& a, const SampledMonomial& b);

/// Element of M_t living on top - 2 Z_{>=0}, truncated to levels <= depth. Term (level k, m, c)
/// stands for c * m * t^{top - 2k}.
template <class Mono>
class QChar {
 public:
  struct Term {
    int level = 0;
    Mono mono;
    int mult = 1;
  };

  QChar() = default;
  QChar(cplx top, int depth) : top_(top), depth_(depth) {}

  cplx top() const { return top_; }
  int depth() const { return depth_; }
  const std::vector<Term>& terms() const { return terms_; }
  cplx weight(int level) const { return top_ - 2.0 * double(level); }

  void add(int level, Mono m, int mult = 1) {
    if (level <= depth_ && mult != 0) terms_.push_back(Term{level, std::move(m), mult});
  }

  std::vector<const Term*> at_level(int level) const {
    std::vector<const Term*> out;
    for (const auto& t : terms_) {
      if (t.level == level) out.push_back(&t);
    }
    return out;
  }

  /// Graded convolution truncated at min(depth, depth of each factor).
  friend QChar operator*(const QChar& a, const QChar& b) {
    QChar out(a.top_ + b.top_, std::min(a.depth_, b.depth_));
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) out.add(s.level + t.level, s.mono * t.mono, s.mult * t.mult);
    }
    return out;
  }

  /// Formal sum; both sides must share the top weight (GradingError otherwise).
  friend QChar operator+(const QChar& a, const QChar& b) {
    if (std::abs(a.top_ - b.top_) > 1e-9) throw GradingError("q-characters with different top weights");
    QChar out(a.top_, std::min(a.depth_, b.depth_));
    for (const auto& s : a.terms_) out.add(s.level, s.mono, s.mult);
    for (const auto& t : b.terms_) out.add(t.level, t.mono, t.mult);
    return out;
  }

  /// Same element written against a higher top weight `new_top` (levels grow by (new_top - top)/2).
  QChar rebased(cplx new_top) const {
    const cplx d = (new_top - top_) / 2.0;
    const long k = std::lround(d.real());
    if (k < 0 || std::abs(d - double(k)) > 1e-9) throw GradingError("rebase target is not above the top weight");
    QChar out(new_top, depth_);
    for (const auto& t : terms_) out.add(t.level + int(k), t.mono, t.mult);
    return out;
  }

 private:
  cplx top_{};
  int depth_ = 0;
  std::vector<Term> terms_;
};

using ThetaQChar = QChar<ThetaMonomial>;
using SampledQChar = QChar<SampledMonomial>;

SampledQChar sample(const ThetaQChar& q, const QCharGrid& grid, const EllipticParams& params);

struct QCharComparison {
  bool equal = true;
  /// Worst ratio-constancy deviation over matched monomials.
  double deviation = 0.0;
  /// Monomials left without a partner, counted with multiplicity.
  int unmatched = 0;
  /// Monomials compared, counted with multiplicity.
  int compared = 0;
};

/// Termwise multiset comparison on levels <= depth (defaults to the smaller depth). Canonical
/// keys decide first; leftovers fall back to ratio constancy on `grid`.
QCharComparison compare(const ThetaQChar& a, const ThetaQChar& b, const EllipticParams& params,
                        const QCharGrid& grid, double tol = 1e-9, std::optional<int> depth = std::nullopt);
QCharComparison compare(const SampledQChar& a, const SampledQChar& b, double tol = 1e-9,
                        std::optional<int> depth = std::nullopt);

std::string to_string(const ThetaQChar& q);

/// qc(W^{l,u}): term j is [theta(z+u h+(l+1)h) theta(z+u h)/theta(z+u h+j h), theta(z+u h+(j+1)h)] t^{l-2j}.
ThetaQChar qchar_asymptotic(cplx spin, cplx shift, int depth, const EllipticParams& params);
/// qc(V^l) as the first l+1 terms of qc(W^l).
ThetaQChar qchar_socle(int l, int depth, const EllipticParams& params);
/// [g, g] t^0.
ThetaQChar qchar_one_dim(const ThetaExpr& g, int depth, const EllipticParams& params);
ThetaQChar qchar_monomial(const ThetaMonomial& m, cplx weight, int depth, const EllipticParams& params);

/// Diagonal eigenvalue pairs of (K+, K-) per weight space, sampled on `grid`, on levels
/// <= min(depth, truncation-safe level). Throws CategoryError if K+- fail to be triangular
/// with x-independent diagonals (checked at the two x samples).
SampledQChar qchar_of_module(const EllipticModule& X, const QCharGrid& grid, int depth,
                             const std::vector<cplx>& x_samples);

/// Worst ratio deviation between qc(W^{l,0}) qc(W^{0,u}) and qc(W^{l-u,u}) qc(W^{u,0}).
/// `perturbation` is added to u on the right-hand side only (negative control).
QCharComparison interchange_check(cplx spin, cplx shift, int depth, const EllipticParams& params,
                                  const QCharGrid& grid, cplx perturbation = 0.0);

struct Classification {
  std::optional<HighestWeightData> data;
  std::string reason;
};

/// Writes a+/a- as lambda prod theta(z+alpha_k h)/theta(z+beta_k h) with sum alpha - sum beta = weight,
/// or explains why no such form exists.
Classification classify_highest_weight(const ThetaMonomial& m, cplx weight, const EllipticParams& params);

/// Highest weight monomial [a+, a+ / (lambda prod theta(z+alpha h)/theta(z+beta h))].
ThetaMonomial highest_weight_monomial(const HighestWeightData& data, const ThetaExpr& aplus,
                                      const EllipticParams& params);

/// qc(V^l) prod_j qc(W^j) qc(W^{j-1}) against sum_j qc(D_j) qc(W^l) qc(W^{-1}) prod_{i != j} qc(W^i) qc(W^{i-1}).
QCharComparison generalized_baxter(int l, int depth, const EllipticParams& params, const QCharGrid& grid);

}  // namespace ellq
