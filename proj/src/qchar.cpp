#include "ellq/qchar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace ellq {

namespace {

ThetaExpr th(cplx shift, int e = 1) { return ThetaExpr::theta(1, 0, shift, e); }

std::string fmt(cplx c) {
  std::ostringstream os;
  os << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

int effective_depth(int a, int b, std::optional<int> depth) { return depth ? *depth : std::min(a, b); }

bool same_weight(cplx a, cplx b) { return std::abs(a - b) < 1e-9; }

// Fills `plus`/`minus` lists (with multiplicity) for level k; negative multiplicities move across.
template <class Mono>
void collect(const QChar<Mono>& a, const QChar<Mono>& b, int k, std::vector<std::pair<const Mono*, int>>& left,
             std::vector<std::pair<const Mono*, int>>& right) {
  for (const auto* t : a.at_level(k)) (t->mult > 0 ? left : right).emplace_back(&t->mono, std::abs(t->mult));
  for (const auto* t : b.at_level(k)) (t->mult > 0 ? right : left).emplace_back(&t->mono, std::abs(t->mult));
}

void greedy_match(std::vector<std::pair<SampledMonomial, int>>& left, std::vector<std::pair<SampledMonomial, int>>& right,
                  double tol, QCharComparison& out) {
  for (auto& [ma, ca] : left) {
    while (ca > 0) {
      double best = tol;
      std::pair<SampledMonomial, int>* partner = nullptr;
      for (auto& cand : right) {
        if (cand.second == 0) continue;
        const double d = ratio_deviation(ma, cand.first);
        if (d <= best) {
          best = d;
          partner = &cand;
        }
      }
      if (!partner) break;
      const int n = std::min(ca, partner->second);
      ca -= n;
      partner->second -= n;
      out.deviation = std::max(out.deviation, best);
    }
  }
  for (const auto& [m, c] : left) out.unmatched += c;
  for (const auto& [m, c] : right) out.unmatched += c;
}

}  // namespace

ThetaMonomial ThetaMonomial::normalized(const EllipticParams& params) const {
  ThetaMonomial out{plus.canonical(params), minus.canonical(params)};
  if (out.plus.is_zero() || out.minus.is_zero()) throw SingularityError("monomial with a vanishing component");
  const cplx c = out.plus.scalar();
  out.plus *= 1.0 / c;
  out.minus *= c;
  return out;
}

std::string ThetaMonomial::key() const { return plus.shape_key() + "#" + minus.shape_key(); }

std::string ThetaMonomial::to_string() const { return "[" + plus.to_string() + ", " + minus.to_string() + "]"; }

ThetaMonomial operator*(const ThetaMonomial& a, const ThetaMonomial& b) { return {a.plus * b.plus, a.minus * b.minus}; }

ThetaMonomial inverse(const ThetaMonomial& m) { return {m.plus.inverse(), m.minus.inverse()}; }

SampledMonomial operator*(const SampledMonomial& a, const SampledMonomial& b) {
  if (a.plus.size() != b.plus.size()) throw ShapeError("sampled monomials on different grids");
  SampledMonomial out = a;
  for (std::size_t s = 0; s < a.plus.size(); ++s) {
    out.plus[s] *= b.plus[s];
    out.minus[s] *= b.minus[s];
  }
  return out;
}

QCharGrid QCharGrid::generic(const EllipticParams& params, std::uint64_t seed, int count, int reach) {
  Sampler sampler(seed);
  QCharGrid g;
  for (int s = 0; s < count; ++s) {
    g.zs.push_back(sampler.generic_point(params, 1e-3, [&](cplx z) {
      std::vector<cplx> offs;
      for (int k = -reach; k <= reach; ++k) offs.push_back(z + double(k) * params.hbar);
      return offs;
    }));
  }
  return g;
}

SampledMonomial sample(const ThetaMonomial& m, const QCharGrid& grid, const EllipticParams& params) {
  SampledMonomial out;
  for (cplx z : grid.zs) {
    out.plus.push_back(m.plus.eval(z, 0.0, params, 1e-12));
    out.minus.push_back(m.minus.eval(z, 0.0, params, 1e-12));
  }
  return out;
}

double ratio_deviation(const SampledMonomial& a, const SampledMonomial& b) {
  if (a.plus.empty() || a.plus.size() != b.plus.size()) throw ShapeError("sampled monomials on different grids");
  const cplx rp0 = a.plus[0] / b.plus[0];
  const cplx rm0 = a.minus[0] / b.minus[0];
  double dev = std::abs(rp0 * rm0 - 1.0);
  for (std::size_t s = 1; s < a.plus.size(); ++s) {
    dev = std::max(dev, std::abs(a.plus[s] / b.plus[s] / rp0 - 1.0));
    dev = std::max(dev, std::abs(a.minus[s] / b.minus[s] / rm0 - 1.0));
  }
  return std::isfinite(dev) ? dev : 1e300;
}

SampledQChar sample(const ThetaQChar& q, const QCharGrid& grid, const EllipticParams& params) {
  SampledQChar out(q.top(), q.depth());
  for (const auto& t : q.terms()) out.add(t.level, sample(t.mono, grid, params), t.mult);
  return out;
}

QCharComparison compare(const ThetaQChar& a, const ThetaQChar& b, const EllipticParams& params, const QCharGrid& grid,
                        double tol, std::optional<int> depth) {
  QCharComparison out;
  if (!same_weight(a.top(), b.top())) {
    out.equal = false;
    out.unmatched = int(a.terms().size() + b.terms().size());
    return out;
  }
  const int D = effective_depth(a.depth(), b.depth(), depth);
  for (int k = 0; k <= D; ++k) {
    std::vector<std::pair<const ThetaMonomial*, int>> left;
    std::vector<std::pair<const ThetaMonomial*, int>> right;
    collect(a, b, k, left, right);
    struct Slot {
      ThetaMonomial mono;
      int count;
    };
    std::unordered_map<std::string, std::vector<Slot>> buckets;
    for (const auto& [m, c] : right) {
      out.compared += c;
      ThetaMonomial n = m->normalized(params);
      buckets[n.key()].push_back(Slot{std::move(n), c});
    }
    std::vector<std::pair<SampledMonomial, int>> rest_left;
    for (const auto& [m, c] : left) {
      out.compared += c;
      ThetaMonomial n = m->normalized(params);
      int remaining = c;
      auto it = buckets.find(n.key());
      if (it != buckets.end()) {
        for (auto& slot : it->second) {
          if (remaining == 0) break;
          if (slot.count == 0) continue;
          const double d = std::abs(n.minus.scalar() / slot.mono.minus.scalar() - 1.0);
          if (d > tol) continue;
          const int take = std::min(remaining, slot.count);
          remaining -= take;
          slot.count -= take;
          out.deviation = std::max(out.deviation, d);
        }
      }
      if (remaining > 0) rest_left.emplace_back(sample(n, grid, params), remaining);
    }
    std::vector<std::pair<SampledMonomial, int>> rest_right;
    for (auto& [key, slots] : buckets) {
      for (auto& slot : slots) {
        if (slot.count > 0) rest_right.emplace_back(sample(slot.mono, grid, params), slot.count);
      }
    }
    if (!rest_left.empty() || !rest_right.empty()) greedy_match(rest_left, rest_right, tol, out);
  }
  out.equal = out.unmatched == 0;
  return out;
}

QCharComparison compare(const SampledQChar& a, const SampledQChar& b, double tol, std::optional<int> depth) {
  QCharComparison out;
  if (!same_weight(a.top(), b.top())) {
    out.equal = false;
    out.unmatched = int(a.terms().size() + b.terms().size());
    return out;
  }
  const int D = effective_depth(a.depth(), b.depth(), depth);
  for (int k = 0; k <= D; ++k) {
    std::vector<std::pair<const SampledMonomial*, int>> left;
    std::vector<std::pair<const SampledMonomial*, int>> right;
    collect(a, b, k, left, right);
    std::vector<std::pair<SampledMonomial, int>> l;
    std::vector<std::pair<SampledMonomial, int>> r;
    for (const auto& [m, c] : left) {
      l.emplace_back(*m, c);
      out.compared += c;
    }
    for (const auto& [m, c] : right) {
      r.emplace_back(*m, c);
      out.compared += c;
    }
    greedy_match(l, r, tol, out);
  }
  out.equal = out.unmatched == 0;
  return out;
}

std::string to_string(const ThetaQChar& q) {
  if (q.terms().empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : q.terms()) {
    if (!first) os << " + ";
    first = false;
    if (t.mult != 1) os << t.mult << "*";
    os << t.mono.to_string() << "t^{" << fmt(q.weight(t.level)) << "}";
  }
  return os.str();
}

ThetaQChar qchar_asymptotic(cplx spin, cplx shift, int depth, const EllipticParams& params) {
  const cplx h = params.hbar;
  const cplx u = shift * h;
  ThetaQChar q(spin, depth);
  for (int j = 0; j <= depth; ++j) {
    const double dj = double(j);
    const ThetaMonomial m{th(u + (spin + 1.0) * h) * th(u) * th(u + dj * h, -1), th(u + (dj + 1.0) * h)};
    q.add(j, m.normalized(params));
  }
  return q;
}

ThetaQChar qchar_socle(int l, int depth, const EllipticParams& params) {
  if (l < 0) throw ParameterError("socle dimension must be nonnegative");
  const ThetaQChar w = qchar_asymptotic(double(l), 0.0, std::min(depth, l), params);
  ThetaQChar q(double(l), depth);
  for (const auto& t : w.terms()) q.add(t.level, t.mono, t.mult);
  return q;
}

ThetaQChar qchar_one_dim(const ThetaExpr& g, int depth, const EllipticParams& params) {
  return qchar_monomial(ThetaMonomial{g, g}, 0.0, depth, params);
}

ThetaQChar qchar_monomial(const ThetaMonomial& m, cplx weight, int depth, const EllipticParams& params) {
  ThetaQChar q(weight, depth);
  q.add(0, m.normalized(params));
  return q;
}

SampledQChar qchar_of_module(const EllipticModule& X, const QCharGrid& grid, int depth, const std::vector<cplx>& x_samples) {
  if (x_samples.empty()) throw ParameterError("q-character extraction needs at least one x sample");
  const int top_level = std::min(depth, X.basis.safe_level(1));
  const int n = X.dim();
  std::vector<SampledMonomial> monos(static_cast<std::size_t>(n));
  const double tri_tol = 1e-8;
  int orientation = 0;  // +1 upper, -1 lower, 0 undecided
  for (cplx z : grid.zs) {
    const GaussFactors g = gauss_decompose(X, z);
    std::vector<cplx> dplus0;
    std::vector<cplx> dminus0;
    for (std::size_t xs = 0; xs < x_samples.size(); ++xs) {
      const Matrix kp = g.Kplus(x_samples[xs]);
      const Matrix km = g.Kminus(x_samples[xs]);
      for (int level = 0; level <= top_level; ++level) {
        const std::vector<int> idx = X.basis.at_level(level);
        if (idx.empty()) continue;
        const int a = idx.front();
        const int d = int(idx.size());
        for (const Matrix* k : {&kp, &km}) {
          const Matrix block = k->block(a, a, d, d);
          const double scale = std::max(block.cwiseAbs().maxCoeff(), 1e-300);
          const double lower = Matrix(block.triangularView<Eigen::StrictlyLower>()).cwiseAbs().maxCoeff() / scale;
          const double upper = Matrix(block.triangularView<Eigen::StrictlyUpper>()).cwiseAbs().maxCoeff() / scale;
          const bool up_ok = lower < tri_tol;
          const bool low_ok = upper < tri_tol;
          if (orientation >= 0 && up_ok) {
            if (!low_ok) orientation = 1;
          } else if (orientation <= 0 && low_ok) {
            orientation = -1;
          } else {
            throw CategoryError("K+- not triangular on the weight space at level " + std::to_string(level) + " of " +
                                X.label);
          }
        }
      }
      for (int level = 0; level <= top_level; ++level) {
        for (int i : X.basis.at_level(level)) {
          const cplx p = kp(i, i);
          const cplx m = km(i, i);
          if (xs == 0) {
            monos[std::size_t(i)].plus.push_back(p);
            monos[std::size_t(i)].minus.push_back(m);
          } else {
            const SampledMonomial& ref = monos[std::size_t(i)];
            const double dev = std::max(std::abs(p - ref.plus.back()) / std::max(std::abs(p), 1e-300),
                                        std::abs(m - ref.minus.back()) / std::max(std::abs(m), 1e-300));
            if (dev > 1e-8) {
              throw CategoryError("diagonal of K+- depends on x at level " + std::to_string(level) + " of " + X.label);
            }
          }
          if (p == cplx(0.0) || m == cplx(0.0)) {
            throw CategoryError("vanishing diagonal of K+- at level " + std::to_string(level) + " of " + X.label);
          }
        }
      }
    }
  }
  SampledQChar q(X.basis.top_weight(), top_level);
  for (int k = 0; k < n; ++k) {
    if (X.basis.level(k) <= top_level) q.add(X.basis.level(k), monos[std::size_t(k)]);
  }
  return q;
}

QCharComparison interchange_check(cplx spin, cplx shift, int depth, const EllipticParams& params, const QCharGrid& grid,
                                  cplx perturbation) {
  const ThetaQChar lhs = qchar_asymptotic(spin, 0.0, depth, params) * qchar_asymptotic(0.0, shift, depth, params);
  const cplx v = shift + perturbation;
  const ThetaQChar rhs = qchar_asymptotic(spin - v, v, depth, params) * qchar_asymptotic(v, 0.0, depth, params);
  return compare(lhs, rhs, params, grid);
}

Classification classify_highest_weight(const ThetaMonomial& m, cplx weight, const EllipticParams& params) {
  Classification out;
  const cplx h = params.hbar;
  const ThetaExpr ratio = (m.plus / m.minus).canonical(params);
  if (!ratio.x_free()) {
    out.reason = "ratio depends on x";
    return out;
  }
  std::vector<cplx> num;
  std::vector<cplx> den;
  for (const auto& f : ratio.factors()) {
    if (f.cz != 1) {
      out.reason = "factor is not of the form theta(z + c)";
      return out;
    }
    for (int e = 0; e < std::abs(f.exponent); ++e) (f.exponent > 0 ? num : den).push_back(f.shift);
  }
  if (num.size() != den.size()) {
    out.reason = "numerator and denominator carry different numbers of theta factors";
    return out;
  }
  // exp(lz z) must equal theta(z + alpha_1 h)/theta(z + c_1) up to a constant, i.e. lz = -2 pi i n
  // with alpha_1 h - c_1 = m + n tau.
  const cplx k = ratio.lambda_z() / (-2.0 * kI * kPi);
  const long kn = std::lround(k.real());
  if (std::abs(k - double(kn)) > 1e-9) {
    out.reason = "exponential prefactor exp(" + fmt(ratio.lambda_z()) + " z) cannot be absorbed";
    return out;
  }
  if (num.empty()) {
    num.push_back(0.0);
    den.push_back(0.0);
  }
  HighestWeightData data;
  cplx sum_rest = 0.0;
  for (std::size_t i = 1; i < num.size(); ++i) {
    data.alphas.push_back(num[i] / h);
    sum_rest += num[i] / h;
  }
  cplx sum_beta = 0.0;
  for (cplx d : den) {
    data.betas.push_back(d / h);
    sum_beta += d / h;
  }
  const cplx alpha1 = weight + sum_beta - sum_rest;
  const cplx gap = alpha1 * h - num[0];
  const bool on_lattice = lattice_distance(gap, params) < params.lattice_tol;
  const long n_tau = on_lattice ? std::lround(nearest_lattice_point(gap, params).imag() / params.tau.imag()) : 0;
  if (!on_lattice || n_tau != kn) {
    out.reason = "no choice of parameters matches weight " + fmt(weight) + " and the exponential prefactor";
    return out;
  }
  data.alphas.insert(data.alphas.begin(), alpha1);
  if (data.alphas.size() == 1 && std::abs(data.alphas[0] - data.betas[0]) < 1e-12) {
    data.alphas.clear();
    data.betas.clear();
  }
  data.weight = weight;
  Sampler sampler(7);
  const cplx z0 = sampler.generic_point(params, 1e-2, [&](cplx z) {
    std::vector<cplx> offs;
    for (cplx a : data.alphas) offs.push_back(z + a * h);
    for (cplx b : data.betas) offs.push_back(z + b * h);
    for (const auto& f : ratio.factors()) offs.push_back(f.argument(z, 0.0));
    return offs;
  });
  cplx model = 1.0;
  for (cplx a : data.alphas) model *= theta_eval(z0 + a * h, params);
  for (cplx b : data.betas) model /= theta_eval(z0 + b * h, params);
  data.lambda = ratio.eval(z0, 0.0, params) / model;
  out.data = data;
  return out;
}

ThetaMonomial highest_weight_monomial(const HighestWeightData& data, const ThetaExpr& aplus, const EllipticParams& params) {
  const cplx h = params.hbar;
  ThetaExpr ratio = ThetaExpr::constant(data.lambda);
  for (cplx a : data.alphas) ratio *= th(a * h);
  for (cplx b : data.betas) ratio *= th(b * h, -1);
  return ThetaMonomial{aplus, aplus / ratio}.normalized(params);
}

QCharComparison generalized_baxter(int l, int depth, const EllipticParams& params, const QCharGrid& grid) {
  if (l < 0) throw ParameterError("socle dimension must be nonnegative");
  const cplx h = params.hbar;
  auto W = [&](int spin) { return qchar_asymptotic(double(spin), 0.0, depth, params); };
  ThetaQChar denominators(0.0, depth);
  denominators.add(0, ThetaMonomial{});
  std::vector<ThetaQChar> pair;
  for (int j = 0; j <= l; ++j) pair.push_back(W(j) * W(j - 1));
  for (const auto& p : pair) denominators = denominators * p;
  const ThetaQChar lhs = qchar_socle(l, depth, params) * denominators;

  std::optional<ThetaQChar> rhs;
  for (int j = 0; j <= l; ++j) {
    const ThetaExpr g = th((double(j) + 1.0) * h);
    ThetaQChar term = qchar_one_dim(g, depth, params) * W(l) * W(-1);
    for (int i = 0; i <= l; ++i) {
      if (i != j) term = term * pair[std::size_t(i)];
    }
    const ThetaQChar aligned = term.rebased(lhs.top());
    rhs = rhs ? *rhs + aligned : aligned;
  }
  return compare(lhs, *rhs, params, grid, 1e-9, depth);
}

}  // namespace ellq
