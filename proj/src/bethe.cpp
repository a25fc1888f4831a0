#include "ellq/bethe.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace ellq {

namespace {

cplx checked_theta(cplx w, const EllipticParams& params) {
  if (lattice_distance(w, params) < params.lattice_tol) throw PoleError("Bethe equation argument on the lattice");
  return theta_eval(w, params);
}

cplx log_derivative(cplx w, const EllipticParams& params) {
  return theta_derivative(w, params) / checked_theta(w, params);
}

// log of p^2 f_k^{2n} / prod_{j != k} theta(z_k - z_j - h)/theta(z_k - z_j + h), principal branch.
Eigen::VectorXcd log_residual(const BetheConfig& c, const EllipticParams& params) {
  const cplx h = params.hbar;
  Eigen::VectorXcd g(c.n);
  for (int k = 0; k < c.n; ++k) {
    const cplx zk = c.roots[k];
    cplx ratio = c.p * c.p * std::pow(checked_theta(zk + c.a, params) / checked_theta(zk + c.a + h, params), 2 * c.n);
    for (int j = 0; j < c.n; ++j) {
      if (j == k) continue;
      const cplx d = zk - c.roots[j];
      ratio *= checked_theta(d + h, params) / checked_theta(d - h, params);
    }
    g(k) = std::log(ratio);
  }
  return g;
}

Eigen::MatrixXcd log_jacobian(const BetheConfig& c, const EllipticParams& params) {
  const cplx h = params.hbar;
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(c.n, c.n);
  for (int k = 0; k < c.n; ++k) {
    const cplx zk = c.roots[k];
    J(k, k) = 2.0 * double(c.n) * (log_derivative(zk + c.a, params) - log_derivative(zk + c.a + h, params));
    for (int j = 0; j < c.n; ++j) {
      if (j == k) continue;
      const cplx d = zk - c.roots[j];
      const cplx w = log_derivative(d - h, params) - log_derivative(d + h, params);
      J(k, k) -= w;
      J(k, j) += w;
    }
  }
  return J;
}

bool collides(const std::vector<cplx>& roots, double tol, const EllipticParams& params) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (lattice_distance(roots[i] - roots[j], params) < tol) return true;
    }
  }
  return false;
}

std::vector<cplx> canonical_roots(const std::vector<cplx>& roots, const EllipticParams& params) {
  std::vector<cplx> out;
  for (cplx z : roots) out.push_back(lattice_reduce(z, params).rem);
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

bool canonical_less(const BetheSolution& a, const BetheSolution& b, const EllipticParams& params) {
  const auto ca = canonical_roots(a.config.roots, params);
  const auto cb = canonical_roots(b.config.roots, params);
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
}

}  // namespace

std::vector<cplx> elliptic_bethe_residual(const BetheConfig& cfg, const EllipticParams& params) {
  if (int(cfg.roots.size()) != cfg.n) throw ShapeError("Bethe configuration needs n roots");
  const cplx h = params.hbar;
  std::vector<cplx> out;
  for (int k = 0; k < cfg.n; ++k) {
    const cplx zk = cfg.roots[k];
    const cplx lhs =
        cfg.p * cfg.p * std::pow(checked_theta(zk + cfg.a, params) / checked_theta(zk + cfg.a + h, params), 2 * cfg.n);
    cplx rhs = 1.0;
    for (int j = 0; j < cfg.n; ++j) {
      if (j == k) continue;
      const cplx d = zk - cfg.roots[j];
      rhs *= checked_theta(d - h, params) / checked_theta(d + h, params);
    }
    out.push_back(lhs - rhs);
  }
  return out;
}

double elliptic_bethe_residual_norm(const BetheConfig& cfg, const EllipticParams& params) {
  double worst = 0.0;
  for (cplx r : elliptic_bethe_residual(cfg, params)) worst = std::max(worst, std::abs(r));
  return worst;
}

BetheSolution elliptic_bethe_newton(const BetheConfig& start, const EllipticParams& params,
                                    const NewtonOptions& opts) {
  if (start.n <= 0 || int(start.roots.size()) != start.n) throw ShapeError("Bethe configuration needs n > 0 roots");
  BetheConfig cur = start;
  std::vector<double> trace;
  auto fail = [&](const std::string& why) -> DivergenceError {
    std::ostringstream os;
    os << "Bethe Newton: " << why << "; |G| trace:";
    const std::size_t from = trace.size() > 8 ? trace.size() - 8 : 0;
    for (std::size_t i = from; i < trace.size(); ++i) os << ' ' << trace[i];
    return DivergenceError(os.str());
  };
  const double max_step = 0.25 * std::min(1.0, params.tau.imag());

  Eigen::VectorXcd g = log_residual(cur, params);
  double norm = g.cwiseAbs().maxCoeff();
  int it = 0;
  for (; it < opts.max_iter && norm > opts.tol; ++it) {
    trace.push_back(norm);
    Eigen::VectorXcd step = log_jacobian(cur, params).partialPivLu().solve(-g);
    if (!step.allFinite()) throw fail("singular Jacobian");
    const double len = step.cwiseAbs().maxCoeff();
    if (len > max_step) step *= max_step / len;
    if (len < 1e-15 && norm < 1e-11) break;

    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, lambda *= 0.5) {
      BetheConfig trial = cur;
      for (int k = 0; k < cur.n; ++k) trial.roots[k] += lambda * step(k);
      Eigen::VectorXcd gt;
      try {
        gt = log_residual(trial, params);
      } catch (const PoleError&) {
        continue;
      }
      const double nt = gt.cwiseAbs().maxCoeff();
      if (nt < norm) {
        cur = std::move(trial);
        g = std::move(gt);
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (norm < 1e-11) break;
      throw fail("line search stalled");
    }
  }
  if (norm > opts.tol && norm >= 1e-11) throw fail("no convergence after " + std::to_string(it) + " iterations");
  if (collides(cur.roots, opts.collision, params)) throw fail("roots collided");

  BetheSolution sol;
  sol.config = cur;
  sol.iterations = it;
  sol.residual = elliptic_bethe_residual_norm(cur, params);
  cplx sum = -double(cur.n) * cur.a;
  for (cplx z : cur.roots) sum += z;
  sol.sum_defect = lattice_reduce(sum, params).rem;
  sol.sum_rule = lattice_distance(sum, params) < opts.sum_rule_tol;
  return sol;
}

double root_set_distance(const std::vector<cplx>& a, const std::vector<cplx>& b, const EllipticParams& params) {
  if (a.size() != b.size()) return INFINITY;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (cplx z : a) {
    double best = INFINITY;
    std::size_t pick = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = lattice_distance(z - b[j], params);
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

BetheSolveResult elliptic_bethe_solve(int n, cplx a, cplx p, const std::vector<std::vector<cplx>>& seeds,
                                      const EllipticParams& params, const NewtonOptions& opts) {
  std::vector<std::future<BetheSolution>> runs;
  for (const auto& s : seeds) {
    BetheConfig start{n, a, p, s};
    runs.push_back(std::async(std::launch::async, [start, &params, &opts] {
      return elliptic_bethe_newton(start, params, opts);
    }));
  }
  BetheSolveResult out;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    try {
      BetheSolution sol = runs[i].get();
      const bool seen = std::any_of(out.solutions.begin(), out.solutions.end(), [&](const BetheSolution& s) {
        return root_set_distance(s.config.roots, sol.config.roots, params) < opts.dedup;
      });
      if (!seen) out.solutions.push_back(std::move(sol));
    } catch (const Error& e) {
      out.failures.push_back("seed " + std::to_string(i) + ": " + e.what());
    }
  }
  std::sort(out.solutions.begin(), out.solutions.end(),
            [&](const BetheSolution& x, const BetheSolution& y) { return canonical_less(x, y, params); });
  return out;
}

std::vector<std::vector<cplx>> bethe_seeds(int n, int count, std::uint64_t seed, const EllipticParams& params) {
  Sampler sampler(seed);
  std::vector<std::vector<cplx>> out;
  for (int i = 0; i < count; ++i) {
    std::vector<cplx> roots;
    for (int k = 0; k < n; ++k) roots.push_back(sampler.cell_point(params));
    out.push_back(std::move(roots));
  }
  return out;
}

YangianBetheRoots yangian_bethe_solve(cplx a1, cplx a2, cplx p, double tol) {
  const cplx A = p - 1.0;
  const cplx B = p * (a1 + a2 + 2.0) - (a1 + a2);
  const cplx C = p * (a1 + 1.0) * (a2 + 1.0) - a1 * a2;
  YangianBetheRoots out;
  if (std::abs(A) < tol) {
    out.linear = true;
    if (std::abs(B) >= tol) out.roots.push_back(-C / B);
    return out;
  }
  const cplx disc = (a1 - a2) * (a1 - a2) + 4.0 * p / (A * A);
  const double scale = std::max({1.0, std::norm(a1 - a2), std::abs(4.0 * p / (A * A))});
  out.degenerate = std::abs(disc) < tol * scale;
  const cplx root = std::sqrt(B * B - 4.0 * A * C);
  if (out.degenerate) {
    out.roots.push_back(-B / (2.0 * A));
  } else {
    out.roots.push_back((-B + root) / (2.0 * A));
    out.roots.push_back((-B - root) / (2.0 * A));
  }
  return out;
}

}  // namespace ellq
