#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ellq/errors.hpp"

namespace ellq {

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Modular parameter tau and Planck constant hbar, validated on construction.
///
/// Invariants: Im(tau) > 0, hbar != 0, and within |m|,|n|,|k| <= search_radius the
/// only solution of |m + n tau - k hbar| < lattice_tol is m = n = k = 0.
struct EllipticParams {
  cplx tau{0.0, 1.0};
  cplx hbar{0.31, 0.0};
  double lattice_tol = 1e-9;
  int search_radius = 8;

  EllipticParams() = default;
  EllipticParams(cplx tau, cplx hbar, double lattice_tol = 1e-9, int search_radius = 8);

  /// Throws ParameterError if any invariant fails.
  void validate() const;
};

/// Jacobi theta function, -sum_j exp(i pi (j+1/2)^2 tau + 2 i pi (j+1/2)(z+1/2)).
///
/// The series is summed outward from its dominant index and stops once the next term
/// drops below eps times the running partial sum (hard cap of 64 steps each way).
cplx theta_eval(cplx z, cplx tau, double eps = 1e-17);
cplx theta_eval(cplx z, const EllipticParams& params, double eps = 1e-17);

/// d/dz theta(z), same summation scheme.
cplx theta_derivative(cplx z, const EllipticParams& params, double eps = 1e-17);

struct LatticeReduction {
  cplx rem;    // Re in [0,1), Im in [0, Im tau) for real-skew-free tau
  long m = 0;  // coefficient of 1
  long n = 0;  // coefficient of tau
};

/// c = rem + m + n tau with rem in the fundamental cell.
LatticeReduction lattice_reduce(cplx c, const EllipticParams& params);

/// Distance from c to the nearest point of Z + Z tau.
double lattice_distance(cplx c, const EllipticParams& params);

/// Nearest point m + n tau of the period lattice.
cplx nearest_lattice_point(cplx c, const EllipticParams& params);

/// If d lies in l + hbar^{-1}(Z + Z tau) for an integer l, returns that l.
/// The scan covers |l| <= window (defaults to a radius derived from |d| and search_radius).
std::optional<long> integer_part(cplx d, const EllipticParams& params,
                                 std::optional<long> window = std::nullopt);

/// True iff d lies in hbar^{-1}(Z + Z tau).
bool in_scaled_lattice(cplx d, const EllipticParams& params);

/// theta(cz*z + cx*x + shift)^exponent.
struct ThetaFactor {
  int cz = 0;
  int cx = 0;
  cplx shift{};
  int exponent = 1;

  cplx argument(cplx z, cplx x) const { return double(cz) * z + double(cx) * x + shift; }
};

/// scalar * exp(lz*z + lx*x) * prod theta(cz*z + cx*x + shift)^exponent.
///
/// A scalar of exactly zero marks the zero expression.
class ThetaExpr {
 public:
  ThetaExpr() = default;

  static ThetaExpr constant(cplx c);
  static ThetaExpr zero() { return constant(0.0); }
  static ThetaExpr theta(int cz, int cx, cplx shift, int exponent = 1);
  static ThetaExpr exponential(cplx lz, cplx lx);

  cplx scalar() const { return scalar_; }
  cplx lambda_z() const { return lz_; }
  cplx lambda_x() const { return lx_; }
  const std::vector<ThetaFactor>& factors() const { return factors_; }
  bool is_zero() const { return scalar_ == cplx(0.0); }
  /// True when no factor depends on x and there is no x-exponential.
  bool x_free() const;

  ThetaExpr& operator*=(const ThetaExpr& o);
  ThetaExpr& operator*=(cplx c);
  friend ThetaExpr operator*(ThetaExpr a, const ThetaExpr& b) { return a *= b; }
  friend ThetaExpr operator*(ThetaExpr a, cplx c) { return a *= c; }
  friend ThetaExpr operator*(cplx c, ThetaExpr a) { return a *= c; }
  ThetaExpr operator-() const { return *this * cplx(-1.0); }
  /// Throws SingularityError on the zero expression.
  ThetaExpr inverse() const;
  friend ThetaExpr operator/(const ThetaExpr& a, const ThetaExpr& b) { return a * b.inverse(); }

  /// z -> z + c and x -> x + c respectively.
  ThetaExpr shifted_z(cplx c) const;
  ThetaExpr shifted_x(cplx c) const;
  /// z -> -z (used for reflections).
  ThetaExpr negated_z() const;

  /// Throws PoleError when a negative-exponent factor is within pole_margin of the lattice.
  cplx eval(cplx z, cplx x, const EllipticParams& params, double pole_margin = 0.0) const;

  /// Canonical form: sign-normalized arguments (leading variable coefficient positive),
  /// shifts reduced modulo 1 into Re in [0,1) with signs folded into the scalar, equal
  /// factors merged, constant theta factors folded into the scalar. Reduction modulo
  /// tau is opt-in; it updates the exponential prefactor.
  ThetaExpr canonical(const EllipticParams& params, bool reduce_tau = false) const;

  /// Key built from the exponential prefactor and the factor multiset of a canonical
  /// expression, rounded at 1e-9. The scalar is not part of the key.
  std::string shape_key() const;

  std::string to_string() const;

 private:
  cplx scalar_{1.0};
  cplx lz_{};
  cplx lx_{};
  std::vector<ThetaFactor> factors_;
};

/// Finite sum of ThetaExpr terms.
class ThetaSum {
 public:
  ThetaSum() = default;
  ThetaSum(ThetaExpr e);  // NOLINT(google-explicit-constructor)

  const std::vector<ThetaExpr>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ThetaSum& operator+=(const ThetaSum& o);
  ThetaSum& operator*=(const ThetaSum& o);
  ThetaSum& operator*=(cplx c);
  friend ThetaSum operator+(ThetaSum a, const ThetaSum& b) { return a += b; }
  friend ThetaSum operator-(ThetaSum a, ThetaSum b) { return a += (b *= cplx(-1.0)); }
  friend ThetaSum operator*(ThetaSum a, const ThetaSum& b) { return a *= b; }
  friend ThetaSum operator*(ThetaSum a, cplx c) { return a *= c; }

  ThetaSum shifted_z(cplx c) const;
  ThetaSum shifted_x(cplx c) const;

  cplx eval(cplx z, cplx x, const EllipticParams& params, double pole_margin = 0.0) const;

  /// Canonicalizes every term and merges terms of identical shape.
  ThetaSum canonical(const EllipticParams& params) const;

  std::string to_string() const;

 private:
  std::vector<ThetaExpr> terms_;
};

/// Seeded generator of generic points. The bit stream depends only on the seed.
struct SamplePlan {
  std::uint64_t seed = 42;
  int count = 20;
  double pole_margin = 1e-3;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed);

  /// Uniform double in [0, 1).
  double uniform();
  /// Uniform point u + v*tau of the fundamental parallelogram.
  cplx cell_point(const EllipticParams& params);
  /// cell_point redrawn until every value of offsets(point) is pole_margin away from the lattice.
  template <class Offsets>
  cplx generic_point(const EllipticParams& params, double pole_margin, Offsets offsets) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      const cplx p = cell_point(params);
      bool ok = true;
      for (const cplx& a : offsets(p)) {
        if (lattice_distance(a, params) < pole_margin) {
          ok = false;
          break;
        }
      }
      if (ok) return p;
    }
    throw ParameterError("could not draw a generic point");
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ellq
