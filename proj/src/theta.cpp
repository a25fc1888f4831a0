#include "ellq/theta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace ellq {

namespace {

cplx theta_term(double half, cplx z, cplx tau) {
  return std::exp(kI * kPi * half * half * tau + 2.0 * kI * kPi * half * (z + 0.5));
}

template <class Weight>
cplx theta_series(cplx z, cplx tau, double eps, Weight weight) {
  if (!(tau.imag() > 0.0)) throw ParameterError("theta series needs Im(tau) > 0");
  if (!(eps > 0.0)) throw ParameterError("theta series needs eps > 0");
  const long j0 = std::lround(-z.imag() / tau.imag() - 0.5);
  cplx sum = weight(j0 + 0.5) * theta_term(j0 + 0.5, z, tau);
  for (long s = 1; s <= 64; ++s) {
    const double hp = double(j0 + s) + 0.5;
    const double hm = double(j0 - s) + 0.5;
    const cplx tp = weight(hp) * theta_term(hp, z, tau);
    const cplx tm = weight(hm) * theta_term(hm, z, tau);
    sum += tp + tm;
    const double bound = eps * std::abs(sum);
    const double next = std::max(std::abs(tp), std::abs(tm));
    if (next < bound || next < 1e-300) break;
  }
  return -sum;
}

std::string fmt(cplx c) {
  std::ostringstream os;
  os.precision(6);
  os << c.real();
  if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

long rounded(double v) { return std::lround(v * 1e9); }

cplx ipow(cplx base, int e) {
  cplx r = 1.0;
  cplx b = e < 0 ? 1.0 / base : base;
  for (unsigned k = unsigned(std::abs(e)); k; k >>= 1) {
    if (k & 1U) r *= b;
    b *= b;
  }
  return r;
}

}  // namespace

EllipticParams::EllipticParams(cplx tau_, cplx hbar_, double tol, int radius)
    : tau(tau_), hbar(hbar_), lattice_tol(tol), search_radius(radius) {
  validate();
}

void EllipticParams::validate() const {
  if (!(tau.imag() > 0.0)) throw ParameterError("tau must have positive imaginary part");
  if (hbar == cplx(0.0)) throw ParameterError("hbar must be nonzero");
  if (!(lattice_tol > 0.0)) throw ParameterError("lattice_tol must be positive");
  if (search_radius < 1) throw ParameterError("search_radius must be positive");
  const int r = search_radius;
  for (int k = 1; k <= r; ++k) {
    for (int n = -r; n <= r; ++n) {
      for (int m = -r; m <= r; ++m) {
        if (std::abs(double(m) + double(n) * tau - double(k) * hbar) < lattice_tol) {
          std::ostringstream os;
          os << "hbar is not generic: " << m << " + " << n << "*tau = " << k << "*hbar";
          throw ParameterError(os.str());
        }
      }
    }
  }
}

cplx theta_eval(cplx z, cplx tau, double eps) {
  return theta_series(z, tau, eps, [](double) { return 1.0; });
}

cplx theta_eval(cplx z, const EllipticParams& params, double eps) {
  return theta_eval(z, params.tau, eps);
}

cplx theta_derivative(cplx z, const EllipticParams& params, double eps) {
  return theta_series(z, params.tau, eps, [](double h) { return 2.0 * kI * kPi * h; });
}

LatticeReduction lattice_reduce(cplx c, const EllipticParams& params) {
  LatticeReduction r;
  r.n = long(std::floor(c.imag() / params.tau.imag()));
  cplx c1 = c - double(r.n) * params.tau;
  r.m = long(std::floor(c1.real()));
  r.rem = c1 - double(r.m);
  return r;
}

cplx nearest_lattice_point(cplx c, const EllipticParams& params) {
  const LatticeReduction r = lattice_reduce(c, params);
  cplx best{};
  double dist = INFINITY;
  for (int b = -1; b <= 2; ++b) {
    for (int a = -1; a <= 2; ++a) {
      const cplx corner = double(a) + double(b) * params.tau;
      const double d = std::abs(r.rem - corner);
      if (d < dist) {
        dist = d;
        best = corner;
      }
    }
  }
  return best + double(r.m) + double(r.n) * params.tau;
}

double lattice_distance(cplx c, const EllipticParams& params) {
  return std::abs(c - nearest_lattice_point(c, params));
}

std::optional<long> integer_part(cplx d, const EllipticParams& params, std::optional<long> window) {
  const long w = window ? *window : long(std::ceil(std::abs(d))) + 2L * params.search_radius;
  for (long l = -w; l <= w; ++l) {
    if (lattice_distance((d - double(l)) * params.hbar, params) < params.lattice_tol) return l;
  }
  return std::nullopt;
}

bool in_scaled_lattice(cplx d, const EllipticParams& params) {
  return lattice_distance(d * params.hbar, params) < params.lattice_tol;
}

ThetaExpr ThetaExpr::constant(cplx c) {
  ThetaExpr e;
  e.scalar_ = c;
  return e;
}

ThetaExpr ThetaExpr::theta(int cz, int cx, cplx shift, int exponent) {
  if (cz < -1 || cz > 1 || cx < -1 || cx > 1) throw ShapeError("theta factor coefficients must lie in {-1,0,1}");
  ThetaExpr e;
  if (exponent != 0) e.factors_.push_back({cz, cx, shift, exponent});
  return e;
}

ThetaExpr ThetaExpr::exponential(cplx lz, cplx lx) {
  ThetaExpr e;
  e.lz_ = lz;
  e.lx_ = lx;
  return e;
}

bool ThetaExpr::x_free() const {
  if (lx_ != cplx(0.0)) return false;
  return std::none_of(factors_.begin(), factors_.end(), [](const ThetaFactor& f) { return f.cx != 0; });
}

ThetaExpr& ThetaExpr::operator*=(const ThetaExpr& o) {
  scalar_ *= o.scalar_;
  if (is_zero()) {
    *this = zero();
    return *this;
  }
  lz_ += o.lz_;
  lx_ += o.lx_;
  factors_.insert(factors_.end(), o.factors_.begin(), o.factors_.end());
  return *this;
}

ThetaExpr& ThetaExpr::operator*=(cplx c) {
  scalar_ *= c;
  if (is_zero()) *this = zero();
  return *this;
}

ThetaExpr ThetaExpr::inverse() const {
  if (is_zero()) throw SingularityError("inverse of the zero theta expression");
  ThetaExpr e = *this;
  e.scalar_ = 1.0 / scalar_;
  e.lz_ = -lz_;
  e.lx_ = -lx_;
  for (auto& f : e.factors_) f.exponent = -f.exponent;
  return e;
}

ThetaExpr ThetaExpr::shifted_z(cplx c) const {
  ThetaExpr e = *this;
  e.scalar_ *= std::exp(lz_ * c);
  for (auto& f : e.factors_) f.shift += double(f.cz) * c;
  return e;
}

ThetaExpr ThetaExpr::shifted_x(cplx c) const {
  ThetaExpr e = *this;
  e.scalar_ *= std::exp(lx_ * c);
  for (auto& f : e.factors_) f.shift += double(f.cx) * c;
  return e;
}

ThetaExpr ThetaExpr::negated_z() const {
  ThetaExpr e = *this;
  e.lz_ = -lz_;
  for (auto& f : e.factors_) f.cz = -f.cz;
  return e;
}

cplx ThetaExpr::eval(cplx z, cplx x, const EllipticParams& params, double pole_margin) const {
  if (is_zero()) return 0.0;
  cplx value = scalar_ * std::exp(lz_ * z + lx_ * x);
  for (const auto& f : factors_) {
    const cplx arg = f.argument(z, x);
    if (f.exponent < 0 && pole_margin > 0.0 && lattice_distance(arg, params) < pole_margin) {
      throw PoleError("pole of theta(" + fmt(arg) + ")^" + std::to_string(f.exponent) + " in " + to_string());
    }
    const cplx t = theta_eval(arg, params);
    if (f.exponent < 0 && t == cplx(0.0)) throw PoleError("theta factor vanishes in " + to_string());
    value *= f.exponent == 1 ? t : ipow(t, f.exponent);
  }
  return value;
}

ThetaExpr ThetaExpr::canonical(const EllipticParams& params, bool reduce_tau) const {
  if (is_zero()) return zero();
  ThetaExpr out;
  out.scalar_ = scalar_;
  out.lz_ = lz_;
  out.lx_ = lx_;
  std::vector<ThetaFactor> kept;
  for (ThetaFactor f : factors_) {
    if (f.exponent == 0) continue;
    if (f.cz == 0 && f.cx == 0) {
      if (lattice_distance(f.shift, params) < params.lattice_tol) {
        if (f.exponent > 0) return zero();
        throw PoleError("constant theta factor at a lattice point: theta(" + fmt(f.shift) + ")");
      }
      out.scalar_ *= ipow(theta_eval(f.shift, params), f.exponent);
      continue;
    }
    if (f.cz < 0 || (f.cz == 0 && f.cx < 0)) {
      f.cz = -f.cz;
      f.cx = -f.cx;
      f.shift = -f.shift;
      if (f.exponent % 2 != 0) out.scalar_ = -out.scalar_;
    }
    if (reduce_tau) {
      const long n = long(std::floor(f.shift.imag() / params.tau.imag() + 1e-12));
      if (n != 0) {
        const cplx s0 = f.shift - double(n) * params.tau;
        const double dn = double(n);
        const cplx mult = std::exp(-kI * kPi * dn * dn * params.tau - 2.0 * kI * kPi * dn * s0);
        const cplx sign = (n % 2 != 0) ? -1.0 : 1.0;
        out.scalar_ *= ipow(sign * mult, f.exponent);
        out.lz_ += -2.0 * kI * kPi * dn * double(f.exponent * f.cz);
        out.lx_ += -2.0 * kI * kPi * dn * double(f.exponent * f.cx);
        f.shift = s0;
      }
    }
    long m = long(std::floor(f.shift.real()));
    f.shift -= double(m);
    if (f.shift.real() > 1.0 - 1e-11) {
      f.shift -= 1.0;
      ++m;
    }
    if ((m * f.exponent) % 2 != 0) out.scalar_ = -out.scalar_;
    kept.push_back(f);
  }
  std::sort(kept.begin(), kept.end(), [](const ThetaFactor& a, const ThetaFactor& b) {
    if (a.cz != b.cz) return a.cz < b.cz;
    if (a.cx != b.cx) return a.cx < b.cx;
    if (rounded(a.shift.real()) != rounded(b.shift.real())) return a.shift.real() < b.shift.real();
    return a.shift.imag() < b.shift.imag();
  });
  for (const auto& f : kept) {
    if (!out.factors_.empty()) {
      ThetaFactor& last = out.factors_.back();
      if (last.cz == f.cz && last.cx == f.cx && std::abs(last.shift - f.shift) < 1e-11) {
        last.exponent += f.exponent;
        if (last.exponent == 0) out.factors_.pop_back();
        continue;
      }
    }
    out.factors_.push_back(f);
  }
  return out;
}

std::string ThetaExpr::shape_key() const {
  std::ostringstream os;
  os << rounded(lz_.real()) << ',' << rounded(lz_.imag()) << ',' << rounded(lx_.real()) << ','
     << rounded(lx_.imag());
  for (const auto& f : factors_) {
    os << '|' << f.cz << ',' << f.cx << ',' << rounded(f.shift.real()) << ',' << rounded(f.shift.imag())
       << '^' << f.exponent;
  }
  return os.str();
}

std::string ThetaExpr::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  os << fmt(scalar_);
  if (lz_ != cplx(0.0) || lx_ != cplx(0.0)) os << "*exp(" << fmt(lz_) << "*z+" << fmt(lx_) << "*x)";
  for (const auto& f : factors_) {
    os << "*th(";
    bool any = false;
    if (f.cz != 0) {
      os << (f.cz < 0 ? "-z" : "z");
      any = true;
    }
    if (f.cx != 0) {
      os << (f.cx < 0 ? "-x" : (any ? "+x" : "x"));
      any = true;
    }
    if (f.shift != cplx(0.0) || !any) os << (any ? "+" : "") << fmt(f.shift);
    os << ")";
    if (f.exponent != 1) os << "^" << f.exponent;
  }
  return os.str();
}

ThetaSum::ThetaSum(ThetaExpr e) {
  if (!e.is_zero()) terms_.push_back(std::move(e));
}

ThetaSum& ThetaSum::operator+=(const ThetaSum& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

ThetaSum& ThetaSum::operator*=(const ThetaSum& o) {
  std::vector<ThetaExpr> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) out.push_back(a * b);
  }
  terms_ = std::move(out);
  return *this;
}

ThetaSum& ThetaSum::operator*=(cplx c) {
  if (c == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t *= c;
  return *this;
}

ThetaSum ThetaSum::shifted_z(cplx c) const {
  ThetaSum s;
  for (const auto& t : terms_) s.terms_.push_back(t.shifted_z(c));
  return s;
}

ThetaSum ThetaSum::shifted_x(cplx c) const {
  ThetaSum s;
  for (const auto& t : terms_) s.terms_.push_back(t.shifted_x(c));
  return s;
}

cplx ThetaSum::eval(cplx z, cplx x, const EllipticParams& params, double pole_margin) const {
  cplx v = 0.0;
  for (const auto& t : terms_) v += t.eval(z, x, params, pole_margin);
  return v;
}

ThetaSum ThetaSum::canonical(const EllipticParams& params) const {
  std::map<std::string, ThetaExpr> merged;
  std::map<std::string, double> mass;
  for (const auto& t : terms_) {
    ThetaExpr c = t.canonical(params);
    if (c.is_zero()) continue;
    const std::string key = c.shape_key();
    auto it = merged.find(key);
    mass[key] += std::abs(c.scalar());
    if (it == merged.end()) {
      merged.emplace(key, c);
    } else {
      ThetaExpr unit = c * (1.0 / c.scalar());
      it->second = unit * (it->second.scalar() + c.scalar());
    }
  }
  ThetaSum s;
  for (auto& [key, e] : merged) {
    if (std::abs(e.scalar()) > 1e-14 * mass[key]) s.terms_.push_back(e);
  }
  return s;
}

std::string ThetaSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += " + ";
    s += terms_[i].to_string();
  }
  return s;
}

Sampler::Sampler(std::uint64_t seed) : engine_(seed) {}

double Sampler::uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

cplx Sampler::cell_point(const EllipticParams& params) {
  const double u = uniform();
  const double v = uniform();
  return u + v * params.tau;
}

}  // namespace ellq
