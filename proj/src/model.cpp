#include "circlens/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace circlens {

namespace {

constexpr double kEvenTol = 1e-12;

void check_even(const KernelFamily::RealFn& g, double radius) {
  const double span = radius > 0.0 ? radius : 1.0;
  for (int k = 0; k <= 64; ++k) {
    // irregular grid, including points past the radius
    const double u = span * (0.013 + 1.37 * k / 64.0) * (1.0 + 0.1 * std::sin(k));
    const double a = g(u), b = g(-u);
    if (!std::isfinite(a) || !std::isfinite(b))
      throw std::invalid_argument("real_even: g is not finite at u = " + std::to_string(u));
    if (std::abs(a - b) > kEvenTol)
      throw std::invalid_argument("real_even: g is not even at u = " + std::to_string(u));
  }
}

}  // namespace

double gaussian_decay_radius(double c, int d) {
  const double arg = std::log(std::pow(c, -0.5 * d) * 1e18);
  if (arg <= 0.0) return 0.0;
  return std::sqrt(c / std::numbers::pi * arg);
}

KernelFamily KernelFamily::gaussian(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("gaussian: c must be positive");
  KernelFamily f;
  f.kind_ = FamilyKind::RealEven;
  f.builtin_ = Builtin::Gaussian;
  f.c_ = c;
  f.radius_ = gaussian_decay_radius(c, 1);
  return f;
}

KernelFamily KernelFamily::gaussian_d(double c, int d) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("gaussian_d: c must be positive");
  if (d < 1) throw std::invalid_argument("gaussian_d: d must be positive");
  KernelFamily f;
  f.kind_ = FamilyKind::RealEvenD;
  f.builtin_ = Builtin::GaussianD;
  f.c_ = c;
  f.d_ = d;
  f.radius_ = gaussian_decay_radius(c, d);
  return f;
}

KernelFamily KernelFamily::inverse_argument(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("inverse_argument: eps must be positive");
  KernelFamily f;
  f.kind_ = FamilyKind::ComplexOdd;
  f.builtin_ = Builtin::InverseArgument;
  f.eps_ = eps;
  return f;
}

KernelFamily KernelFamily::real_even(RealFn g, double decay_radius) {
  if (!g) throw std::invalid_argument("real_even: empty callable");
  if (!(decay_radius >= 0.0) || !std::isfinite(decay_radius))
    throw std::invalid_argument("real_even: decay radius must be finite and nonnegative");
  check_even(g, decay_radius);
  KernelFamily f;
  f.kind_ = FamilyKind::RealEven;
  f.g1_ = std::move(g);
  f.radius_ = decay_radius;
  return f;
}

KernelFamily KernelFamily::complex_odd(ComplexFn h, double eps) {
  if (!h) throw std::invalid_argument("complex_odd: empty callable");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("complex_odd: eps must be positive");
  for (int k = 1; k <= 32; ++k) {
    const double u = 0.07 * k * (1.0 + 0.1 * std::sin(k));
    if (std::abs(h(u) + h(-u)) > kEvenTol * std::max(1.0, std::abs(h(u))))
      throw std::invalid_argument("complex_odd: h is not odd at u = " + std::to_string(u));
  }
  KernelFamily f;
  f.kind_ = FamilyKind::ComplexOdd;
  f.h_ = std::move(h);
  f.eps_ = eps;
  return f;
}

KernelFamily KernelFamily::real_even_d(VectorFn g, int d, double decay_radius) {
  if (!g) throw std::invalid_argument("real_even_d: empty callable");
  if (d < 1) throw std::invalid_argument("real_even_d: d must be positive");
  if (!(decay_radius >= 0.0) || !std::isfinite(decay_radius))
    throw std::invalid_argument("real_even_d: decay radius must be finite and nonnegative");
  std::vector<double> u(d), v(d);
  const double span = decay_radius > 0.0 ? decay_radius : 1.0;
  for (int k = 0; k < 32; ++k) {
    for (int i = 0; i < d; ++i) {
      u[i] = span * std::sin(1.3 * k + 0.7 * i + 0.1);
      v[i] = -u[i];
    }
    if (std::abs(g(u) - g(v)) > kEvenTol) throw std::invalid_argument("real_even_d: g is not even");
  }
  KernelFamily f;
  f.kind_ = FamilyKind::RealEvenD;
  f.gd_ = std::move(g);
  f.d_ = d;
  f.radius_ = decay_radius;
  return f;
}

double KernelFamily::g(double u) const {
  if (kind_ == FamilyKind::ComplexOdd) throw std::invalid_argument("g: family is complex odd");
  if (kind_ == FamilyKind::RealEvenD && d_ != 1) throw std::invalid_argument("g: family needs a d-vector");
  if (builtin_ == Builtin::Gaussian || builtin_ == Builtin::GaussianD)
    return std::exp(-std::numbers::pi * u * u / c_) / std::sqrt(c_);
  if (kind_ == FamilyKind::RealEvenD) {
    const double a[1] = {u};
    return gd_(a);
  }
  return g1_(u);
}

double KernelFamily::g(std::span<const double> u) const {
  if (kind_ == FamilyKind::ComplexOdd) throw std::invalid_argument("g: family is complex odd");
  if (static_cast<int>(u.size()) != d_) throw std::invalid_argument("g: argument has wrong dimension");
  if (is_gaussian()) {
    double r2 = 0.0;
    for (double x : u) r2 += x * x;
    return std::pow(c_, -0.5 * d_) * std::exp(-std::numbers::pi * r2 / c_);
  }
  if (kind_ == FamilyKind::RealEven) return g1_(u[0]);
  return gd_(u);
}

std::complex<double> KernelFamily::h(double u) const {
  if (kind_ != FamilyKind::ComplexOdd) throw std::invalid_argument("h: family is not complex odd");
  if (builtin_ == Builtin::InverseArgument) return 1.0 / u;
  return h_(u);
}

std::string KernelFamily::describe() const {
  std::ostringstream os;
  switch (builtin_) {
    case Builtin::Gaussian: os << "gaussian(c=" << c_ << ")"; break;
    case Builtin::GaussianD: os << "gaussian_d(c=" << c_ << ", d=" << d_ << ")"; break;
    case Builtin::InverseArgument: os << "inverse_argument(eps=" << eps_ << ")"; break;
    case Builtin::None:
      if (kind_ == FamilyKind::ComplexOdd) os << "complex_odd(eps=" << eps_ << ")";
      else if (kind_ == FamilyKind::RealEvenD) os << "real_even_d(d=" << d_ << ", R=" << radius_ << ")";
      else os << "real_even(R=" << radius_ << ")";
      break;
  }
  return os.str();
}

CirculantEnsemble::CirculantEnsemble(int M, double L, double z, KernelFamily family)
    : M_(M), L_(L), z_(z), family_(std::move(family)) {
  if (family_.kind() == FamilyKind::ComplexOdd)
    throw std::invalid_argument("CirculantEnsemble: complex odd families are continuum only");
  if (M < 1) throw std::invalid_argument("CirculantEnsemble: M must be at least 1");
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("CirculantEnsemble: L must be positive");
  if (!(z >= 0.0) || !std::isfinite(z)) throw std::invalid_argument("CirculantEnsemble: z must be nonnegative");
}

CirculantEnsemble::CirculantEnsemble(double L, double z, KernelFamily family)
    : M_(0), L_(L), z_(z), family_(std::move(family)) {
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("CirculantEnsemble: L must be positive");
  if (!(z >= 0.0) || !std::isfinite(z)) throw std::invalid_argument("CirculantEnsemble: z must be nonnegative");
}

CirculantEnsemble CirculantEnsemble::continuum(double L, double z, KernelFamily family) {
  return CirculantEnsemble(L, z, std::move(family));
}

CirculantEnsemble CirculantEnsemble::with_z(double z) const {
  if (is_continuum()) return continuum(L_, z, family_);
  return CirculantEnsemble(M_, L_, z, family_);
}

GasParams fermion_to_gas(const FermionParams& p) {
  if (!(p.beta > 0.0)) throw std::invalid_argument("fermion_to_gas: beta must be positive");
  return {4.0 * std::numbers::pi * p.beta, std::exp(p.beta * p.mu)};
}

FermionParams gas_to_fermion(const GasParams& g) {
  if (!(g.c > 0.0)) throw std::invalid_argument("gas_to_fermion: c must be positive");
  if (!(g.z > 0.0)) throw std::invalid_argument("gas_to_fermion: z must be positive");
  const double beta = g.c / (4.0 * std::numbers::pi);
  return {beta, std::log(g.z) / beta};
}

int first_mode(int M) {
  // floor(-M/2) + 1 with C++ truncating division
  return -(M / 2) - (M % 2) + 1;
}

int last_mode(int M) { return M / 2; }

double chord(int s, int M, double L) {
  return L / std::numbers::pi * std::sin(std::numbers::pi * s / M);
}

std::complex<double> generating_function(const KernelFamily& family, int M, double L,
                                         std::complex<double> zeta) {
  if (family.kind() == FamilyKind::ComplexOdd)
    throw std::invalid_argument("generating_function: complex odd family");
  if (M < 1) throw std::invalid_argument("generating_function: M must be at least 1");
  if (!(L > 0.0)) throw std::invalid_argument("generating_function: L must be positive");
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
    throw std::invalid_argument("generating_function: zeta must lie on the unit circle");
  const double theta = std::arg(zeta);
  std::complex<double> sum{};
  for (int s = first_mode(M); s <= last_mode(M); ++s)
    sum += family.g(chord(s, M, L)) * std::polar(1.0, theta * s);
  return sum;
}

}  // namespace circlens
