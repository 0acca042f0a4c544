#include "circlens/spectral_limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "circlens/errors.hpp"

namespace circlens {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegativeTol = -1e-10;
// -log(1e-16)
const double kLogCutoff = -std::log(kSpectralCutoff);

// x / (1 + x) for x = z lambda >= 0
double occupation(double x) { return x / (1.0 + x); }

// 1 / (e^x + 1) without overflow
double fermi(double x) {
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

// log(1 + e^x)
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

void require_real_even(const KernelFamily& f, const char* who) {
  if (f.kind() == FamilyKind::ComplexOdd)
    throw std::invalid_argument(std::string(who) + ": needs a real even family");
  if (f.kind() == FamilyKind::RealEvenD && f.dimension() != 1)
    throw std::invalid_argument(std::string(who) + ": family must be one dimensional");
}

void require_z(double z, const char* who) {
  if (!(z >= 0.0) || !std::isfinite(z)) throw std::invalid_argument(std::string(who) + ": z must be nonnegative");
}

// Gaussian: z e^{-pi c s^2} >= 1e-16 for |s| <= returned value.
double gaussian_support(double c, double z) {
  if (!(z > kSpectralCutoff)) return 0.0;
  return std::sqrt((std::log(z) + kLogCutoff) / (kPi * c));
}

// Half-period grid for e^{2 pi i r s} on [a, b].
std::vector<double> oscillation_cuts(double a, double b, double r) {
  if (r == 0.0 || b <= a) return {a, b};
  return uniform_cuts(a, b, 0.5 / std::abs(r));
}

// lambda(s) = 2 int_0^R g(t) cos(2 pi s t) dt for a user family.
IntegrationResult<double> numeric_transform(const KernelFamily& f, double s) {
  const double R = f.decay_radius();
  if (!(R > 0.0)) throw std::invalid_argument("numeric transform: family has zero decay radius");
  const auto cuts = oscillation_cuts(0.0, R, s);
  auto r = integrate([&](double t) { return 2.0 * f.g(t) * std::cos(2.0 * kPi * s * t); },
                     std::span<const double>(cuts));
  return r;
}

// Scan outward until z |lambda| < 1e-16 (or below the quadrature noise) on
// eight consecutive grid points.
double numeric_support(const KernelFamily& f, double z) {
  if (!(z > 0.0)) return 0.0;
  const double step = 1.0 / (8.0 * f.decay_radius());
  int quiet = 0;
  for (int k = 1; k <= 16384; ++k) {
    const double s = step * k;
    const auto r = numeric_transform(f, s);
    const bool small = z * std::abs(r.value) < kSpectralCutoff || std::abs(r.value) <= 16.0 * r.error;
    quiet = small ? quiet + 1 : 0;
    if (quiet == 8) return step * (k - 7);
  }
  throw NumericalError("spectral density: truncation bound not reached");
}

double check_nonnegative(double v, const char* who) {
  if (v < kNegativeTol) throw std::invalid_argument(std::string(who) + ": negative spectral density " + std::to_string(v));
  return std::max(v, 0.0);
}

}  // namespace

// ---------------------------------------------------------------------------

SpectralDensity SpectralDensity::thermo(const KernelFamily& family) {
  SpectralDensity sd;
  if (family.kind() == FamilyKind::ComplexOdd) {
    if (family.builtin() != Builtin::InverseArgument)
      throw std::invalid_argument("thermo spectral density: only h(u) = 1/u is supported for complex families");
    const double eps = family.eps();
    sd.regime_ = Regime::ComplexThermo;
    sd.closed_form_ = true;
    sd.even_ = false;
    sd.eval_ = [eps](double s) { return complex_thermo_spectral_density(eps, s); };
    sd.range_ = [eps](double z) -> std::vector<double> {
      if (!(2.0 * kPi * z > kSpectralCutoff)) return {0.0};
      const double a = std::log(2.0 * kPi * z);
      const double top = (a + kLogCutoff) / (4.0 * kPi * eps);
      std::vector<double> b{0.0, top};
      const double fermi_point = a / (4.0 * kPi * eps);
      if (fermi_point > 0.0 && fermi_point < top) b.insert(b.begin() + 1, fermi_point);
      return b;
    };
    return sd;
  }
  require_real_even(family, "thermo spectral density");
  sd.regime_ = Regime::Thermo;
  if (family.is_gaussian()) {
    const double c = family.c();
    sd.closed_form_ = true;
    sd.eval_ = [c](double s) { return std::exp(-kPi * c * s * s); };
    sd.range_ = [c](double z) -> std::vector<double> {
      const double top = gaussian_support(c, z);
      if (top == 0.0) return {0.0};
      std::vector<double> b{0.0, top};
      if (z > 1.0) b.insert(b.begin() + 1, std::sqrt(std::log(z) / (kPi * c)));
      return b;
    };
    return sd;
  }
  sd.eval_ = [family](double s) { return numeric_transform(family, s).value; };
  sd.range_ = [family](double z) -> std::vector<double> {
    const double top = numeric_support(family, z);
    if (top == 0.0) return {0.0};
    return uniform_cuts(0.0, top, std::max(top / 16.0, 1.0 / (8.0 * family.decay_radius())));
  };
  return sd;
}

SpectralDensity SpectralDensity::lattice(const KernelFamily& family, double tau) {
  require_real_even(family, "lattice spectral density");
  if (!(tau > 0.0)) throw std::invalid_argument("lattice spectral density: tau must be positive");
  SpectralDensity sd;
  sd.regime_ = Regime::Lattice;
  sd.eval_ = [family, tau](double t) { return lattice_spectral_density(family, tau, t); };
  sd.range_ = [](double z) -> std::vector<double> {
    if (!(z > 0.0)) return {0.0};
    return {0.0, 0.5};
  };
  return sd;
}

SpectralDensity SpectralDensity::thermo_d(double c, int d) {
  if (!(c > 0.0)) throw std::invalid_argument("thermo_d: c must be positive");
  if (d < 1) throw std::invalid_argument("thermo_d: d must be positive");
  SpectralDensity sd;
  sd.regime_ = Regime::ThermoD;
  sd.closed_form_ = true;
  // radial argument |s|
  sd.eval_ = [c](double s) { return std::exp(-kPi * c * s * s); };
  sd.range_ = [c](double z) -> std::vector<double> {
    const double top = gaussian_support(c, z);
    if (top == 0.0) return {0.0};
    std::vector<double> b{0.0, top};
    if (z > 1.0) b.insert(b.begin() + 1, std::sqrt(std::log(z) / (kPi * c)));
    return b;
  };
  return sd;
}

std::vector<double> SpectralDensity::breakpoints(double z) const {
  require_z(z, "breakpoints");
  return range_(z);
}

// ---------------------------------------------------------------------------

std::complex<double> CorrelationKernel::at(double r) const {
  if (breakpoints.size() < 2) return 0.0;
  const double lo = breakpoints.front(), hi = breakpoints.back();
  const auto cuts = merge_cuts(oscillation_cuts(lo, hi, r), breakpoints);
  const std::span<const double> span(cuts);
  if (even) {
    const auto res = integrate([&](double s) { return 2.0 * weight(s) * std::cos(2.0 * kPi * r * s); }, span);
    return res.value;
  }
  const auto res = integrate([&](double s) { return weight(s) * std::polar(1.0, 2.0 * kPi * r * s); }, span);
  return res.value;
}

double CorrelationKernel::density() const { return at(0.0).real(); }

QuadratureRule CorrelationKernel::spectral_rule(double max_separation) const {
  QuadratureRule rule;
  if (breakpoints.size() < 2) return rule;
  const double lo = breakpoints.front(), hi = breakpoints.back();
  // quarter periods at the largest separation, then refine for the weight itself
  const double step = max_separation > 0.0 ? 0.25 / max_separation : (hi - lo);
  const auto grid = merge_cuts(uniform_cuts(lo, hi, step), breakpoints);
  IntegrationOptions opt;
  opt.rel_tol = 1e-14;
  const auto cuts = adaptive_cuts([&](double s) { return weight(s); }, std::span<const double>(grid), opt);
  const QuadratureRule base = composite_rule(cuts, 16);
  rule.nodes.reserve(base.size() * (even ? 2 : 1));
  rule.weights.reserve(base.size() * (even ? 2 : 1));
  for (std::size_t q = 0; q < base.size(); ++q) {
    const double w = base.weights[q] * weight(base.nodes[q]);
    rule.nodes.push_back(base.nodes[q]);
    rule.weights.push_back(w);
    if (even) {
      rule.nodes.push_back(-base.nodes[q]);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

// ---------------------------------------------------------------------------
// lattice

double lattice_spectral_density(const KernelFamily& family, double tau, double t) {
  require_real_even(family, "lattice_spectral_density");
  if (!(tau > 0.0)) throw std::invalid_argument("lattice_spectral_density: tau must be positive");
  const double terms = std::ceil(family.decay_radius() / tau);
  if (terms > 1e7) throw NumericalError("lattice_spectral_density: too many terms");
  const long n = static_cast<long>(terms);
  double sum = 0.0;
  // smallest terms first
  for (long s = n; s >= 1; --s) sum += 2.0 * family.g(tau * s) * std::cos(2.0 * kPi * s * t);
  return sum + family.g(0.0);
}

namespace {

template <class F>
double lattice_integral(const KernelFamily& family, double tau, double z, double freq, F&& integrand) {
  require_real_even(family, "lattice");
  require_z(z, "lattice");
  if (z == 0.0) return 0.0;
  const auto cuts = oscillation_cuts(0.0, 0.5, freq);
  const auto r = integrate(
      [&](double t) {
        const double f = check_nonnegative(lattice_spectral_density(family, tau, t), "lattice");
        return 2.0 * integrand(t, z * f);
      },
      std::span<const double>(cuts));
  return r.value;
}

}  // namespace

double lattice_pressure(const KernelFamily& family, double tau, double z) {
  return lattice_integral(family, tau, z, 0.0, [](double, double x) { return std::log1p(x); });
}

double lattice_density(const KernelFamily& family, double tau, double z) {
  return lattice_integral(family, tau, z, 0.0, [](double, double x) { return occupation(x); });
}

double lattice_kernel(const KernelFamily& family, double tau, double z, long j) {
  const double freq = static_cast<double>(j);
  return lattice_integral(family, tau, z, freq,
                          [freq](double t, double x) { return std::cos(2.0 * kPi * freq * t) * occupation(x); });
}

// ---------------------------------------------------------------------------
// finite L

namespace {

IntegrationResult<double> finite_L_eigenvalue_result(const KernelFamily& family, double L, int p) {
  require_real_even(family, "finite_L_eigenvalue");
  if (!(L > 0.0)) throw std::invalid_argument("finite_L_eigenvalue: L must be positive");
  const double ratio = kPi * family.decay_radius() / L;
  const double top = ratio < 1.0 ? std::asin(ratio) / kPi : 0.5;
  if (top == 0.0) return {};
  const auto cuts = oscillation_cuts(0.0, top, p);
  return integrate(
      [&](double t) { return 2.0 * L * family.g(L / kPi * std::sin(kPi * t)) * std::cos(2.0 * kPi * p * t); },
      std::span<const double>(cuts));
}

}  // namespace

double finite_L_eigenvalue(const KernelFamily& family, double L, int p) {
  return finite_L_eigenvalue_result(family, L, p).value;
}

std::vector<double> finite_L_spectrum(const KernelFamily& family, double L, double z) {
  require_z(z, "finite_L_spectrum");
  std::vector<double> lambda;
  if (z == 0.0) return lambda;
  int quiet = 0;
  for (int p = 0; p <= 1000000; ++p) {
    const auto r = finite_L_eigenvalue_result(family, L, p);
    // below the quadrature noise the sign is meaningless
    const bool noise = std::abs(r.value) <= 16.0 * r.error;
    const double v = noise ? std::max(r.value, 0.0) : check_nonnegative(r.value, "finite_L_spectrum");
    const bool small = z * v < kSpectralCutoff || noise;
    if (small) {
      if (++quiet == 4) {
        lambda.resize(lambda.size() - 3);
        return lambda;
      }
    } else {
      quiet = 0;
    }
    lambda.push_back(v);
  }
  throw NumericalError("finite_L_spectrum: truncation bound not reached");
}

double finite_L_log_partition(const KernelFamily& family, double L, double z) {
  const auto lambda = finite_L_spectrum(family, L, z);
  double sum = 0.0;
  for (std::size_t p = lambda.size(); p-- > 1;) sum += 2.0 * std::log1p(z * lambda[p]);
  if (!lambda.empty()) sum += std::log1p(z * lambda[0]);
  return sum;
}

std::complex<double> finite_L_kernel(const KernelFamily& family, double L, double z, double X, double Y) {
  const auto lambda = finite_L_spectrum(family, L, z);
  if (lambda.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t p = lambda.size(); p-- > 1;)
    sum += 2.0 * std::cos(2.0 * kPi * (Y - X) * static_cast<double>(p) / L) * occupation(z * lambda[p]);
  sum += occupation(z * lambda[0]);
  return sum / L;
}

// ---------------------------------------------------------------------------
// thermodynamic

double thermo_spectral_density(const KernelFamily& family, double s) { return SpectralDensity::thermo(family)(s); }

namespace {

template <class F>
double thermo_integral(const SpectralDensity& sd, double z, F&& integrand) {
  const auto b = sd.breakpoints(z);
  if (b.size() < 2) return 0.0;
  const double factor = sd.even() ? 2.0 : 1.0;
  const auto r = integrate([&](double s) { return factor * integrand(z * sd(s)); }, std::span<const double>(b));
  return r.value;
}

}  // namespace

double thermo_pressure(const KernelFamily& family, double z) {
  require_z(z, "thermo_pressure");
  if (z == 0.0) return 0.0;
  return thermo_integral(SpectralDensity::thermo(family), z, [](double x) { return std::log1p(x); });
}

double thermo_density(const KernelFamily& family, double z) {
  require_z(z, "thermo_density");
  if (z == 0.0) return 0.0;
  return thermo_integral(SpectralDensity::thermo(family), z, [](double x) { return occupation(x); });
}

CorrelationKernel thermo_correlation_kernel(const KernelFamily& family, double z) {
  require_z(z, "thermo_correlation_kernel");
  const SpectralDensity sd = SpectralDensity::thermo(family);
  CorrelationKernel k;
  k.regime = sd.regime();
  k.even = sd.even();
  if (z == 0.0) {
    k.weight = [](double) { return 0.0; };
    return k;
  }
  k.breakpoints = sd.breakpoints(z);
  if (family.builtin() == Builtin::InverseArgument) {
    // 1 / ((1/2 pi z) e^{4 pi eps s} + 1), stable for very large z
    const double a = std::log(2.0 * kPi * z), eps = family.eps();
    k.weight = [a, eps](double s) { return s < 0.0 ? 0.0 : fermi(4.0 * kPi * eps * s - a); };
  } else {
    k.weight = [sd, z](double s) { return occupation(z * std::max(sd(s), 0.0)); };
  }
  return k;
}

std::complex<double> thermo_kernel(const KernelFamily& family, double z, double r) {
  return thermo_correlation_kernel(family, z).at(r);
}

double gaussian_series_kernel(double c, double z, double r) {
  if (!(c > 0.0)) throw std::invalid_argument("gaussian_series_kernel: c must be positive");
  if (!(std::abs(z) < 1.0)) throw std::invalid_argument("gaussian_series_kernel: |z| must be below 1");
  if (z == 0.0) return 0.0;
  const int terms = static_cast<int>(std::ceil(std::log(kSpectralCutoff) / std::log(std::abs(z))));
  double sum = 0.0;
  for (int p = terms; p >= 1; --p) {
    const double cp = c * p;
    sum -= std::pow(-z, p) / std::sqrt(cp) * std::exp(-kPi * r * r / cp);
  }
  return sum;
}

CorrelationKernel fermion_correlation_kernel(double beta, double mu) {
  if (!(beta > 0.0)) throw std::invalid_argument("fermion kernel: beta must be positive");
  CorrelationKernel k;
  k.regime = Regime::Thermo;
  k.even = true;
  // s = k / 2 pi; weight 1/(e^{beta (k^2 - mu)} + 1)
  k.weight = [beta, mu](double s) {
    const double kk = 2.0 * kPi * s;
    return fermi(beta * (kk * kk - mu));
  };
  const double top2 = mu + kLogCutoff / beta;
  if (top2 <= 0.0) return k;
  const double top = std::sqrt(top2) / (2.0 * kPi);
  k.breakpoints = {0.0, top};
  if (mu > 0.0) k.breakpoints.insert(k.breakpoints.begin() + 1, std::sqrt(mu) / (2.0 * kPi));
  return k;
}

double fermion_kernel(double beta, double mu, double r) { return fermion_correlation_kernel(beta, mu).at(r).real(); }

double sine_kernel(double k_fermi, double r) {
  if (!(k_fermi > 0.0)) throw std::invalid_argument("sine_kernel: k_F must be positive");
  if (r == 0.0) return k_fermi / kPi;
  return std::sin(k_fermi * r) / (kPi * r);
}

CorrelationKernel sine_correlation_kernel(double k_fermi) {
  if (!(k_fermi > 0.0)) throw std::invalid_argument("sine kernel: k_F must be positive");
  CorrelationKernel k;
  k.regime = Regime::Thermo;
  k.even = true;
  const double edge = k_fermi / (2.0 * kPi);
  k.weight = [edge](double s) { return std::abs(s) <= edge ? 1.0 : 0.0; };
  k.breakpoints = {0.0, edge};
  return k;
}

// ---------------------------------------------------------------------------
// complex Hermitian family

double complex_thermo_spectral_density(double eps, double s) {
  if (!(eps > 0.0)) throw std::invalid_argument("complex_thermo_spectral_density: eps must be positive");
  return s >= 0.0 ? 2.0 * kPi * std::exp(-4.0 * kPi * eps * s) : 0.0;
}

std::complex<double> gaudin_kernel(double eps, double z, double r) {
  return thermo_correlation_kernel(KernelFamily::inverse_argument(eps), z).at(r);
}

double gaudin_pressure(double eps, double z) {
  require_z(z, "gaudin_pressure");
  if (!(eps > 0.0)) throw std::invalid_argument("gaudin_pressure: eps must be positive");
  if (z == 0.0) return 0.0;
  const auto b = SpectralDensity::thermo(KernelFamily::inverse_argument(eps)).breakpoints(z);
  if (b.size() < 2) return 0.0;
  const double a = std::log(2.0 * kPi * z);
  return integrate([&](double s) { return softplus(a - 4.0 * kPi * eps * s); }, std::span<const double>(b)).value;
}

double gaudin_density(double eps, double z) {
  return thermo_correlation_kernel(KernelFamily::inverse_argument(eps), z).density();
}

double gaudin_fugacity(double eps, double h_field) {
  if (!(eps > 0.0)) throw std::invalid_argument("gaudin_fugacity: eps must be positive");
  return std::exp(4.0 * eps * h_field) / (2.0 * kPi);
}

std::complex<double> gaudin_asymptotic(double eps, double h_field, double r) {
  if (!(eps > 0.0) || !(h_field > 0.0)) throw std::invalid_argument("gaudin_asymptotic: eps and h must be positive");
  if (r == 0.0) throw std::invalid_argument("gaudin_asymptotic: r must be nonzero");
  const double f0 = 1.0 / (1.0 + std::exp(-4.0 * eps * h_field));
  const std::complex<double> edge = std::polar(1.0, 2.0 * h_field * r) /
                                    (2.0 * eps / kPi * std::sinh(kPi * r / (2.0 * eps)));
  return (-f0 / r + edge) / std::complex<double>(0.0, 2.0 * kPi);
}

double gaudin_truncated_two_point(double eps, double h_field, double r) {
  if (!(eps > 0.0) || !(h_field > 0.0)) throw std::invalid_argument("gaudin_truncated_two_point: eps and h must be positive");
  if (r == 0.0) throw std::invalid_argument("gaudin_truncated_two_point: r must be nonzero");
  const double f0 = 1.0 / (1.0 + std::exp(-4.0 * eps * h_field));
  const double sh = std::sinh(kPi * r / (2.0 * eps));
  return -f0 * f0 / (4.0 * kPi * kPi * r * r) - 1.0 / (16.0 * eps * eps * sh * sh);
}

// ---------------------------------------------------------------------------
// d dimensions

double ddim_spectral_density(double c, std::span<const double> s) {
  if (!(c > 0.0)) throw std::invalid_argument("ddim_spectral_density: c must be positive");
  double r2 = 0.0;
  for (double v : s) r2 += v * v;
  return std::exp(-kPi * c * r2);
}

namespace {

double unit_sphere_area(int d) { return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d); }

void require_d(int d, double c, double z, const char* who) {
  if (d < 1) throw std::invalid_argument(std::string(who) + ": d must be positive");
  if (!(c > 0.0)) throw std::invalid_argument(std::string(who) + ": c must be positive");
  require_z(z, who);
}

// Tensor composite Gauss-Legendre over [0, top]^d (d <= 3), doubling the panel
// count until successive values agree.
template <class F>
double tensor_integral(int d, double top, F&& f, double rel_tol, double abs_tol, int max_panels) {
  double previous = 0.0;
  for (int panels = 2; panels <= max_panels; panels *= 2) {
    const QuadratureRule rule = composite_rule(0.0, top, panels, 16);
    const std::size_t n = rule.size();
    double total = 0.0;
    double u[3] = {0.0, 0.0, 0.0};
    if (d == 1) {
      for (std::size_t i = 0; i < n; ++i) {
        u[0] = rule.nodes[i];
        total += rule.weights[i] * f(u);
      }
    } else if (d == 2) {
      for (std::size_t i = 0; i < n; ++i) {
        u[0] = rule.nodes[i];
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          u[1] = rule.nodes[j];
          row += rule.weights[j] * f(u);
        }
        total += rule.weights[i] * row;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        u[0] = rule.nodes[i];
        double plane = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          u[1] = rule.nodes[j];
          double row = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            u[2] = rule.nodes[k];
            row += rule.weights[k] * f(u);
          }
          plane += rule.weights[j] * row;
        }
        total += rule.weights[i] * plane;
      }
    }
    if (panels > 2 && std::abs(total - previous) <= std::max(abs_tol, rel_tol * std::abs(total))) return total;
    previous = total;
  }
  throw NumericalError("tensor quadrature: no convergence");
}

// Fermi weight in momentum units and its cutoff.
double fermi_weight(double beta, double mu, double k) { return fermi(beta * (k * k - mu)); }

double fermi_cutoff(double beta, double mu) {
  const double top2 = mu + kLogCutoff / beta;
  return top2 > 0.0 ? std::sqrt(top2) : 0.0;
}

}  // namespace

double ddim_pressure_radial(double c, int d, double z) {
  require_d(d, c, z, "ddim_pressure_radial");
  if (z == 0.0) return 0.0;
  const auto b = SpectralDensity::thermo_d(c, d).breakpoints(z);
  if (b.size() < 2) return 0.0;
  const double area = unit_sphere_area(d);
  return area * integrate([&](double s) { return std::pow(s, d - 1) * std::log1p(z * std::exp(-kPi * c * s * s)); },
                          std::span<const double>(b))
                    .value;
}

double ddim_pressure_cartesian(double c, int d, double z) {
  require_d(d, c, z, "ddim_pressure_cartesian");
  if (d > 3) throw std::invalid_argument("ddim_pressure_cartesian: d must be at most 3");
  if (z == 0.0) return 0.0;
  const double top = gaussian_support(c, z);
  if (top == 0.0) return 0.0;
  const double v = tensor_integral(
      d, top,
      [&](const double* u) {
        double r2 = 0.0;
        for (int i = 0; i < d; ++i) r2 += u[i] * u[i];
        return std::log1p(z * std::exp(-kPi * c * r2));
      },
      1e-13, 0.0, d == 3 ? 32 : 128);
  return std::ldexp(v, d);  // 2^d orthants
}

double ddim_kernel(double beta, double mu, int d, double r) {
  if (!(beta > 0.0)) throw std::invalid_argument("ddim_kernel: beta must be positive");
  if (d < 1) throw std::invalid_argument("ddim_kernel: d must be positive");
  if (!(r >= 0.0)) throw std::invalid_argument("ddim_kernel: r must be nonnegative");
  if (d == 1) return fermion_kernel(beta, mu, r);
  const double top = fermi_cutoff(beta, mu);
  if (top == 0.0) return 0.0;
  std::vector<double> b{0.0, top};
  if (mu > 0.0) b.insert(b.begin() + 1, std::sqrt(mu));
  if (r == 0.0) {
    const double v = integrate([&](double k) { return std::pow(k, d - 1) * fermi_weight(beta, mu, k); },
                               std::span<const double>(b))
                         .value;
    return unit_sphere_area(d) / std::pow(2.0 * kPi, d) * v;
  }
  const auto cuts = merge_cuts(uniform_cuts(0.0, top, kPi / r), b);
  const double nu = 0.5 * d - 1.0;
  const double v = integrate(
                       [&](double k) {
                         return std::pow(k, 0.5 * d) * std::cyl_bessel_j(nu, k * r) * fermi_weight(beta, mu, k);
                       },
                       std::span<const double>(cuts))
                       .value;
  return std::pow(2.0 * kPi, -0.5 * d) * std::pow(r, 1.0 - 0.5 * d) * v;
}

double ddim_kernel_cartesian(double beta, double mu, int d, double r) {
  if (!(beta > 0.0)) throw std::invalid_argument("ddim_kernel_cartesian: beta must be positive");
  if (d < 1 || d > 3) throw std::invalid_argument("ddim_kernel_cartesian: d must be 1, 2 or 3");
  const double top = fermi_cutoff(beta, mu);
  if (top == 0.0) return 0.0;
  // separation along the first axis
  const double v = tensor_integral(
      d, top,
      [&](const double* k) {
        double k2 = 0.0;
        for (int i = 0; i < d; ++i) k2 += k[i] * k[i];
        return std::cos(k[0] * r) * fermi(beta * (k2 - mu));
      },
      1e-14, 1e-16, d == 3 ? 32 : 128);
  return std::ldexp(v, d) / std::pow(2.0 * kPi, d);
}

}  // namespace circlens
