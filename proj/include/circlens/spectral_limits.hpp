#ifndef CIRCLENS_SPECTRAL_LIMITS_HPP
#define CIRCLENS_SPECTRAL_LIMITS_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "circlens/model.hpp"
#include "circlens/quadrature.hpp"

namespace circlens {

enum class Regime { Lattice, FiniteL, Thermo, ComplexThermo, ThermoD };

/// Envelope below which z * lambda is dropped from every sum and integral.
inline constexpr double kSpectralCutoff = 1e-16;

/// lambda(s) in the continuum regimes (or lambda(t) on the lattice).
class SpectralDensity {
 public:
  /// Thermo for real even families, ComplexThermo for h(u) = 1/u.
  static SpectralDensity thermo(const KernelFamily& family);
  static SpectralDensity lattice(const KernelFamily& family, double tau);
  static SpectralDensity thermo_d(double c, int d);

  Regime regime() const { return regime_; }
  bool closed_form() const { return closed_form_; }
  /// lambda(s) = lambda(-s)
  bool even() const { return even_; }
  double operator()(double s) const { return eval_(s); }

  /// Breakpoints covering the support of z lambda >= 1e-16 (for even
  /// densities only s >= 0), with the point z lambda = 1 inserted when it
  /// falls inside.
  std::vector<double> breakpoints(double z) const;

 private:
  Regime regime_ = Regime::Thermo;
  bool closed_form_ = false;
  bool even_ = true;
  std::function<double(double)> eval_;
  std::function<std::vector<double>(double)> range_;
};

/// Translation-invariant kernel K(X, Y) = int e^{2 pi i (X - Y) s} w(s) ds with
/// occupation w(s) = z lambda / (1 + z lambda) supported on the breakpoints.
struct CorrelationKernel {
  Regime regime = Regime::Thermo;
  std::function<double(double)> weight;
  std::vector<double> breakpoints;  // support, increasing; s >= 0 only when even
  bool even = true;                 // w even: kernel real and even in X - Y

  std::complex<double> operator()(double X, double Y) const { return at(X - Y); }
  std::complex<double> at(double r) const;
  double density() const;
  /// Fixed rule in s that reproduces at(r) for |r| <= max_separation; used to
  /// assemble Nystrom matrices as a low-rank product.
  QuadratureRule spectral_rule(double max_separation) const;
};

// lattice regime
double lattice_spectral_density(const KernelFamily& family, double tau, double t);
double lattice_pressure(const KernelFamily& family, double tau, double z);  // tau * beta P
double lattice_density(const KernelFamily& family, double tau, double z);
double lattice_kernel(const KernelFamily& family, double tau, double z, long j);

// finite-L regime
double finite_L_eigenvalue(const KernelFamily& family, double L, int p);
/// lambda_p for p = 0, 1, ... until z lambda_p < 1e-16 (lambda_{-p} = lambda_p).
std::vector<double> finite_L_spectrum(const KernelFamily& family, double L, double z);
double finite_L_log_partition(const KernelFamily& family, double L, double z);
std::complex<double> finite_L_kernel(const KernelFamily& family, double L, double z, double X, double Y);

// thermodynamic regime
double thermo_spectral_density(const KernelFamily& family, double s);
double thermo_pressure(const KernelFamily& family, double z);
double thermo_density(const KernelFamily& family, double z);
std::complex<double> thermo_kernel(const KernelFamily& family, double z, double r);
CorrelationKernel thermo_correlation_kernel(const KernelFamily& family, double z);

double gaussian_series_kernel(double c, double z, double r);

double fermion_kernel(double beta, double mu, double r);
CorrelationKernel fermion_correlation_kernel(double beta, double mu);
double sine_kernel(double k_fermi, double r);
CorrelationKernel sine_correlation_kernel(double k_fermi);

// complex Hermitian family h(u) = 1/u
double complex_thermo_spectral_density(double eps, double s);
std::complex<double> gaudin_kernel(double eps, double z, double r);
double gaudin_pressure(double eps, double z);
double gaudin_density(double eps, double z);
/// z with 1/(2 pi z) = e^{-4 eps h}.
double gaudin_fugacity(double eps, double h_field);
std::complex<double> gaudin_asymptotic(double eps, double h_field, double r);
/// Non-oscillating part of -|K(r)|^2 at large r.
double gaudin_truncated_two_point(double eps, double h_field, double r);

// d dimensions, Gaussian lambda = e^{-pi c |s|^2}
double ddim_spectral_density(double c, std::span<const double> s);
double ddim_pressure_radial(double c, int d, double z);
double ddim_pressure_cartesian(double c, int d, double z);
double ddim_kernel(double beta, double mu, int d, double r);
double ddim_kernel_cartesian(double beta, double mu, int d, double r);

}  // namespace circlens

#endif  // CIRCLENS_SPECTRAL_LIMITS_HPP
