#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "circlens/exact_finite.hpp"
#include "circlens/spectral_limits.hpp"

using namespace circlens;

namespace {
constexpr double kPi = std::numbers::pi;
const KernelFamily gauss1 = KernelFamily::gaussian(1.0);
const KernelFamily gauss4pi = KernelFamily::gaussian(4.0 * kPi);

// Gaussian passed through the numeric (user family) path
KernelFamily numeric_gauss(double c) {
  return KernelFamily::real_even([c](double u) { return std::exp(-kPi * u * u / c) / std::sqrt(c); },
                                 gaussian_decay_radius(c));
}
}  // namespace

TEST_CASE("lattice spectral density") {
  CHECK(std::abs(lattice_spectral_density(gauss1, 1.0, 0.0) - 1.08643481121330801) < 1e-14);
  CHECK(lattice_spectral_density(gauss1, 0.5, 0.31) == lattice_spectral_density(gauss1, 0.5, -0.31));
  const double tau = 1.0 / 64.0, s = 0.3;
  const double scaled = tau * lattice_spectral_density(gauss1, tau, tau * s);
  CHECK(std::abs(scaled / std::exp(-kPi * s * s) - 1.0) < 1e-3);
}

TEST_CASE("lattice pressure and density") {
  CHECK(lattice_pressure(gauss1, 1.0, 0.0) == 0.0);
  CHECK(lattice_density(gauss1, 1.0, 0.0) == 0.0);
  // mpmath with the exact theta series
  CHECK(std::abs(lattice_pressure(gauss1, 1.0, 1.0) - 0.692679994227167869) < 1e-12);
  CHECK(std::abs(lattice_density(gauss1, 1.0, 1.0) - 0.499532486867867998) < 1e-12);
  CHECK(lattice_density(gauss1, 1.0, 1e8) == doctest::Approx(1.0).epsilon(1e-6));

  const CirculantEnsemble e(256, 256.0, 1.0, gauss1);
  CHECK(std::abs(log_partition_function(e) / 256.0 - lattice_pressure(gauss1, 1.0, 1.0)) < 1e-6);

  const double z = 0.8, h = 1e-5;
  const double deriv = z * (lattice_pressure(gauss1, 1.0, z + h) - lattice_pressure(gauss1, 1.0, z - h)) / (2.0 * h);
  CHECK(deriv == doctest::Approx(lattice_density(gauss1, 1.0, z)).epsilon(1e-6));

  double prev = 0.0;
  for (double zz : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    const double p = lattice_pressure(gauss1, 1.0, zz);
    CHECK(p > prev);
    prev = p;
    const double rho = lattice_density(gauss1, 1.0, zz);
    CHECK(rho >= 0.0);
    CHECK(rho <= 1.0);
  }
}

TEST_CASE("lattice kernel") {
  CHECK(lattice_kernel(gauss1, 1.0, 1.0, 0) == doctest::Approx(lattice_density(gauss1, 1.0, 1.0)).epsilon(1e-13));
  CHECK(lattice_kernel(gauss1, 1.0, 1.0, 3) == doctest::Approx(lattice_kernel(gauss1, 1.0, 1.0, -3)).epsilon(1e-13));
  const CirculantEnsemble e(512, 512.0, 1.0, gauss1);
  CHECK(std::abs(lattice_kernel(gauss1, 1.0, 1.0, 3) - FiniteKernel(e).at_offset(3).real()) < 1e-8);
}

TEST_CASE("lattice to continuum as tau shrinks") {
  const double tau = 1.0 / 64.0, z = 1.0, r = 0.5;
  const double lat = lattice_kernel(gauss1, tau, tau * z, std::lround(r / tau)) / tau;
  CHECK(std::abs(lat - thermo_kernel(gauss1, z, r).real()) < 1e-4);
}

TEST_CASE("finite L eigenvalues") {
  CHECK(finite_L_eigenvalue(gauss1, 8.0, 2) == finite_L_eigenvalue(gauss1, 8.0, -2));
  CHECK(std::abs(finite_L_eigenvalue(gauss1, 8.0, 2) - 0.824155390517122845) < 1e-12);
  // trapezoid sums of a periodic analytic integrand
  const CirculantEnsemble e(1024, 8.0, 1.0, gauss1);
  const double riemann = 8.0 / 1024.0 * circulant_eigenvalues(e).at(2);
  CHECK(std::abs(riemann / finite_L_eigenvalue(gauss1, 8.0, 2) - 1.0) < 1e-6);
}

TEST_CASE("finite L eigenvalue approaches the continuum at rate 1/L^2") {
  // The chord (L/pi) sin(pi t) differs from L t at second order, so the
  // relative gap to e^{-pi c s^2} shrinks by about 4 per doubling of L.
  const double s = 0.25;
  double prev = 0.0;
  for (double L : {8.0, 16.0, 32.0, 64.0}) {
    const double rel = std::abs(finite_L_eigenvalue(gauss1, L, static_cast<int>(s * L)) / std::exp(-kPi * s * s) - 1.0);
    if (prev > 0.0) CHECK(prev / rel == doctest::Approx(4.0).epsilon(0.1));
    prev = rel;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("finite L partition and kernel") {
  CHECK(finite_L_log_partition(gauss1, 8.0, 0.0) == 0.0);
  CHECK(finite_L_kernel(gauss1, 8.0, 0.0, 0.2, 1.0) == 0.0);
  const double lxi = finite_L_log_partition(gauss1, 8.0, 1.0);
  CHECK(lxi > 0.0);
  const auto a = finite_L_kernel(gauss1, 8.0, 1.0, 0.3, 0.3);
  const auto b = finite_L_kernel(gauss1, 8.0, 1.0, 0.3, 8.3);
  CHECK(std::abs(a - b) < 1e-14);
  CHECK(std::abs(finite_L_kernel(gauss1, 8.0, 1.0, 0.3, 1.7) - std::conj(finite_L_kernel(gauss1, 8.0, 1.0, 1.7, 0.3))) <
        1e-14);
  // circulant sums at large M
  const CirculantEnsemble e(2048, 8.0, 1.0, gauss1);
  CHECK(std::abs(log_partition_function(e.with_z(8.0 / 2048.0)) - lxi) < 1e-3);

  // (1/L) log Xi converges to beta P at rate 1/L^2
  const double bp = thermo_pressure(gauss1, 1.0);
  double prev = 0.0;
  for (double L : {8.0, 16.0, 32.0}) {
    const double gap = std::abs(finite_L_log_partition(gauss1, L, 1.0) / L - bp);
    if (prev > 0.0) CHECK(prev / gap == doctest::Approx(4.0).epsilon(0.1));
    prev = gap;
  }
}

TEST_CASE("thermodynamic Gaussian") {
  CHECK(thermo_spectral_density(gauss1, 0.0) == 1.0);
  CHECK(thermo_spectral_density(gauss1, 0.4) == thermo_spectral_density(gauss1, -0.4));
  CHECK(thermo_pressure(gauss1, 0.0) == 0.0);
  CHECK(thermo_kernel(gauss1, 0.0, 0.5) == 0.0);
  // polylog values from mpmath
  CHECK(std::abs(thermo_pressure(gauss1, 1.0) - 0.765147024625407945) < 1e-12);
  CHECK(std::abs(thermo_density(gauss1, 1.0) - 0.604898643421630370) < 1e-12);
  CHECK(std::abs(thermo_pressure(gauss4pi, 1.0) - 0.215843990588106867) < 1e-12);
  CHECK(std::abs(thermo_density(gauss4pi, 1.0) - 0.170638756860326183) < 1e-12);
  CHECK(thermo_pressure(gauss1, 1e-4) / 1e-4 == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(thermo_kernel(gauss1, 0.5, 0.8).real() - 0.026560357219153967) < 1e-12);
  CHECK(std::abs(thermo_kernel(gauss1, 0.5, 0.8).real() - gaussian_series_kernel(1.0, 0.5, 0.8)) < 1e-10);
  CHECK(thermo_kernel(gauss1, 2.0, 0.0).real() == doctest::Approx(thermo_density(gauss1, 2.0)).epsilon(1e-12));
  CHECK(thermo_kernel(gauss1, 2.0, 1.3).real() == doctest::Approx(thermo_kernel(gauss1, 2.0, -1.3).real()).epsilon(1e-12));
  double prev = 0.0;
  for (double z : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double p = thermo_pressure(gauss1, z);
    CHECK(p > prev);
    CHECK(thermo_density(gauss1, z) > 0.0);
    prev = p;
  }
}

TEST_CASE("numeric spectral transform") {
  const auto f = numeric_gauss(1.0);
  CHECK(std::abs(thermo_spectral_density(f, 0.7) - std::exp(-kPi * 0.49)) < 1e-10);
  CHECK(std::abs(thermo_pressure(f, 1.0) - 0.765147024625407945) < 1e-9);
  CHECK(std::abs(thermo_kernel(f, 0.5, 0.8).real() - 0.026560357219153967) < 1e-9);
}

TEST_CASE("series kernel") {
  CHECK(gaussian_series_kernel(1.0, 0.0, 0.3) == 0.0);
  double direct = 0.0;
  for (int p = 1; p < 60; ++p) direct -= std::pow(-0.5, p) / std::sqrt(p);
  CHECK(gaussian_series_kernel(1.0, 0.5, 0.0) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(std::abs(gaussian_series_kernel(1.0, 0.5, 2.0) - thermo_kernel(gauss1, 0.5, 2.0).real()) < 1e-10);
  CHECK_THROWS_AS(gaussian_series_kernel(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("fermion and sine kernels") {
  CHECK(std::abs(fermion_kernel(1.0, 1.0, 0.7) - 0.239324683170366898) < 1e-12);
  const auto g = fermion_to_gas({1.0, 1.0});
  const auto fam = KernelFamily::gaussian(g.c);
  CHECK(std::abs(fermion_kernel(1.0, 1.0, 0.0) - thermo_density(fam, g.z)) < 1e-10);
  CHECK(std::abs(fermion_kernel(1.0, 1.0, 1.9) - thermo_kernel(fam, g.z, 1.9).real()) < 1e-10);
  CHECK(std::abs(fermion_kernel(200.0, 1.0, 1.0) - sine_kernel(1.0, 1.0)) < 1e-2);
  // Boltzmann limit: leading series term
  const double beta = 1.0, mu = -20.0, r = 0.6;
  const double z = std::exp(beta * mu);
  CHECK(fermion_kernel(beta, mu, r) / (z / std::sqrt(4.0 * kPi * beta) * std::exp(-r * r / (4.0 * beta))) ==
        doctest::Approx(1.0).epsilon(1e-8));

  CHECK(sine_kernel(2.0, 0.0) == doctest::Approx(2.0 / kPi));
  CHECK(std::abs(sine_kernel(kPi, 1.0)) < 1e-16);
  CHECK(sine_kernel(1.0, kPi / 2) == doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-15));
  CHECK(std::abs(sine_correlation_kernel(1.0).at(2.3).real() - sine_kernel(1.0, 2.3)) < 1e-13);
}

TEST_CASE("gaudin family") {
  CHECK(complex_thermo_spectral_density(1.0, -0.1) == 0.0);
  CHECK(complex_thermo_spectral_density(1.0, 0.1) == doctest::Approx(2.0 * kPi * std::exp(-0.4 * kPi)));
  CHECK(gaudin_kernel(1.0, 0.0, 0.3) == 0.0);
  CHECK(gaudin_pressure(1.0, 0.0) == 0.0);
  CHECK(std::abs(gaudin_pressure(1.0, 1.0) - 0.253103806512941305) < 1e-12);
  CHECK(std::abs(gaudin_density(1.0, 1.0) - 0.158006505588899004) < 1e-12);
  const auto fam = KernelFamily::inverse_argument(1.0);
  CHECK(std::abs(thermo_pressure(fam, 1.0) - 0.253103806512941305) < 1e-12);
  const auto k = gaudin_kernel(1.0, 1.0, 0.5);
  CHECK(std::abs(k - std::complex<double>(0.138652292322556854, 0.0574976981345002798)) < 1e-12);
  CHECK(std::abs(gaudin_kernel(1.0, 1.0, -0.5) - std::conj(k)) < 1e-14);
  CHECK(std::abs(gaudin_kernel(1.0, 1.0, 0.0).real() - thermo_density(fam, 1.0)) < 1e-10);

  // large separation asymptotics improve with r
  const double eps = 1.0, h = 1.0, z = gaudin_fugacity(eps, h);
  double prev = 1.0;
  for (double r : {2.0, 5.0, 10.0, 20.0}) {
    const auto exact = gaudin_kernel(eps, z, r);
    const double rel = std::abs(gaudin_asymptotic(eps, h, r) - exact) / std::abs(exact);
    CHECK(rel < prev);
    prev = rel;
  }
  CHECK(prev < 0.01);

  // smooth part of -|K|^2 at zeros of the cross term cos(2 h r)
  for (int m : {3, 5, 9}) {
    const double r = (m + 0.5) * kPi / (2.0 * h);
    const double exact = -std::norm(gaudin_asymptotic(eps, h, r));
    CHECK(gaudin_truncated_two_point(eps, h, r) == doctest::Approx(exact).epsilon(1e-12));
  }

  // random matrix limit
  const double e50 = 50.0;
  const auto big = gaudin_kernel(e50, gaudin_fugacity(e50, 1.0), 1.0);
  const auto sine = std::polar(1.0, 1.0) * std::sin(1.0) / kPi;
  CHECK(std::abs(big - sine) < 1e-3);
  CHECK_THROWS_AS(thermo_pressure(KernelFamily::complex_odd([](double u) { return std::complex<double>(1.0 / u); }, 1.0), 1.0),
                  std::invalid_argument);
}

TEST_CASE("kernel Hermitian symmetry on probe pairs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const auto kg = thermo_correlation_kernel(gauss1, 1.5);
  const auto kc = thermo_correlation_kernel(KernelFamily::inverse_argument(0.5), 2.0);
  for (int i = 0; i < 10; ++i) {
    const double x = u(rng), y = u(rng);
    CHECK(std::abs(kg(x, y) - std::conj(kg(y, x))) < 1e-10);
    CHECK(std::abs(kc(x, y) - std::conj(kc(y, x))) < 1e-10);
    CHECK(std::abs(kg(x, y).imag()) < 1e-15);
  }
}

TEST_CASE("spectral rule reproduces the kernel") {
  for (const auto& k : {fermion_correlation_kernel(1.0, 1.0), thermo_correlation_kernel(KernelFamily::inverse_argument(1.0), 1.0),
                        sine_correlation_kernel(2.0)}) {
    const auto rule = k.spectral_rule(6.0);
    for (double r : {0.0, 0.7, 3.1, 6.0}) {
      std::complex<double> sum{};
      for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.weights[q] * std::polar(1.0, 2.0 * kPi * r * rule.nodes[q]);
      CHECK(std::abs(sum - k.at(r)) < 1e-12);
    }
  }
}

TEST_CASE("d dimensions") {
  const double s[2] = {0.1, 0.2};
  CHECK(ddim_spectral_density(1.0, s) == doctest::Approx(std::exp(-kPi * 0.05)));
  CHECK(std::abs(ddim_pressure_radial(1.0, 1, 1.0) - thermo_pressure(gauss1, 1.0)) < 1e-10);
  CHECK(std::abs(ddim_pressure_radial(1.0, 2, 1.0) - 0.822467033424113218) < 1e-12);
  CHECK(std::abs(ddim_pressure_radial(1.0, 3, 1.0) - 0.867199889012184138) < 1e-12);
  for (int d : {2, 3}) {
    const double rad = ddim_pressure_radial(1.0, d, 1.0), cart = ddim_pressure_cartesian(1.0, d, 1.0);
    CHECK(std::abs(rad / cart - 1.0) < 1e-8);
  }
  CHECK(std::abs(ddim_kernel(1.0, 0.5, 2, 1.0) - 0.0561236496596639633) < 1e-12);
  CHECK(std::abs(ddim_kernel(1.0, 0.5, 3, 1.0) - 0.0185444414480868081) < 1e-12);
  CHECK(std::abs(ddim_kernel(1.0, 0.5, 2, 1.0) - ddim_kernel_cartesian(1.0, 0.5, 2, 1.0)) < 1e-8);
  CHECK(std::abs(ddim_kernel(1.0, 0.5, 1, 1.0) - fermion_kernel(1.0, 0.5, 1.0)) < 1e-15);
  // density in d = 2 equals the pressure derivative route
  const auto g = fermion_to_gas({1.0, 0.5});
  const double h = 1e-4;
  const double deriv = (ddim_pressure_radial(g.c, 2, g.z * std::exp(h)) - ddim_pressure_radial(g.c, 2, g.z * std::exp(-h))) / (2 * h);
  CHECK(std::abs(ddim_kernel(1.0, 0.5, 2, 0.0) - deriv) < 1e-8);
  CHECK_THROWS_AS(ddim_pressure_cartesian(1.0, 4, 1.0), std::invalid_argument);
}
