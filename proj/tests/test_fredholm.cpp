#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "circlens/errors.hpp"
#include "circlens/exact_finite.hpp"
#include "circlens/fredholm.hpp"
#include "circlens/quadrature.hpp"

using namespace circlens;
using std::numbers::pi;

namespace {
// mpmath Nystrom at 40 nodes, 30 digits
constexpr double kSineDetT1 = 0.400080679119306940;
constexpr double kSineDetT2Half = 0.451672786100363573;
// numpy Nystrom, kernel from scipy quad, stable between 30 and 50 nodes
constexpr double kFermionDet = 0.4737694162609016;
constexpr double kFermionDetHalf = 0.7236339549510974;
}  // namespace

TEST_CASE("zero kernel has unit determinant") {
  auto p = FredholmProblem::of([](double, double) { return std::complex<double>(0.0); }, -1, 1);
  CHECK(fredholm_det(p) == doctest::Approx(1.0).epsilon(1e-15));
  auto c = counting_distribution(p, 3);
  CHECK(c.E[0] == doctest::Approx(1.0));
  CHECK(c.mean == doctest::Approx(0.0));
}

TEST_CASE("sine kernel determinants against high precision Nystrom") {
  auto sine = [](double t) {
    return [t](double x, double y) {
      const double d = x - y;
      return std::complex<double>(d == 0.0 ? t / pi : std::sin(t * d) / (pi * d));
    };
  };
  CHECK(fredholm_det(FredholmProblem::of(sine(1.0), -1, 1)) == doctest::Approx(kSineDetT1).epsilon(1e-12));
  CHECK(fredholm_det(FredholmProblem::of(sine(2.0), -1, 1, 0.5)) == doctest::Approx(kSineDetT2Half).epsilon(1e-12));
  CHECK(std::exp(sine_log_det(1.0, 1.0, 40)) == doctest::Approx(kSineDetT1).epsilon(1e-13));
  // spectral route with the same kernel
  auto k = sine_correlation_kernel(1.0);
  CHECK(fredholm_det(FredholmProblem::of(k, -1, 1)) == doctest::Approx(kSineDetT1).epsilon(1e-10));
}

TEST_CASE("short interval top eigenvalue is close to the interval mass") {
  auto k = sine_correlation_kernel(pi);  // density 1
  auto r = nystrom_eigenvalues(FredholmProblem::of(k, -0.1, 0.1));
  CHECK(r.eigenvalues.front() == doctest::Approx(0.2).epsilon(0.1));
  for (double l : r.eigenvalues) {
    CHECK(l > -1e-8);
    CHECK(l < 1 + 1e-8);
  }
}

TEST_CASE("fermion determinant against independent Nystrom") {
  auto k = fermion_correlation_kernel(1.0, 1.0);
  CHECK(fredholm_det(FredholmProblem::of(k, -1, 1)) == doctest::Approx(kFermionDet).epsilon(1e-10));
  CHECK(fredholm_det(FredholmProblem::of(k, -1, 1, 0.5)) == doctest::Approx(kFermionDetHalf).epsilon(1e-10));
}

TEST_CASE("xi = 0 and the first order expansion") {
  auto k = thermo_correlation_kernel(KernelFamily::gaussian(1.0), 1.0);
  CHECK(fredholm_det(FredholmProblem::of(k, 0, 2, 0.0)) == 1.0);
  const double len = 1e-3, rho = k.density();
  const double det = gap_probability(FredholmProblem::of(k, 0, len));
  CHECK(std::abs(det - (1 - rho * len)) < 1e-6);
}

TEST_CASE("Fredholm series through third order") {
  auto k = thermo_correlation_kernel(KernelFamily::gaussian(1.0), 0.8);
  const double a = 0.0, b = 0.5, xi = 0.7;
  auto rule = composite_rule(a, b, 1, 12);
  const int n = static_cast<int>(rule.size());
  auto K = [&](int i, int j) { return k.at(rule.nodes[i] - rule.nodes[j]).real(); };
  double t1 = 0, t2 = 0, t3 = 0;
  for (int i = 0; i < n; ++i) {
    t1 += rule.weights[i] * K(i, i);
    for (int j = 0; j < n; ++j) {
      const double wij = rule.weights[i] * rule.weights[j];
      t2 += wij * (K(i, i) * K(j, j) - K(i, j) * K(j, i));
      for (int l = 0; l < n; ++l) {
        Eigen::Matrix3d m;
        const int id[3] = {i, j, l};
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q) m(p, q) = K(id[p], id[q]);
        t3 += wij * rule.weights[l] * m.determinant();
      }
    }
  }
  const double series = 1 - xi * t1 + xi * xi / 2 * t2 - xi * xi * xi / 6 * t3;
  const double det = fredholm_det(FredholmProblem::of(k, a, b, xi));
  // fourth order remainder ~ (xi rho |J|)^4 / 24
  CHECK(std::abs(det - series) < 1e-4);
}

TEST_CASE("counting distribution sums to one and has the trace as mean") {
  auto k = thermo_correlation_kernel(KernelFamily::gaussian(1.0), 2.0);
  auto p = FredholmProblem::of(k, 0, 4);
  auto ev = nystrom_eigenvalues(p).eigenvalues;
  auto c = counting_from_eigenvalues(ev, static_cast<int>(ev.size()));
  double sum = 0, mean = 0;
  for (std::size_t i = 0; i < c.E.size(); ++i) {
    sum += c.E[i];
    mean += static_cast<double>(i) * c.E[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mean == doctest::Approx(c.mean).epsilon(1e-12));
  CHECK(c.mean == doctest::Approx(4 * k.density()).epsilon(1e-9));
  CHECK(c.E[0] == doctest::Approx(gap_probability(p)).epsilon(1e-12));
  CHECK_THROWS_AS(counting_from_eigenvalues(ev, -1), std::invalid_argument);

  double prev = 1.0;
  for (double len : {0.5, 1.0, 2.0, 3.0, 4.0}) {
    const double e0 = gap_probability(FredholmProblem::of(k, 0, len));
    CHECK(e0 <= prev);
    prev = e0;
  }
}

TEST_CASE("finite circulant kernel matches the exact hole probability") {
  // counting on one site of a circulant ensemble is Bernoulli(K(x, x))
  CirculantEnsemble ens(12, 6.0, 0.9, KernelFamily::gaussian(1.0));
  FiniteKernel fk(ens);
  std::vector<double> ev{fk.density()};
  auto c = counting_from_eigenvalues(ev, 1);
  CHECK(c.E[0] == doctest::Approx(1 - fk.density()));
}

TEST_CASE("gap asymptote") {
  auto fam = KernelFamily::gaussian(1.0);
  SUBCASE("zero cases") {
    CHECK(gap_asymptote(fam, 1.0, 3.0, 0.0) == 1.0);
    CHECK(gap_asymptote(fam, 1.0, 0.0, 1.0) == 1.0);
  }
  SUBCASE("xi = 1 reduces to -|J| beta P") {
    const double len = 2.5;
    CHECK(std::log(gap_asymptote(fam, 1.0, len, 1.0)) == doctest::Approx(-len * thermo_pressure(fam, 1.0)).epsilon(1e-12));
  }
  SUBCASE("Gaudin reduces to the closed pressure") {
    auto g = KernelFamily::inverse_argument(1.0);
    CHECK(std::log(gap_asymptote(g, 1.0, 2.0, 1.0)) == doctest::Approx(-2.0 * gaudin_pressure(1.0, 1.0)).epsilon(1e-10));
  }
  SUBCASE("ratio to the Fredholm determinant at six mean spacings") {
    // fermions at beta = 1, mu = 1 are the Gaussian family at c = 4 pi, z = e
    auto g4 = KernelFamily::gaussian(4 * pi);
    const double z = std::exp(1.0);
    auto k = thermo_correlation_kernel(g4, z);
    const double len = 6.0 / k.density();
    const double det = fredholm_det(FredholmProblem::of(k, 0, len, 0.5));
    const double asy = gap_asymptote(g4, z, len, 0.5);
    MESSAGE("asymptote/det - 1 = " << asy / det - 1);
    CHECK(std::abs(asy / det - 1) < 0.05);
  }
}

TEST_CASE("momentum-space determinant equals the position-space one") {
  double worst = 0;
  for (double x : {0.3, 1.0, 2.0})
    for (double xi : {0.3, 0.7, 1.0}) {
      auto r = iik_equivalence(1.0, 1.0, x, xi);
      worst = std::max(worst, r.rel_diff());
    }
  MESSAGE("worst relative difference " << worst);
  CHECK(worst < 1e-6);
  CHECK(momentum_kernel(1, 1, 0.5, 0.2, 0.2) == doctest::Approx(0.5 / pi / (std::exp(0.04 - 1) + 1)));
}

TEST_CASE("small-x coefficients") {
  const std::vector<double> xs{0.002, 0.004, 0.006, 0.008, 0.01};
  for (double t : {-1.0, 0.0, 2.0}) {
    auto c = sigma_small_x_check(t, 0.8, xs);
    CHECK(c.linear_fit == doctest::Approx(c.linear_expected).epsilon(1e-4));
    CHECK(c.quadratic_fit == doctest::Approx(c.quadratic_expected).epsilon(1e-4));
    CHECK(c.max_deviation < 1e-5);
  }
  CHECK_THROWS_AS(sigma_small_x_check(0.0, 1.0, std::vector<double>{0.01, 0.02}), std::invalid_argument);
}

TEST_CASE("sigma form of the sine determinant solves the Painleve ODE") {
  std::vector<double> taus;
  for (double t = 0.2; t <= 2.0 + 1e-12; t += 0.2) taus.push_back(t);
  for (double xi : {0.5, 1.0}) {
    auto r = sine_sigma_ode_residual(taus, xi);
    MESSAGE("xi " << xi << " max residual " << r.max_residual << " nodes " << r.nodes);
    CHECK(r.max_residual < 1e-3);
    // sigma0 ~ -xi tau 2/pi at small tau
    CHECK(r.sigma0.front() == doctest::Approx(-xi * 0.2 * 2 / pi).epsilon(0.05));
  }
  auto z = sine_sigma_ode_residual(taus, 0.0);
  CHECK(z.max_residual == 0.0);
}

TEST_CASE("PDE residual diagnostic") {
  const std::vector<double> xs{0.5, 1.0}, ts{-0.5, 0.5, 1.5};
  auto r = sigma_pde_residual(xs, ts, 1.0);
  MESSAGE("max residual " << r.max_residual);
  CHECK(r.residual.size() == 6);
  CHECK(r.max_residual < 5e-2);
}

TEST_CASE("input validation") {
  auto k = sine_correlation_kernel(1.0);
  CHECK_THROWS_AS(fredholm_det(FredholmProblem::of(k, 1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(fredholm_det(FredholmProblem::of(k, 0, 1, 1.5)), std::invalid_argument);
  // not positive: eigenvalue outside (0, 1)
  auto bad = FredholmProblem::of([](double, double) { return std::complex<double>(-1.0); }, 0, 1);
  CHECK_THROWS_AS(fredholm_det(bad), NumericalError);
}
