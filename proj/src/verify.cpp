#include "circlens/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include "circlens/errors.hpp"
#include "circlens/exact_finite.hpp"
#include "circlens/fredholm.hpp"
#include "circlens/parallel.hpp"
#include "circlens/quadrature.hpp"
#include "circlens/random.hpp"
#include "circlens/sampler.hpp"
#include "circlens/spectral_limits.hpp"

namespace circlens {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ReportEntry make_entry(std::string id, double error, double tol) {
  ReportEntry e;
  e.id = std::move(id);
  e.error = error;
  e.tol = tol;
  e.pass = error <= tol;
  return e;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

double max_pairwise_rel(std::initializer_list<double> v) {
  double worst = 0.0;
  for (auto i = v.begin(); i != v.end(); ++i)
    for (auto j = i + 1; j != v.end(); ++j) worst = std::max(worst, rel(*i, *j));
  return worst;
}

// (z d/dz)^2 f by central differences in log z, step h, validated against 2h
double log_second_derivative(const std::function<double(double)>& f, double z, double h) {
  auto d2 = [&](double s) { return (f(z * std::exp(s)) - 2.0 * f(z) + f(z * std::exp(-s))) / (s * s); };
  const double a = d2(h), b = d2(2.0 * h);
  if (std::abs(a - b) > 1e-5 * std::abs(a) + 1e-12)
    throw NumericalError("finite difference in log z not converged");
  return a;
}

}  // namespace

ReportEntry check_compressibility_continuum(const KernelFamily& family, double z, double tol) {
  if (!(z > 0.0)) throw std::invalid_argument("check_compressibility_continuum: z must be positive");
  const CorrelationKernel k = thermo_correlation_kernel(family, z);
  const std::span<const double> b(k.breakpoints);
  const double half = k.even ? 2.0 : 1.0;
  const double w2 = half * integrate([&](double s) { const double w = k.weight(s); return w * w; }, b).value;
  const double analytic =
      half * integrate([&](double s) { const double w = k.weight(s); return w * (1.0 - w); }, b).value;
  const bool gaudin = family.builtin() == Builtin::InverseArgument;
  const double rho = gaudin ? gaudin_density(family.eps(), z) : thermo_density(family, z);
  const auto pressure = [&](double zz) {
    return gaudin ? gaudin_pressure(family.eps(), zz) : thermo_pressure(family, zz);
  };
  const double fd = log_second_derivative(pressure, z, 1e-4);
  return make_entry("compressibility-continuum", max_pairwise_rel({rho - w2, analytic, fd}), tol);
}

ReportEntry check_compressibility_lattice(const KernelFamily& family, double tau, double z, double tol) {
  if (z == 0.0) return make_entry("compressibility-lattice", 0.0, tol);
  const double rho = lattice_density(family, tau, z);
  double sum = rho - rho * rho;  // j = 0: rho2(0, 0) = 0
  int quiet = 0;
  for (long j = 1;; ++j) {
    if (j > 100000) throw NumericalError("check_compressibility_lattice: kernel sum not truncated");
    const double kj = lattice_kernel(family, tau, z, j);
    sum -= 2.0 * kj * kj;
    quiet = std::abs(kj) < 1e-14 ? quiet + 1 : 0;
    if (quiet >= 3) break;
  }
  const double bp[3] = {0.0, 0.5, 1.0};
  const double analytic = integrate(
                              [&](double t) {
                                const double x = z * std::max(lattice_spectral_density(family, tau, t), 0.0);
                                return x / ((1.0 + x) * (1.0 + x));
                              },
                              std::span<const double>(bp))
                              .value;
  const double fd = log_second_derivative([&](double zz) { return lattice_pressure(family, tau, zz); }, z, 1e-4);
  return make_entry("compressibility-lattice", max_pairwise_rel({sum, analytic, fd}), tol);
}

ReportEntry check_compressibility_finite_M(const KernelFamily& family, int M, double z, double tol) {
  const double tau = 1.0;
  FiniteKernel fk(CirculantEnsemble(M, M * tau, z, family));
  double sum = fk.density();
  for (int d = 0; d < M; ++d) sum -= std::norm(fk.at_offset(d));
  const double bp[3] = {0.0, 0.5, 1.0};
  const double lattice = integrate(
                             [&](double t) {
                               const double x = z * std::max(lattice_spectral_density(family, tau, t), 0.0);
                               return x / ((1.0 + x) * (1.0 + x));
                             },
                             std::span<const double>(bp))
                             .value;
  return make_entry("compressibility-finite-M", rel(sum, lattice), tol);
}

namespace {

double local_exponent(const std::function<double(double)>& rho2) {
  const double a = rho2(0.04), b = rho2(0.02), c = rho2(0.01);
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw NumericalError("quadratic vanishing: rho2 not positive");
  const double p1 = std::log(a / b) / std::log(2.0), p2 = std::log(b / c) / std::log(2.0);
  // p(r) = 2 + O(r^2)
  return p2 + (p2 - p1) / 3.0;
}

}  // namespace

ReportEntry check_quadratic_vanishing(const KernelFamily& family, double z, double tol) {
  const CorrelationKernel k = thermo_correlation_kernel(family, z);
  const double rho = k.density();
  const double p = local_exponent([&](double r) { return rho * rho - std::norm(k.at(r)); });
  return make_entry("quadratic-vanishing", std::abs(p - 2.0), tol);
}

ReportEntry check_quadratic_vanishing_fermion(double beta, double mu, double tol) {
  const CorrelationKernel k = fermion_correlation_kernel(beta, mu);
  const double rho = k.density();
  const double p = local_exponent([&](double r) { return rho * rho - std::norm(k.at(r)); });
  return make_entry("quadratic-vanishing", std::abs(p - 2.0), tol);
}

ReportEntry check_small_z_two_point(const KernelFamily& family, double z, double r, double tol) {
  if (family.kind() != FamilyKind::RealEven) throw std::invalid_argument("check_small_z_two_point: RealEven only");
  if (!(z >= 0.0 && z <= 1e-2)) throw std::invalid_argument("check_small_z_two_point: needs 0 <= z <= 1e-2");
  if (z == 0.0) return make_entry("small-z-two-point", 0.0, tol);
  const CorrelationKernel k = thermo_correlation_kernel(family, z);
  const double rho = k.density();
  const double rho2 = rho * rho - std::norm(k.at(r));
  const double g0 = family.g(0.0), gr = family.g(r);
  const double leading = z * z * (g0 * g0 - gr * gr);
  return make_entry("small-z-two-point", rel(rho2, leading), tol);
}

// ---------------------------------------------------------------------------
// suite

namespace {

struct Measured {
  double error;
  double tol;
};

struct Check {
  std::string id;
  std::function<Measured(std::uint64_t)> run;
};

std::vector<CirculantEnsemble> oracle_ensembles() {
  std::vector<CirculantEnsemble> out;
  for (int M : {6, 10, 12})
    for (double z : {0.3, 1.0, 3.0}) out.emplace_back(M, static_cast<double>(M), z, KernelFamily::gaussian(1.0));
  return out;
}

std::vector<Check> build_checks() {
  std::vector<Check> c;
  const KernelFamily g1 = KernelFamily::gaussian(1.0);
  const KernelFamily g4 = KernelFamily::gaussian(4.0 * kPi);

  c.push_back({"ORACLE-XI", [](std::uint64_t) {
                 double worst = 0.0;
                 for (const auto& e : oracle_ensembles()) {
                   const double spectral = partition_function(e);
                   const double dense = dense_partition_function(build_circulant(e), e.z());
                   const double brute = brute_force_partition(e);
                   worst = std::max(worst, max_pairwise_rel({spectral, dense, brute}));
                 }
                 return Measured{worst, 1e-9};
               }});
  c.push_back({"ORACLE-K", [](std::uint64_t) {
                 double worst = 0.0;
                 for (const auto& e : oracle_ensembles()) {
                   const Eigen::MatrixXcd dense = macchi_kernel(build_circulant(e), e.z());
                   FiniteKernel fk(e);
                   for (int x = 1; x <= e.M(); ++x)
                     for (int y = 1; y <= e.M(); ++y) worst = std::max(worst, std::abs(fk(x, y) - dense(x - 1, y - 1)));
                 }
                 return Measured{worst, 1e-10};
               }});
  c.push_back({"ORACLE-RHO", [](std::uint64_t seed) {
                 PhiloxStream rng(seed, 1);
                 double worst = 0.0;
                 for (const auto& e : oracle_ensembles())
                   for (int k = 1; k <= 3; ++k)
                     for (int trial = 0; trial < 4; ++trial) {
                       std::vector<int> sites;
                       while (static_cast<int>(sites.size()) < k) {
                         const int s = 1 + static_cast<int>(rng.uniform() * e.M());
                         if (std::find(sites.begin(), sites.end(), s) == sites.end()) sites.push_back(s);
                       }
                       worst = std::max(worst, std::abs(correlation(e, sites) - brute_force_correlation(e, sites)));
                     }
                 return Measured{worst, 1e-9};
               }});

  c.push_back({"LIMIT-CONSISTENCY/lattice", [g1](std::uint64_t) {
                 const CirculantEnsemble e(256, 256.0, 1.0, g1);
                 return Measured{std::abs(log_partition_function(e) / 256.0 - lattice_pressure(g1, 1.0, 1.0)), 1e-6};
               }});
  c.push_back({"LIMIT-CONSISTENCY/finite-L", [g1](std::uint64_t) {
                 const double L = 32.0;
                 return Measured{std::abs(finite_L_log_partition(g1, L, 1.0) / L - thermo_pressure(g1, 1.0)), 1e-6};
               }});
  c.push_back({"LIMIT-CONSISTENCY/reclaim", [g1](std::uint64_t) {
                 const double tau = 1.0 / 64, z = 1.0;
                 double worst = 0.0;
                 for (double r : {0.0, 0.5, 1.0, 2.0}) {
                   const long j = std::lround(r / tau);
                   const double lat = lattice_kernel(g1, tau, tau * z, j) / tau;
                   worst = std::max(worst, std::abs(lat - thermo_kernel(g1, z, r).real()));
                 }
                 return Measured{worst, 1e-4};
               }});

  c.push_back({"SERIES-KERNEL", [g1](std::uint64_t) {
                 const CorrelationKernel k = thermo_correlation_kernel(g1, 0.5);
                 double worst = 0.0;
                 for (int i = 0; i <= 60; ++i) {
                   const double r = 0.05 * i;
                   worst = std::max(worst, std::abs(gaussian_series_kernel(1.0, 0.5, r) - k.at(r).real()));
                 }
                 return Measured{worst, 1e-10};
               }});

  c.push_back({"FERMION-SINE/kernel", [](std::uint64_t) {
                 double worst = 0.0;
                 for (int i = 0; i <= 290; ++i) {
                   const double r = 0.1 + 0.01 * i;
                   worst = std::max(worst, std::abs(fermion_kernel(200.0, 1.0, r) - sine_kernel(1.0, r)));
                 }
                 return Measured{worst, 1e-2};
               }});
  c.push_back({"FERMION-SINE/density", [](std::uint64_t) {
                 return Measured{std::abs(fermion_kernel(200.0, 1.0, 0.0) - 1.0 / kPi), 1e-2};
               }});

  c.push_back({"SUMRULE/continuum-gaussian", [g4](std::uint64_t) {
                 const auto e = check_compressibility_continuum(g4, 1.0);
                 return Measured{e.error, e.tol};
               }});
  c.push_back({"SUMRULE/continuum-gaudin", [](std::uint64_t) {
                 const auto e = check_compressibility_continuum(KernelFamily::inverse_argument(1.0), 1.0);
                 return Measured{e.error, e.tol};
               }});
  c.push_back({"SUMRULE/lattice", [g1](std::uint64_t) {
                 const auto e = check_compressibility_lattice(g1, 1.0, 1.0);
                 return Measured{e.error, e.tol};
               }});
  c.push_back({"SUMRULE/finite-M", [g1](std::uint64_t) {
                 const auto e = check_compressibility_finite_M(g1, 512, 1.0);
                 return Measured{e.error, e.tol};
               }});

  // fermions at beta = 1, mu = 1 are the Gaussian family at c = 4 pi, z = e
  c.push_back({"GAP-ASYMPTOTE/rate", [g4](std::uint64_t) {
                 const CorrelationKernel k = fermion_correlation_kernel(1.0, 1.0);
                 const double len = 6.0 / k.density();
                 const double det = fredholm_det(FredholmProblem::of(k, 0.0, len, 1.0));
                 const double bp = thermo_pressure(g4, std::exp(1.0));
                 return Measured{std::abs(-std::log(det) / len / bp - 1.0), 0.05};
               }});
  c.push_back({"GAP-ASYMPTOTE/identity", [g4](std::uint64_t) {
                 const double z = std::exp(1.0);
                 const double len = 6.0 / thermo_density(g4, z);
                 const double expected = std::exp(-len * thermo_pressure(g4, z));
                 return Measured{rel(gap_asymptote(g4, z, len, 1.0), expected), 1e-12};
               }});
  c.push_back({"GAP-ASYMPTOTE/doubling", [](std::uint64_t) {
                 const CorrelationKernel k = fermion_correlation_kernel(1.0, 1.0);
                 const double len = 6.0 / k.density();
                 double worst = 0.0;
                 for (double xi : {0.5, 1.0})
                   worst = std::max(worst, nystrom_eigenvalues(FredholmProblem::of(k, 0.0, len, xi)).det_change);
                 return Measured{worst, 1e-10};
               }});

  c.push_back({"IIK-EQUIV", [](std::uint64_t) {
                 double worst = 0.0;
                 for (double x : {0.3, 1.0, 2.0})
                   for (double xi : {0.3, 0.7, 1.0}) worst = std::max(worst, iik_equivalence(1.0, 1.0, x, xi).rel_diff());
                 return Measured{worst, 1e-6};
               }});

  c.push_back({"SIGMA-ODE/ode", [](std::uint64_t) {
                 std::vector<double> taus;
                 for (int i = 1; i <= 10; ++i) taus.push_back(0.2 * i);
                 double worst = 0.0;
                 for (double xi : {0.5, 1.0}) worst = std::max(worst, sine_sigma_ode_residual(taus, xi).max_residual);
                 return Measured{worst, 1e-3};
               }});
  c.push_back({"SIGMA-ODE/small-x", [](std::uint64_t) {
                 const std::vector<double> xs{0.002, 0.004, 0.006, 0.008, 0.01};
                 double worst = 0.0;
                 for (double t : {0.0, 1.0}) {
                   const auto s = sigma_small_x_check(t, 0.8, xs);
                   worst = std::max({worst, rel(s.linear_fit, s.linear_expected), rel(s.quadratic_fit, s.quadratic_expected)});
                 }
                 return Measured{worst, 1e-4};
               }});
  c.push_back({"SIGMA-ODE/pde", [](std::uint64_t) {
                 const std::vector<double> xs{0.5, 1.0}, ts{-0.5, 0.5, 1.5};
                 return Measured{sigma_pde_residual(xs, ts, 1.0).max_residual, 5e-2};
               }});

  c.push_back({"CAUCHY-DET", [](std::uint64_t seed) {
                 PhiloxStream rng(seed, 2);
                 double worst = 0.0;
                 for (int trial = 0; trial < 100; ++trial) {
                   const int N = 2 + trial % 7;
                   std::vector<double> x(N);
                   for (auto& v : x) v = rng.uniform();
                   worst = std::max(worst, cauchy_determinant_check(x, 0.1, 1.0).rel_diff());
                 }
                 return Measured{worst, 1e-9};
               }});

  c.push_back({"GAUDIN-SUPPORT/support", [](std::uint64_t) {
                 double leak = 0.0;
                 for (int i = 1; i <= 1000; ++i) {
                   leak = std::max(leak, std::abs(complex_thermo_spectral_density(1.0, -0.005 * i)));
                   if (!(complex_thermo_spectral_density(1.0, 0.005 * i) > 0.0))
                     leak = std::numeric_limits<double>::infinity();
                 }
                 return Measured{leak, 0.0};
               }});
  c.push_back({"GAUDIN-SUPPORT/asymptote", [](std::uint64_t) {
                 const double eps = 1.0, h = 1.0, z = gaudin_fugacity(eps, h);
                 double prev = std::numeric_limits<double>::infinity(), increase = 0.0;
                 for (double r : {2.0, 5.0, 10.0, 20.0}) {
                   const auto exact = gaudin_kernel(eps, z, r);
                   const double e = std::abs(gaudin_asymptotic(eps, h, r) - exact) / std::abs(exact);
                   increase = std::max(increase, e - prev);
                   prev = e;
                 }
                 return Measured{std::max(increase, 0.0), 0.0};
               }});
  c.push_back({"GAUDIN-SUPPORT/sine-limit", [](std::uint64_t) {
                 const double eps = 50.0, z = gaudin_fugacity(eps, 1.0);
                 double worst = 0.0;
                 for (int i = 0; i <= 29; ++i) {
                   const double r = 0.1 + 0.1 * i;
                   const auto sine = std::polar(1.0, r) * std::sin(r) / (kPi * r);
                   worst = std::max(worst, std::abs(gaudin_kernel(eps, z, r) - sine));
                 }
                 return Measured{worst, 1e-3};
               }});

  for (int d : {2, 3})
    c.push_back({"DDIM-PRESSURE/d" + std::to_string(d), [d](std::uint64_t) {
                   return Measured{rel(ddim_pressure_radial(4.0 * kPi, d, 1.0), ddim_pressure_cartesian(4.0 * kPi, d, 1.0)),
                                   1e-8};
                 }});
  c.push_back({"DDIM-PRESSURE/kernel-d2", [](std::uint64_t) {
                 double worst = 0.0;
                 for (double r : {0.0, 0.5, 1.0, 2.0})
                   worst = std::max(worst, std::abs(ddim_kernel(1.0, 0.5, 2, r) - ddim_kernel_cartesian(1.0, 0.5, 2, r)));
                 return Measured{worst, 1e-8};
               }});

  // d = 1, M = 32, 10^5 replicates
  const auto marg = [g1](std::uint64_t seed, int what) {
    const int reps = 100000;
    const TensorLattice lat(1, 32, 32.0, 1.0, g1);
    const CirculantEnsemble ens(32, 32.0, 1.0, g1);
    if (what == 1) {
      const double exact = correlation(ens, std::vector<int>{1, 4});
      const auto e = estimate_two_point(lat, {3}, reps, seed);
      return std::abs(e.origin.mean - exact) / std::sqrt(exact * (1.0 - exact) / reps);
    }
    const auto d = estimate_density(lat, reps, seed);
    if (what == 0) {
      const double p = FiniteKernel(ens).density(), se = std::sqrt(p * (1.0 - p) / reps);
      double worst = 0.0;
      for (double v : d.per_site) worst = std::max(worst, std::abs(v - p) / se);
      return worst;
    }
    double mean = 0.0, var = 0.0;
    for (double k : bernoulli_probabilities(lat)) {
      mean += k;
      var += k * (1.0 - k);
    }
    if (what == 2) return std::abs(d.cardinality.mean - mean) / d.cardinality.std_error;
    return std::abs(d.cardinality_variance - var) / d.cardinality_variance_stderr;
  };
  c.push_back({"SAMPLER-MARGINALS/singleton", [marg](std::uint64_t s) { return Measured{marg(s, 0), 3.0}; }});
  c.push_back({"SAMPLER-MARGINALS/pair", [marg](std::uint64_t s) { return Measured{marg(s, 1), 3.0}; }});
  c.push_back({"SAMPLER-MARGINALS/cardinality-mean", [marg](std::uint64_t s) { return Measured{marg(s, 2), 3.0}; }});
  c.push_back({"SAMPLER-MARGINALS/cardinality-variance", [marg](std::uint64_t s) { return Measured{marg(s, 3), 3.0}; }});
  c.push_back({"SAMPLER-MARGINALS/hole", [](std::uint64_t seed) {
                 // c = 4 pi, continuum z = 1, tau = 1/8 on a 12 x 12 torus
                 const double tau = 0.125;
                 const TensorLattice lat(2, 96, 12.0, tau * tau, KernelFamily::gaussian_d(4.0 * kPi, 2));
                 double rho = 0.0;
                 for (double k : bernoulli_probabilities(lat)) rho += k;
                 rho /= 144.0;
                 const int side = static_cast<int>(std::lround(2.0 / std::sqrt(rho) / tau));
                 const auto rows = hole_probability_check(lat, {side}, 3000, seed);
                 return Measured{rows[0].defined ? std::abs(rows[0].ratio - 1.0) : kNaN, 0.15};
               }});

  c.push_back({"QUADRATIC-VANISHING/gaussian", [g4](std::uint64_t) {
                 const auto e = check_quadratic_vanishing(g4, 1.0);
                 return Measured{e.error, e.tol};
               }});
  c.push_back({"QUADRATIC-VANISHING/gaudin", [](std::uint64_t) {
                 const auto e = check_quadratic_vanishing(KernelFamily::inverse_argument(1.0), 1.0);
                 return Measured{e.error, e.tol};
               }});
  c.push_back({"SMALL-Z-TWO-POINT", [g1](std::uint64_t) {
                 const auto e = check_small_z_two_point(g1, 5e-4, 0.5);
                 return Measured{e.error, e.tol};
               }});

  std::sort(c.begin(), c.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
  return c;
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all = build_checks();
  return all;
}

std::string group_of(const std::string& id) { return id.substr(0, id.find('/')); }

}  // namespace

std::vector<std::string> suite_groups() {
  std::set<std::string> g;
  for (const auto& c : checks()) g.insert(group_of(c.id));
  return {g.begin(), g.end()};
}

VerificationReport run_suite(const std::vector<std::string>& names, const SuiteOptions& options) {
  VerificationReport report;
  report.seed = options.seed;
  std::vector<const Check*> selected;
  std::vector<ReportEntry> unknown;
  std::set<std::string> seen;
  for (const auto& name : names) {
    bool found = false;
    for (const auto& c : checks())
      if (name == "all" || c.id == name || group_of(c.id) == name) {
        found = true;
        if (seen.insert(c.id).second) selected.push_back(&c);
      }
    if (!found && seen.insert(name).second) {
      ReportEntry e;
      e.id = name;
      e.error = kNaN;
      e.pass = false;
      e.status = "unknown check";
      unknown.push_back(e);
    }
  }

  std::vector<ReportEntry> done(selected.size());
  parallel_for(selected.size(), [&](std::size_t i) {
    const Check& c = *selected[i];
    ReportEntry e;
    e.id = c.id;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Measured m = c.run(options.seed);
      e.error = m.error;
      e.tol = options.strict ? m.tol / 10.0 : m.tol;
      e.pass = e.error <= e.tol;  // NaN fails
    } catch (const std::exception& ex) {
      e.error = kNaN;
      e.pass = false;
      e.status = ex.what();
    }
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    done[i] = e;
  });

  report.entries = std::move(done);
  for (auto& e : unknown) report.entries.push_back(std::move(e));
  std::sort(report.entries.begin(), report.entries.end(),
            [](const ReportEntry& a, const ReportEntry& b) { return a.id < b.id; });
  for (const auto& e : report.entries) report.pass = report.pass && e.pass;
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["version"] = report.version;
  j["seed"] = report.seed;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json x;
    x["id"] = e.id;
    x["error"] = std::isfinite(e.error) ? nlohmann::ordered_json(e.error) : nlohmann::ordered_json(nullptr);
    x["tol"] = e.tol;
    x["pass"] = e.pass;
    x["seconds"] = e.seconds;
    if (e.status != "ok") x["status"] = e.status;
    j["entries"].push_back(x);
  }
  j["pass"] = report.pass;
  return j.dump(2);
}

const std::vector<CoverageItem>& coverage_manifest() {
  static const std::vector<CoverageItem> items = {
      {"partition function as det(I + zL), subset sum and spectral product", {"ORACLE-XI", "LIMIT-CONSISTENCY"}},
      {"Macchi kernel zL(I + zL)^-1 and correlation minors", {"ORACLE-K", "ORACLE-RHO", "SAMPLER-MARGINALS"}},
      {"circulant eigenvalues and Fourier eigenvectors", {"ORACLE-XI", "ORACLE-K", "SAMPLER-MARGINALS"}},
      {"lattice limit: pressure, density and kernel", {"LIMIT-CONSISTENCY", "SUMRULE"}},
      {"finite circumference eigenvalues and log partition", {"LIMIT-CONSISTENCY"}},
      {"thermodynamic limit: pressure, density and kernel", {"LIMIT-CONSISTENCY", "SERIES-KERNEL", "SUMRULE"}},
      {"vanishing lattice spacing recovers the continuum kernel", {"LIMIT-CONSISTENCY"}},
      {"Gaussian kernel as a fugacity series", {"SERIES-KERNEL"}},
      {"free fermion kernel and its zero temperature sine limit", {"FERMION-SINE"}},
      {"complex Hermitian circulant: one-sided spectral support", {"GAUDIN-SUPPORT", "SUMRULE"}},
      {"Gaudin kernel: large separation asymptotics and sine limit", {"GAUDIN-SUPPORT"}},
      {"Cauchy double alternant determinant", {"CAUCHY-DET"}},
      {"compressibility sum rule, continuum and lattice", {"SUMRULE"}},
      {"two-point function vanishes quadratically at coincidence", {"QUADRATIC-VANISHING"}},
      {"small fugacity two-point function", {"SMALL-Z-TWO-POINT"}},
      {"gap probability as a Fredholm determinant and its large interval rate", {"GAP-ASYMPTOTE"}},
      {"position and momentum space Fredholm determinants agree", {"IIK-EQUIV"}},
      {"sigma form equations and small interval expansion", {"SIGMA-ODE"}},
      {"d-dimensional pressure and radially reduced kernel", {"DDIM-PRESSURE"}},
      {"hole probability decays with the pressure", {"SAMPLER-MARGINALS"}},
  };
  return items;
}

}  // namespace circlens
