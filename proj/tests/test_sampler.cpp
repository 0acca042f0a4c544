#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "circlens/exact_finite.hpp"
#include "circlens/parallel.hpp"
#include "circlens/random.hpp"
#include "circlens/sampler.hpp"
#include "circlens/spectral_limits.hpp"

using namespace circlens;

namespace {
double exact_density(const TensorLattice& lat) {
  double s = 0;
  for (double k : bernoulli_probabilities(lat)) s += k;
  return s / static_cast<double>(lat.sites());
}
}  // namespace

TEST_CASE("Philox known answers") {
  // Random123 kat_vectors
  const PhiloxCounter a = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(a == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  const PhiloxCounter b =
      philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
  CHECK(b == PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  PhiloxStream s1(42, 7), s2(42, 7), s3(42, 8), s4(43, 7);
  bool differs3 = false, differs4 = false;
  for (int i = 0; i < 100; ++i) {
    const double u1 = s1.uniform(), u2 = s2.uniform();
    CHECK(u1 == u2);
    CHECK(u1 >= 0.0);
    CHECK(u1 < 1.0);
    differs3 |= s3.uniform() != u1;
    differs4 |= s4.uniform() != u1;
  }
  CHECK(differs3);
  CHECK(differs4);
}

TEST_CASE("lattice validation") {
  auto g = KernelFamily::gaussian(1.0);
  CHECK_THROWS_AS(TensorLattice(1, 0, 1.0, 1.0, g), std::invalid_argument);
  CHECK_THROWS_AS(TensorLattice(1, 8, 0.0, 1.0, g), std::invalid_argument);
  CHECK_THROWS_AS(TensorLattice(1, 8, 8.0, -1.0, g), std::invalid_argument);
  CHECK_THROWS_AS(TensorLattice(2, 8, 8.0, 1.0, g), std::invalid_argument);
  CHECK_THROWS_AS(TensorLattice(3, 128, 8.0, 1.0, KernelFamily::gaussian_d(1.0, 3)), std::invalid_argument);
  CHECK_THROWS_AS(TensorLattice(1, 8, 8.0, 1.0, KernelFamily::inverse_argument(1.0)), std::invalid_argument);
  TensorLattice ok(2, 4, 4.0, 1.0, KernelFamily::gaussian_d(1.0, 2));
  CHECK(ok.sites() == 16);
  CHECK(ok.flatten({-1, 5}) == ok.flatten({3, 1}));
  CHECK(ok.unflatten(ok.flatten({2, 3})) == std::vector<int>{2, 3});
}

TEST_CASE("Bernoulli probabilities") {
  auto g = KernelFamily::gaussian(1.0);
  for (double k : bernoulli_probabilities(TensorLattice(1, 16, 16.0, 0.0, g))) CHECK(k == 0.0);
  TensorLattice lat(1, 64, 64.0, 1.0, g);
  FiniteKernel fk(CirculantEnsemble(64, 64.0, 1.0, g));
  CHECK(exact_density(lat) == doctest::Approx(fk.density()).epsilon(1e-10));
  for (double k : bernoulli_probabilities(TensorLattice(1, 16, 4.0, 1e12, g))) CHECK(k > 1.0 - 1e-6);
  // tensor product: d = 2 eigenvalues are products of d = 1 ones
  TensorLattice l1(1, 6, 5.0, 1.0, KernelFamily::gaussian(2.0)), l2(2, 6, 5.0, 1.0, KernelFamily::gaussian_d(2.0, 2));
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      CHECK(l2.eigenvalues()[p * 6 + q] ==
            doctest::Approx(l1.eigenvalues()[p] * l1.eigenvalues()[q]).epsilon(1e-12));
}

TEST_CASE("samples are deterministic, sorted and distinct") {
  TensorLattice lat(2, 12, 6.0, 0.5, KernelFamily::gaussian_d(1.0, 2));
  SampleStats st;
  for (std::uint64_t r = 0; r < 50; ++r) {
    auto a = sample(lat, 9, r, &st), b = sample(lat, 9, r);
    CHECK(a.flat == b.flat);
    CHECK(std::set<std::int64_t>(a.flat.begin(), a.flat.end()).size() == a.flat.size());
    CHECK(std::is_sorted(a.flat.begin(), a.flat.end()));
    for (std::size_t i = 0; i < a.flat.size(); ++i) CHECK(lat.flatten(a.sites[i]) == a.flat[i]);
  }
  CHECK(st.degenerate_pivots == 0);
  CHECK(sample(TensorLattice(1, 16, 16.0, 0.0, KernelFamily::gaussian(1.0)), 1).flat.empty());
}

TEST_CASE("estimates do not depend on the thread count") {
  TensorLattice lat(1, 16, 16.0, 1.0, KernelFamily::gaussian(1.0));
  const int saved = thread_cap();
  set_thread_cap(1);
  auto a = estimate_density(lat, 400, 5);
  set_thread_cap(4);
  auto b = estimate_density(lat, 400, 5);
  set_thread_cap(saved);
  CHECK(a.per_site == b.per_site);
  CHECK(a.cardinality_variance == b.cardinality_variance);
}

TEST_CASE("z = 0 estimators are exact") {
  TensorLattice lat(1, 16, 16.0, 0.0, KernelFamily::gaussian(1.0));
  auto d = estimate_density(lat, 100, 1);
  CHECK(d.site_average.mean == 0.0);
  CHECK(estimate_gap(lat, {4}, 100, 1).mean == 1.0);
  CHECK_THROWS_AS(estimate_density(lat, 99, 1), std::invalid_argument);
}

TEST_CASE("cardinality law") {
  TensorLattice lat(1, 32, 32.0, 1.0, KernelFamily::gaussian(1.0));
  double mean = 0, var = 0;
  for (double k : bernoulli_probabilities(lat)) {
    mean += k;
    var += k * (1 - k);
  }
  auto d = estimate_density(lat, 20000, 2024);
  CHECK(std::abs(d.cardinality.mean - mean) < 3 * d.cardinality.std_error);
  CHECK(std::abs(d.cardinality_variance - var) < 3 * d.cardinality_variance_stderr);
}

TEST_CASE("singleton marginals on a small lattice") {
  auto g = KernelFamily::gaussian(1.0);
  TensorLattice lat(1, 8, 8.0, 0.5, g);
  FiniteKernel fk(CirculantEnsemble(8, 8.0, 0.5, g));
  auto d = estimate_density(lat, 1000000, 77);
  for (std::size_t f = 0; f < 8; ++f) CHECK(std::abs(d.per_site[f] - fk.density()) < 3 * d.per_site_stderr[f]);
}

TEST_CASE("two-point function at separation 3") {
  auto g = KernelFamily::gaussian(1.0);
  TensorLattice lat(1, 64, 64.0, 1.0, g);
  const double exact = correlation(CirculantEnsemble(64, 64.0, 1.0, g), std::vector<int>{1, 4});
  auto e = estimate_two_point(lat, {3}, 20000, 11);
  CHECK(std::abs(e.averaged.mean - exact) < 3 * e.averaged.std_error);
  CHECK(std::abs(e.origin.mean - exact) < 3 * e.origin.std_error);
  CHECK_THROWS_AS(estimate_two_point(lat, {64}, 100, 1), std::invalid_argument);
}

TEST_CASE("d = 2 gap rate approaches the pressure") {
  // c = 4 pi, continuum z = 1, tau = 1/8: lattice fugacity tau^2
  TensorLattice lat(2, 32, 4.0, 1.0 / 64, KernelFamily::gaussian_d(4 * std::numbers::pi, 2));
  auto e = estimate_gap(lat, {16, 16}, 2000, 5);
  const double rate = -std::log(e.mean) / 4.0;
  const double bp = ddim_pressure_radial(4 * std::numbers::pi, 2, 1.0);
  MESSAGE("rate / beta P = " << rate / bp);
  CHECK(std::abs(rate / bp - 1) < 0.15);
}

TEST_CASE("hole probability table") {
  auto fam = KernelFamily::gaussian_d(4 * std::numbers::pi, 2);
  SUBCASE("z = 0") {
    auto rows = hole_probability_check(TensorLattice(2, 16, 2.0, 0.0, fam), {1, 4}, 100, 1);
    for (const auto& r : rows) {
      CHECK(r.E == 1.0);
      CHECK_FALSE(r.defined);
      CHECK(std::isnan(r.ratio));
    }
  }
  SUBCASE("single site and monotonicity") {
    TensorLattice lat(2, 48, 6.0, 1.0 / 64, fam);
    auto rows = hole_probability_check(lat, {1, 4, 8, 16, 24}, 1000, 3);
    CHECK(std::abs(rows[0].E - (1 - exact_density(lat))) < 3 * rows[0].std_error);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].E <= rows[i - 1].E);
  }
  CHECK_THROWS_AS(hole_probability_check(TensorLattice(2, 16, 4.0, 1.0, fam), {1}, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(hole_probability_check(TensorLattice(1, 16, 1.0, 1.0, KernelFamily::gaussian(1.0)), {1}, 100, 1),
                  std::invalid_argument);
}
